//! Greatest common divisors and squarefree decomposition in `K[x][y]`.

use super::BivarPoly;
use crate::field::upoly::{self, UPoly};
use crate::field::FieldCtx;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Large primes used to reduce polynomials over `Q`.
pub(crate) const FILTER_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Coefficients over `Q` scaled to coprime integers.
fn integer_terms(f: &BivarPoly) -> Vec<((u32, u32), BigInt)> {
    let ctx = f.ctx();
    let rat = |c| ctx.as_rational(c).expect("rational coefficient");
    let l = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(rat(c).denom()));
    let ints: Vec<((u32, u32), BigInt)> = f
        .terms()
        .map(|(&e, c)| {
            let r = rat(c);
            (e, r.numer() * (&l / r.denom()))
        })
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    ints.into_iter().map(|(e, c)| (e, c / &g)).collect()
}

/// True when `f` and `g` over `Q` are seen coprime modulo a prime that keeps
/// both lexicographic leading terms. False means undecided.
fn coprime_by_reduction(f: &BivarPoly, g: &BivarPoly) -> bool {
    for p in FILTER_PRIMES {
        if let (Some(fp), Some(gp)) = (f.reduce_mod(p, true), g.reduce_mod(p, true)) {
            return fp.gcd(&gp).is_constant();
        }
    }
    false
}

type Rows = Vec<UPoly>;

fn trim_rows(mut r: Rows) -> Rows {
    while r.last().is_some_and(|c| c.is_empty()) {
        r.pop();
    }
    r
}

fn content(ctx: &FieldCtx, r: &Rows) -> UPoly {
    r.iter()
        .fold(Vec::new(), |acc, c| upoly::gcd(ctx, &acc, c))
}

fn primitive_part(ctx: &FieldCtx, r: &Rows) -> Rows {
    let c = content(ctx, r);
    r.iter()
        .map(|row| {
            if row.is_empty() {
                Vec::new()
            } else {
                upoly::div_exact(ctx, row, &c).expect("content divides")
            }
        })
        .collect()
}

/// `lc(g)^(deg f - deg g + 1) f mod g`.
fn pseudo_rem(ctx: &FieldCtx, f: &Rows, g: &Rows) -> Rows {
    let dg = g.len() - 1;
    let lg = &g[dg];
    let mut r = f.clone();
    let mut left = f.len() - dg;
    while r.len() > dg {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - dg;
        for (i, row) in r.iter_mut().enumerate() {
            *row = upoly::mul(ctx, row, lg);
            if i >= shift {
                let sub = upoly::mul(ctx, &lr, &g[i - shift]);
                *row = upoly::sub(ctx, row, &sub);
            }
        }
        r = trim_rows(r);
        left -= 1;
    }
    let pad = upoly::pow(ctx, lg, left as u64);
    r.iter().map(|row| upoly::mul(ctx, row, &pad)).collect()
}

fn div_rows(ctx: &FieldCtx, r: &Rows, d: &UPoly) -> Rows {
    r.iter()
        .map(|row| upoly::div_exact(ctx, row, d).expect("subresultant division is exact"))
        .collect()
}

impl BivarPoly {
    /// Image over `F_p` of a polynomial over `Q` scaled to coprime integer
    /// coefficients. `None` outside `Q`, or when `keep_leading` is set and
    /// `p` divides the lexicographic leading coefficient.
    pub(crate) fn reduce_mod(&self, p: u64, keep_leading: bool) -> Option<BivarPoly> {
        let ctx = self.ctx();
        if ctx.characteristic() != 0 || ctx.radicand().is_some() || self.is_zero() {
            return None;
        }
        let ints = integer_terms(self);
        let big = BigInt::from(p);
        if keep_leading && (&ints.last()?.1 % &big).is_zero() {
            return None;
        }
        let k = FieldCtx::make(p, 1).expect("filter primes are valid");
        Some(BivarPoly::from_terms(
            &k,
            ints.iter().map(|(e, c)| (*e, k.from_bigint(c))),
        ))
    }

    /// Normalized greatest common divisor (subresultant remainder sequence
    /// over `K[x]`); `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let ctx = self.ctx();
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        if ctx.characteristic() == 0
            && ctx.radicand().is_none()
            && coprime_by_reduction(self, other)
        {
            return BivarPoly::one(ctx);
        }
        let (fr, gr) = (self.y_coefficients(), other.y_coefficients());
        let c = upoly::gcd(ctx, &content(ctx, &fr), &content(ctx, &gr));
        let mut a = primitive_part(ctx, &fr);
        let mut b = primitive_part(ctx, &gr);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        // subresultant remainder sequence
        let mut g = vec![ctx.one()];
        let mut h = vec![ctx.one()];
        while !b.is_empty() {
            if b.len() == 1 {
                // primitive of y-degree 0 is a unit of K[x]
                a = vec![vec![ctx.one()]];
                break;
            }
            let delta = (a.len() - b.len()) as u64;
            let r = pseudo_rem(ctx, &a, &b);
            if r.is_empty() {
                a = b;
                break;
            }
            let d = upoly::mul(ctx, &g, &upoly::pow(ctx, &h, delta));
            a = std::mem::replace(&mut b, div_rows(ctx, &r, &d));
            g = a.last().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                let num = upoly::pow(ctx, &g, delta);
                let den = upoly::pow(ctx, &h, delta - 1);
                upoly::div_exact(ctx, &num, &den).expect("subresultant division is exact")
            };
        }
        let g = BivarPoly::from_y_coefficients(ctx, &primitive_part(ctx, &a));
        g.mul(&BivarPoly::from_x_poly(ctx, &c)).normalized()
    }

    /// `f = unit * prod s_i^{m_i}` with the `s_i` normalized, squarefree and
    /// pairwise coprime, sorted by multiplicity. Constant `f` gives `[]`.
    pub fn squarefree_decomposition(&self) -> Vec<(BivarPoly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let (fx, fy) = self.partial_derivatives();
        if fx.is_zero() && fy.is_zero() {
            let p = self.ctx().characteristic() as u32;
            let root = self.pth_root().expect("vanishing partials give a p-th power");
            return root
                .squarefree_decomposition()
                .into_iter()
                .map(|(s, m)| (s, m * p))
                .collect();
        }
        let mut c = self.gcd(&fx.gcd(&fy));
        let mut w = self.div_exact(&c).expect("gcd divides");
        let mut i = 1u32;
        while !w.is_constant() {
            let y = w.gcd(&c);
            let z = w.div_exact(&y).expect("gcd divides");
            if !z.is_constant() {
                out.push((z.normalized(), i));
            }
            i += 1;
            c = c.div_exact(&y).expect("gcd divides");
            w = y;
        }
        if !c.is_constant() {
            let p = self.ctx().characteristic() as u32;
            let root = c.pth_root().expect("leftover cofactor is a p-th power");
            out.extend(
                root.squarefree_decomposition()
                    .into_iter()
                    .map(|(s, m)| (s, m * p)),
            );
        }
        out.sort_by_key(|(_, m)| *m);
        out
    }
}
