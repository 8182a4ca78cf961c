//! Local intersection multiplicity at the origin.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::field::upoly::{self, UPoly};
use crate::field::FieldCtx;
use crate::poly::{BivarPoly, FILTER_PRIMES};

/// A natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Infinity,
}

impl ExtNat {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(v) => Some(v),
            ExtNat::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ExtNat::Infinity
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Infinity,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(v) => write!(f, "{v}"),
            ExtNat::Infinity => f.write_str("INF"),
        }
    }
}

/// `true` when `f` and `g` share a component through the origin.
pub fn share_branch(f: &BivarPoly, g: &BivarPoly) -> bool {
    f.gcd(g).ord().unwrap_or(0) > 0
}

/// `i0(f, g) = dim K[[x,y]]/(f,g)`.
pub fn i0(f: &BivarPoly, g: &BivarPoly) -> Result<ExtNat> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.is_unit() || g.is_unit() {
        return Ok(ExtNat::Fin(0));
    }
    if share_branch(f, g) {
        return Ok(ExtNat::Infinity);
    }
    Ok(ExtNat::Fin(fulton(f.clone(), g.clone())))
}

fn ord_or_zero(ctx: &FieldCtx, u: &[crate::field::Elem]) -> u64 {
    upoly::ord0(ctx, u).expect("no common component") as u64
}

/// Removes the monomial content `x^a y^b` of `h`, returning
/// `i0(x^a y^b, other)`.
fn split_monomial(ctx: &FieldCtx, h: &mut BivarPoly, other: &BivarPoly) -> u64 {
    let (a, b) = h.monomial_content();
    let mut acc = 0;
    if a > 0 {
        acc += a as u64 * ord_or_zero(ctx, &other.restrict_x0());
    }
    if b > 0 {
        acc += b as u64 * ord_or_zero(ctx, &other.restrict_y0());
    }
    if a > 0 || b > 0 {
        *h = h.div_monomial((a, b));
    }
    acc
}

/// Both arguments nonzero with no common component through the origin.
fn fulton(mut f: BivarPoly, mut g: BivarPoly) -> u64 {
    let ctx = f.ctx().clone();
    // m^B lies in the ideal when B bounds the colength, so terms of degree
    // above B - acc never change the remaining value.
    let bound = colength_bound(&f, &g);
    let mut acc = 0u64;
    loop {
        let keep = bound.saturating_sub(acc);
        f = truncate(&f, keep);
        g = truncate(&g, keep);
        if f.is_unit() || g.is_unit() {
            return acc;
        }
        acc += split_monomial(&ctx, &mut f, &g);
        acc += split_monomial(&ctx, &mut g, &f);
        if f.is_unit() || g.is_unit() {
            return acc;
        }
        // no monomial content left, so both restrictions to y = 0 are nonzero
        if f.restrict_y0().len() > g.restrict_y0().len() {
            std::mem::swap(&mut f, &mut g);
        }
        let (f0, g0) = (f.restrict_y0(), g.restrict_y0());
        let shift = (g0.len() - f0.len()) as u32;
        let lf = f0.last().unwrap();
        let lg = g0.last().unwrap();
        g = g
            .scale(lf)
            .sub(&f.mul_monomial((shift, 0)).scale(lg))
            .normalized();
    }
}

/// Bezout number, improved over `Q` by the value modulo a large prime,
/// which can only exceed the value in characteristic 0.
fn colength_bound(f: &BivarPoly, g: &BivarPoly) -> u64 {
    let bezout = f.total_degree().unwrap_or(0) as u64 * g.total_degree().unwrap_or(0) as u64;
    for p in FILTER_PRIMES {
        if let (Some(fp), Some(gp)) = (f.reduce_mod(p, false), g.reduce_mod(p, false)) {
            if fp.is_unit() || gp.is_unit() || share_branch(&fp, &gp) {
                continue;
            }
            return bezout.min(fulton(fp, gp));
        }
    }
    bezout
}

fn truncate(h: &BivarPoly, deg: u64) -> BivarPoly {
    if h.total_degree().unwrap_or(0) as u64 <= deg {
        return h.clone();
    }
    BivarPoly::from_terms(
        h.ctx(),
        h.terms()
            .filter(|((a, b), _)| (*a + *b) as u64 <= deg)
            .map(|(e, c)| (*e, c.clone())),
    )
}

/// Independent value of `i0(f, g)`: `ord_x Res_y` after a shear that makes
/// both arguments monic in `y` and separates the common zeros on `x = 0`.
pub fn i0_resultant_oracle(f: &BivarPoly, g: &BivarPoly) -> Result<ExtNat> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.is_unit() || g.is_unit() {
        return Ok(ExtNat::Fin(0));
    }
    let common = f.gcd(g);
    if common.ord().unwrap_or(0) > 0 {
        return Err(Error::InfiniteIntersection);
    }
    let f = f.div_exact(&common).expect("gcd divides");
    let g = g.div_exact(&common).expect("gcd divides");
    let ctx = f.ctx().clone();
    let df = f.total_degree().unwrap_or(0) as u64;
    let dg = g.total_degree().unwrap_or(0) as u64;
    let attempts = ctx.enumerable(2 * df * dg + 1);
    for i in 0..attempts {
        let c = ctx.element(i);
        let shear = [[ctx.one(), c], [ctx.zero(), ctx.one()]];
        let fs = f.linear_change(&shear)?;
        let gs = g.linear_change(&shear)?;
        let (rf, rg) = (fs.y_coefficients(), gs.y_coefficients());
        let monic_in_y = |r: &[UPoly]| r.last().is_some_and(|c| c.len() == 1);
        if !monic_in_y(&rf) || !monic_in_y(&rg) {
            continue;
        }
        let h = upoly::gcd(&ctx, &fs.restrict_x0(), &gs.restrict_x0());
        if h.len() - 1 != upoly::ord0(&ctx, &h).unwrap_or(0) {
            continue;
        }
        let res = resultant_y(&ctx, &rf, &rg);
        return match upoly::ord0(&ctx, &res) {
            Some(o) => Ok(ExtNat::Fin(o as u64)),
            None => Err(Error::OracleFailure("vanishing resultant".into())),
        };
    }
    Err(Error::OracleFailure(format!(
        "no admissible shear among {attempts} candidates over {}",
        ctx.describe()
    )))
}

/// Sylvester resultant in `y` of polynomials given by their coefficient rows
/// in `K[x]`, by fraction-free elimination.
fn resultant_y(ctx: &FieldCtx, a: &[UPoly], b: &[UPoly]) -> UPoly {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return vec![ctx.one()];
    }
    let mut mat: Vec<Vec<UPoly>> = vec![vec![Vec::new(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    let mut negate = false;
    let mut prev: UPoly = vec![ctx.one()];
    for k in 0..size - 1 {
        if mat[k][k].is_empty() {
            match (k + 1..size).find(|&i| !mat[i][k].is_empty()) {
                Some(i) => {
                    mat.swap(k, i);
                    negate = !negate;
                }
                None => return Vec::new(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = upoly::sub(
                    ctx,
                    &upoly::mul(ctx, &mat[i][j], &mat[k][k]),
                    &upoly::mul(ctx, &mat[i][k], &mat[k][j]),
                );
                mat[i][j] = upoly::div_exact(ctx, &t, &prev).expect("Bareiss division is exact");
            }
            mat[i][k] = Vec::new();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        upoly::scale(ctx, &det, &ctx.from_i64(-1))
    } else {
        det
    }
}
