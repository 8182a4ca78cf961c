//! Root finding in splitting fields and embeddings between contexts.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use super::upoly::{self, UPoly};
use super::{Elem, FieldCtx};
use crate::error::{Error, Result};

/// Seed of the pseudorandom stream used by equal-degree splitting. Roots are
/// sorted afterwards, so results never depend on it.
pub const ROOT_SPLITTING_SEED: u64 = 0x00c0_ffee_5eed;

const BRUTE_FORCE_LIMIT: u64 = 256;
const RATIONAL_ROOT_BOUND: u64 = 100_000_000_000_000;

/// Coherent map of a context into a larger one.
#[derive(Clone, Debug)]
pub struct Embedding {
    target: FieldCtx,
    generator_image: Option<Elem>,
}

impl Embedding {
    pub fn identity(ctx: &FieldCtx) -> Self {
        Embedding {
            target: ctx.clone(),
            generator_image: None,
        }
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    pub fn apply(&self, a: &Elem) -> Elem {
        match a {
            Elem::Fin(v) if v.len() != self.target.degree() => {
                let t = &self.target;
                match &self.generator_image {
                    None => {
                        let mut w: SmallVec<[u64; 4]> = SmallVec::from_elem(0, t.degree());
                        w[0] = v[0];
                        Elem::Fin(w)
                    }
                    Some(g) => v
                        .iter()
                        .rev()
                        .fold(t.zero(), |acc, &c| t.add(&t.mul(&acc, g), &t.from_u64(c))),
                }
            }
            _ => a.clone(),
        }
    }

    pub fn apply_poly(&self, a: &[Elem]) -> UPoly {
        a.iter().map(|c| self.apply(c)).collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Embedding {
        let generator_image = match &self.generator_image {
            Some(g) => Some(next.apply(g)),
            None => next.generator_image.clone(),
        };
        if self.generator_image.is_none() {
            // prime field (or Q): only the second map matters
            return next.clone();
        }
        Embedding {
            target: next.target.clone(),
            generator_image,
        }
    }
}

/// Roots of a polynomial together with the (possibly enlarged) context that
/// contains all of them.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub ctx: FieldCtx,
    pub embedding: Embedding,
    /// Sorted roots with multiplicities.
    pub roots: Vec<(Elem, u32)>,
}

/// Embeds `from` into `to` (`F_{p^k} -> F_{p^K}` with `k | K`, or
/// `Q -> Q(sqrt d)`).
pub fn embed_into(from: &FieldCtx, to: &FieldCtx) -> Result<Embedding> {
    if from == to {
        return Ok(Embedding::identity(to));
    }
    if from.characteristic() != to.characteristic() {
        return Err(Error::Internal("embedding across characteristics".into()));
    }
    if !from.is_finite() {
        if from.radicand().is_none() {
            return Ok(Embedding::identity(to));
        }
        return Err(Error::NotSupported(
            "a second quadratic extension of Q is required".into(),
        ));
    }
    if to.degree() % from.degree() != 0 {
        return Err(Error::Internal(format!(
            "degree {} does not divide {}",
            from.degree(),
            to.degree()
        )));
    }
    if from.degree() == 1 {
        return Ok(Embedding {
            target: to.clone(),
            generator_image: None,
        });
    }
    let m: UPoly = from
        .modulus()
        .expect("extension has a modulus")
        .iter()
        .map(|&c| to.from_u64(c))
        .collect();
    let roots = linear_roots(to, &m);
    let g = roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("modulus does not split in the target".into()))?;
    Ok(Embedding {
        target: to.clone(),
        generator_image: Some(g),
    })
}

/// All roots of `u` in the smallest extension of `ctx` containing them.
///
/// In characteristic 0 only rational roots and roots of quadratic factors
/// are supported, with at most one quadratic extension of `Q`.
pub fn roots_in_splitting_field(ctx: &FieldCtx, u: &[Elem]) -> Result<Splitting> {
    let u = upoly::trim(ctx, u.to_vec());
    if u.is_empty() {
        return Err(Error::ZeroInput);
    }
    if ctx.is_finite() {
        finite_roots(ctx, &u)
    } else {
        char0_roots(ctx, &u)
    }
}

fn finite_roots(ctx: &FieldCtx, u: &[Elem]) -> Result<Splitting> {
    let parts = upoly::squarefree_decomposition(ctx, u);
    let ext = parts
        .iter()
        .flat_map(|(s, _)| upoly::factor_degrees(ctx, s))
        .fold(1usize, |acc, d| acc.lcm(&d));
    if ext > 1 {
        let big = FieldCtx::make(ctx.characteristic(), ctx.degree() * ext)?;
        let emb = embed_into(ctx, &big)?;
        let inner = finite_roots(&big, &emb.apply_poly(u))?;
        return Ok(Splitting {
            ctx: big,
            embedding: emb,
            roots: inner.roots,
        });
    }
    let mut roots: Vec<(Elem, u32)> = parts
        .iter()
        .flat_map(|(s, m)| linear_roots(ctx, s).into_iter().map(move |r| (r, *m)))
        .collect();
    roots.sort();
    Ok(Splitting {
        ctx: ctx.clone(),
        embedding: Embedding::identity(ctx),
        roots,
    })
}

/// Roots of a squarefree polynomial that splits into linear factors.
fn linear_roots(ctx: &FieldCtx, s: &[Elem]) -> Vec<Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(ROOT_SPLITTING_SEED);
    let mut out = Vec::new();
    split_linear(ctx, &upoly::monic(ctx, s), &mut rng, &mut out);
    out.sort();
    out
}

fn random_elem(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Elem {
    let p = ctx.characteristic();
    Elem::Fin((0..ctx.degree()).map(|_| rng.gen_range(0..p)).collect())
}

fn split_linear(ctx: &FieldCtx, s: &[Elem], rng: &mut ChaCha8Rng, out: &mut Vec<Elem>) {
    match upoly::degree(s) {
        None | Some(0) => return,
        Some(1) => {
            out.push(ctx.neg(&ctx.div(&s[0], &s[1])));
            return;
        }
        _ => {}
    }
    let q = ctx.order().expect("finite field");
    if q <= BigUint::from(BRUTE_FORCE_LIMIT) {
        let q = q.to_u64().unwrap();
        out.extend(
            (0..q)
                .map(|i| ctx.element(i))
                .filter(|e| ctx.is_zero(&upoly::eval(ctx, s, e))),
        );
        return;
    }
    let t = upoly::var(ctx);
    loop {
        let a = random_elem(ctx, rng);
        let g = if ctx.characteristic() == 2 {
            let v = upoly::rem(ctx, &upoly::scale(ctx, &t, &a), s);
            let mut acc = v.clone();
            let mut trace = v;
            for _ in 1..ctx.degree() {
                acc = upoly::mulmod(ctx, &acc, &acc, s);
                trace = upoly::add(ctx, &trace, &acc);
            }
            upoly::gcd(ctx, s, &trace)
        } else {
            let e = (&q - 1u32) / 2u32;
            let base = upoly::add(ctx, &t, &upoly::constant(ctx, a));
            let h = upoly::powmod(ctx, &base, &e, s);
            let h = upoly::sub(ctx, &h, &upoly::constant(ctx, ctx.one()));
            upoly::gcd(ctx, s, &h)
        };
        let dg = upoly::degree(&g).unwrap_or(0);
        if dg > 0 && dg < upoly::degree(s).unwrap() {
            let cof = upoly::div_exact(ctx, s, &g).expect("gcd divides");
            split_linear(ctx, &g, rng, out);
            split_linear(ctx, &cof, rng, out);
            return;
        }
    }
}

enum Char0Roots {
    Found(Vec<Elem>),
    NeedSqrt(BigRational),
}

fn char0_roots(ctx: &FieldCtx, u: &[Elem]) -> Result<Splitting> {
    let parts = upoly::squarefree_decomposition(ctx, u);
    let mut roots = Vec::new();
    for (s, m) in &parts {
        match char0_squarefree_roots(ctx, s)? {
            Char0Roots::Found(rs) => roots.extend(rs.into_iter().map(|r| (r, *m))),
            Char0Roots::NeedSqrt(disc) => {
                if ctx.radicand().is_some() {
                    return Err(Error::NotSupported(format!(
                        "roots need sqrt({disc}) beyond {}",
                        ctx.describe()
                    )));
                }
                let big = FieldCtx::quadratic(squarefree_radicand(&disc));
                let inner = char0_roots(&big, u)?;
                return Ok(Splitting {
                    embedding: Embedding::identity(&big),
                    ctx: big,
                    roots: inner.roots,
                });
            }
        }
    }
    roots.sort();
    Ok(Splitting {
        ctx: ctx.clone(),
        embedding: Embedding::identity(ctx),
        roots,
    })
}

fn char0_squarefree_roots(ctx: &FieldCtx, s: &[Elem]) -> Result<Char0Roots> {
    let mut rest = upoly::monic(ctx, s);
    let mut found = Vec::new();
    let rational: Option<Vec<BigRational>> =
        rest.iter().map(|c| ctx.as_rational(c).cloned()).collect();
    if let Some(coeffs) = rational {
        for r in rational_roots(&coeffs)? {
            let e = Elem::Rat(r);
            let lin = vec![ctx.neg(&e), ctx.one()];
            rest = upoly::div_exact(ctx, &rest, &lin).expect("root divides");
            found.push(e);
        }
    }
    match upoly::degree(&rest) {
        Some(0) | None => {}
        Some(1) => found.push(ctx.neg(&rest[0])),
        Some(2) => {
            let two = ctx.from_u64(2);
            let disc = ctx.sub(
                &ctx.square(&rest[1]),
                &ctx.mul(&ctx.from_u64(4), &rest[0]),
            );
            match ctx.sqrt_char0(&disc) {
                Some(sq) => {
                    let minus_b = ctx.neg(&rest[1]);
                    found.push(ctx.div(&ctx.add(&minus_b, &sq), &two));
                    found.push(ctx.div(&ctx.sub(&minus_b, &sq), &two));
                }
                None => match disc {
                    Elem::Rat(d) => return Ok(Char0Roots::NeedSqrt(d)),
                    _ => {
                        return Err(Error::NotSupported(
                            "quadratic factor with irrational discriminant over Q(sqrt d)".into(),
                        ))
                    }
                },
            }
        }
        Some(n) => {
            return Err(Error::NotSupported(format!(
                "factor of degree {n} without rational roots in characteristic 0"
            )))
        }
    }
    Ok(Char0Roots::Found(found))
}

fn squarefree_radicand(d: &BigRational) -> BigRational {
    let mut n: BigInt = d.numer() * d.denom();
    let mut f = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while f <= limit {
        let sq = &f * &f;
        if sq > n.abs() {
            break;
        }
        while (&n % &sq).is_zero() {
            n /= &sq;
        }
        f += 1;
    }
    BigRational::from_integer(n)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let small = n
        .to_u64()
        .filter(|&v| v <= RATIONAL_ROOT_BOUND)
        .ok_or_else(|| Error::NotSupported("rational root search: coefficient too large".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Rational roots of a squarefree polynomial with rational coefficients.
fn rational_roots(coeffs: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    while ints.first().is_some_and(|c| c.is_zero()) {
        ints.remove(0);
        if !out.contains(&BigRational::zero()) {
            out.push(BigRational::zero());
        }
    }
    if ints.len() <= 1 {
        return Ok(out);
    }
    let lead = ints.last().unwrap().clone();
    let cands: BTreeSet<BigRational> = {
        let num = divisors(&ints[0])?;
        let den = divisors(&lead)?;
        let mut set = BTreeSet::new();
        for p in &num {
            for q in &den {
                let r = BigRational::new(p.clone(), q.clone());
                set.insert(-r.clone());
                set.insert(r);
            }
        }
        set
    };
    for r in cands {
        let v = ints.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * &r + BigRational::from_integer(c.clone())
        });
        if v.is_zero() {
            out.push(r);
        }
    }
    Ok(out)
}
