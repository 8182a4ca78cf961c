//! Dense univariate polynomials over a [`FieldCtx`], stored low degree first
//! with no trailing zeros. The zero polynomial is the empty vector.

use num_bigint::BigUint;

use super::{Elem, FieldCtx};

pub type UPoly = Vec<Elem>;

pub fn trim(ctx: &FieldCtx, mut a: UPoly) -> UPoly {
    while a.last().is_some_and(|c| ctx.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree(a: &[Elem]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant(ctx: &FieldCtx, c: Elem) -> UPoly {
    trim(ctx, vec![c])
}

/// The polynomial `t`.
pub fn var(ctx: &FieldCtx) -> UPoly {
    vec![ctx.zero(), ctx.one()]
}

pub fn add(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> UPoly {
    let n = a.len().max(b.len());
    let zero = ctx.zero();
    let out = (0..n)
        .map(|i| ctx.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(ctx, out)
}

pub fn sub(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> UPoly {
    let n = a.len().max(b.len());
    let zero = ctx.zero();
    let out = (0..n)
        .map(|i| ctx.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(ctx, out)
}

pub fn scale(ctx: &FieldCtx, a: &[Elem], c: &Elem) -> UPoly {
    if ctx.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|x| ctx.mul(x, c)).collect()
}

pub fn mul(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ctx.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
        }
    }
    trim(ctx, out)
}

/// Multiply by `t^k`.
pub fn shift_up(ctx: &FieldCtx, a: &[Elem], k: usize) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); k];
    out.extend_from_slice(a);
    out
}

pub fn divrem(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r: UPoly = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead_inv = ctx.inv(&b[db]);
    let mut q = vec![ctx.zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if ctx.is_zero(&r[i]) {
            continue;
        }
        let c = ctx.mul(&r[i], &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            let idx = i - db + j;
            r[idx] = ctx.sub(&r[idx], &ctx.mul(&c, bj));
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (trim(ctx, q), trim(ctx, r))
}

pub fn rem(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> UPoly {
    divrem(ctx, a, b).1
}

pub fn pow(ctx: &FieldCtx, a: &[Elem], e: u64) -> UPoly {
    (0..e).fold(vec![ctx.one()], |acc, _| mul(ctx, &acc, a))
}

pub fn div_exact(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> Option<UPoly> {
    let (q, r) = divrem(ctx, a, b);
    r.is_empty().then_some(q)
}

pub fn monic(ctx: &FieldCtx, a: &[Elem]) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(ctx, a, &ctx.inv(l)),
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> UPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        // monic remainders keep rational coefficients small
        let r = monic(ctx, &rem(ctx, &x, &y));
        x = y;
        y = r;
    }
    monic(ctx, &x)
}

pub fn derivative(ctx: &FieldCtx, a: &[Elem]) -> UPoly {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ctx.mul(c, &ctx.from_u64(i as u64)))
        .collect();
    trim(ctx, out)
}

pub fn eval(ctx: &FieldCtx, a: &[Elem], x: &Elem) -> Elem {
    a.iter()
        .rev()
        .fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, x), c))
}

/// Multiplicity of the root `0`.
pub fn ord0(ctx: &FieldCtx, a: &[Elem]) -> Option<usize> {
    a.iter().position(|c| !ctx.is_zero(c))
}

pub fn mulmod(ctx: &FieldCtx, a: &[Elem], b: &[Elem], m: &[Elem]) -> UPoly {
    rem(ctx, &mul(ctx, a, b), m)
}

pub fn powmod(ctx: &FieldCtx, base: &[Elem], e: &BigUint, m: &[Elem]) -> UPoly {
    let mut acc = rem(ctx, &constant(ctx, ctx.one()), m);
    let b = rem(ctx, base, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(ctx, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(ctx, &acc, &b, m);
        }
    }
    acc
}

/// `g` with `g^p = a`, when every exponent of `a` is divisible by p.
pub fn pth_root(ctx: &FieldCtx, a: &[Elem]) -> Option<UPoly> {
    let p = ctx.characteristic() as usize;
    if a.iter()
        .enumerate()
        .any(|(i, c)| i % p != 0 && !ctx.is_zero(c))
    {
        return None;
    }
    Some(a.iter().step_by(p).map(|c| ctx.pth_root(c)).collect())
}

/// Squarefree decomposition `a = lc * prod s_i^{m_i}` with the `s_i` monic,
/// squarefree and pairwise coprime. Constant factors are dropped.
pub fn squarefree_decomposition(ctx: &FieldCtx, a: &[Elem]) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    if degree(a).unwrap_or(0) == 0 {
        return out;
    }
    let a = monic(ctx, a);
    let mut c = gcd(ctx, &a, &derivative(ctx, &a));
    let mut w = div_exact(ctx, &a, &c).expect("gcd divides");
    let mut i = 1u32;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(ctx, &w, &c);
        let z = div_exact(ctx, &w, &y).expect("gcd divides");
        if degree(&z).unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = div_exact(ctx, &c, &y).expect("gcd divides");
        w = y;
    }
    if degree(&c).unwrap_or(0) > 0 {
        let p = ctx.characteristic() as u32;
        assert!(p > 0, "leftover cofactor in characteristic 0");
        let root = pth_root(ctx, &c).expect("leftover cofactor is a p-th power");
        out.extend(
            squarefree_decomposition(ctx, &root)
                .into_iter()
                .map(|(s, m)| (s, m * p)),
        );
    }
    out.sort_by_key(|(_, m)| *m);
    out
}

/// `t^(q^i) mod m` for successive i, starting from `t`.
fn frobenius_step(ctx: &FieldCtx, h: &[Elem], m: &[Elem]) -> UPoly {
    let q = ctx.order().expect("finite field");
    powmod(ctx, h, &q, m)
}

/// Irreducibility over a finite field (Ben-Or).
pub fn is_irreducible(ctx: &FieldCtx, a: &[Elem]) -> bool {
    let n = match degree(a) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let a = monic(ctx, a);
    let t = var(ctx);
    let mut h = t.clone();
    for _ in 1..=n / 2 {
        h = frobenius_step(ctx, &h, &a);
        let g = gcd(ctx, &a, &sub(ctx, &h, &t));
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Degrees of the irreducible factors of a squarefree polynomial over a
/// finite field (distinct-degree factorization), with repetition.
pub fn factor_degrees(ctx: &FieldCtx, a: &[Elem]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut s = monic(ctx, a);
    let t = var(ctx);
    let mut h = t.clone();
    let mut d = 0;
    while degree(&s).unwrap_or(0) > 0 {
        d += 1;
        if degree(&s).unwrap() < 2 * d {
            out.push(degree(&s).unwrap());
            break;
        }
        h = frobenius_step(ctx, &h, &s);
        let g = gcd(ctx, &s, &sub(ctx, &h, &t));
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 {
            out.extend(std::iter::repeat_n(d, dg / d));
            s = div_exact(ctx, &s, &g).expect("gcd divides");
            h = rem(ctx, &h, &s);
        }
    }
    out
}
