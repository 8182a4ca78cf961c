//! Deterministic test corpora.
#![allow(dead_code)]

use charplane_core::field::{embed_into, FieldCtx};
use charplane_core::intersect::{i0_resultant_oracle, ExtNat};
use charplane_core::Error;
use charplane_core::poly::{parse_poly, BivarPoly};
use charplane_core::resolve::branch_decompose;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn poly(s: &str, p: u64) -> BivarPoly {
    parse_poly(s, &FieldCtx::make(p, 1).unwrap()).unwrap()
}

pub struct Member {
    pub f: BivarPoly,
    pub p: u64,
    /// Factors `f = g h` when the member was built as a product.
    pub factors: Option<(BivarPoly, BivarPoly)>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coeff(rng: &mut ChaCha8Rng, ctx: &FieldCtx, p: u64) -> charplane_core::field::Elem {
    if p == 0 {
        let v = rng.gen_range(1..=3i64);
        ctx.from_i64(if rng.gen_bool(0.5) { v } else { -v })
    } else {
        ctx.from_u64(rng.gen_range(1..p))
    }
}

/// A few random terms of total degree in `lo..=hi`.
pub fn random_poly(rng: &mut ChaCha8Rng, p: u64, lo: u32, hi: u32, terms: usize) -> BivarPoly {
    let ctx = FieldCtx::make(p, 1).unwrap();
    let mut f = BivarPoly::zero(&ctx);
    for _ in 0..terms {
        let d = rng.gen_range(lo..=hi);
        let a = rng.gen_range(0..=d);
        let c = coeff(rng, &ctx, p);
        f = f.add(&BivarPoly::monomial(&ctx, (a, d - a), c));
    }
    f
}

/// Curves whose resolution stays over Q or a quadratic extension:
/// `y^a - c x^b` with coprime exponents, lines and parabolas.
fn rational_piece(rng: &mut ChaCha8Rng) -> BivarPoly {
    let ctx = FieldCtx::rationals();
    let c = coeff(rng, &ctx, 0);
    let (a, b) = *[(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (2, 5), (3, 4), (3, 5), (1, 3)]
        .get(rng.gen_range(0..9))
        .unwrap();
    BivarPoly::monomial(&ctx, (0, a), ctx.one())
        .sub(&BivarPoly::monomial(&ctx, (b, 0), c))
}

fn usable(f: &BivarPoly) -> bool {
    f.ord().unwrap_or(0) >= 1
        && f.reduced_test().map(|t| t.reduced).unwrap_or(false)
        && branch_decompose(f).is_ok()
}

fn one_member(rng: &mut ChaCha8Rng, p: u64) -> Member {
    loop {
        let (f, factors) = if p == 0 {
            let k = rng.gen_range(1..=3);
            let parts: Vec<BivarPoly> = (0..k).map(|_| rational_piece(rng)).collect();
            let f = parts.iter().skip(1).fold(parts[0].clone(), |acc, g| acc.mul(g));
            let factors = (k >= 2).then(|| {
                let g = parts[0].clone();
                let h = parts[1..].iter().skip(1).fold(parts[1].clone(), |acc, x| acc.mul(x));
                (g, h)
            });
            (f, factors)
        } else if rng.gen_bool(0.25) {
            let g = random_poly(rng, p, 1, 3, 2);
            let h = random_poly(rng, p, 1, 3, 2);
            (g.mul(&h), Some((g, h)))
        } else {
            let lo = if rng.gen_bool(0.1) { 1 } else { 2 };
            let terms = rng.gen_range(2..=4);
            (random_poly(rng, p, lo, 6, terms), None)
        };
        if usable(&f) {
            if let Some((g, h)) = &factors {
                if !(usable(g) && usable(h)) {
                    continue;
                }
            }
            return Member { f, p, factors };
        }
    }
}

/// `per_prime` members for each characteristic in `primes`.
pub fn corpus(seed: u64, primes: &[u64], per_prime: usize) -> Vec<Member> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for &p in primes {
        for _ in 0..per_prime {
            out.push(one_member(&mut rng, p));
        }
    }
    out
}

/// Resultant oracle, moved to a larger extension when the prime field has
/// too few shears.
pub fn oracle(f: &BivarPoly, g: &BivarPoly) -> charplane_core::Result<ExtNat> {
    let mut out = i0_resultant_oracle(f, g);
    let p = f.ctx().characteristic();
    for k in [2usize, 4, 6] {
        if p == 0 || !matches!(out, Err(Error::OracleFailure(_))) {
            break;
        }
        let big = FieldCtx::make(p, k).unwrap();
        let emb = embed_into(f.ctx(), &big).unwrap();
        out = i0_resultant_oracle(&f.embed(&emb), &g.embed(&emb));
    }
    out
}
