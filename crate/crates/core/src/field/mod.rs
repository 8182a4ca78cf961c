//! Exact scalars.
//!
//! A [`FieldCtx`] is either the rationals, a quadratic extension `Q(sqrt d)`
//! created on demand by root finding, or a finite field `F_{p^k}` realized as
//! the single quotient `F_p[a]/(modulus)`. Elements are plain values
//! ([`Elem`]); every operation goes through the context that owns them.

mod roots;
pub mod upoly;

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

pub use roots::{embed_into, roots_in_splitting_field, Embedding, Splitting};

/// Largest supported characteristic. Products of two residues must fit a u64.
pub const MAX_CHARACTERISTIC: u64 = (1 << 31) - 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    /// `a + b*sqrt(d)` with `b != 0`; only valid in a quadratic context.
    Quad(BigRational, BigRational),
    /// Coefficients of the residue polynomial in the generator `a`, low degree first.
    Fin(SmallVec<[u64; 4]>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    characteristic: u64,
    degree: usize,
    modulus: Option<Vec<u64>>,
    radicand: Option<BigRational>,
}

/// Context of a field: `Q`, `Q(sqrt d)` or `F_{p^k}`.
#[derive(Clone, Debug)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldCtx {
    pub fn rationals() -> Self {
        FieldCtx(Arc::new(Inner {
            characteristic: 0,
            degree: 1,
            modulus: None,
            radicand: None,
        }))
    }

    /// Builds `Q` (p = 0) or `F_{p^k}`. The modulus for `k > 1` is the first
    /// irreducible monic polynomial in a fixed enumeration order.
    pub fn make(p: u64, k: usize) -> Result<Self> {
        if p == 0 {
            if k != 1 {
                return Err(Error::UnsupportedExtension(k));
            }
            return Ok(Self::rationals());
        }
        if !is_prime(p) || p > MAX_CHARACTERISTIC {
            return Err(Error::InvalidCharacteristic(p));
        }
        if k == 0 {
            return Err(Error::NotSupported("extension degree 0".into()));
        }
        let modulus = if k == 1 {
            None
        } else {
            Some(find_modulus(p, k))
        };
        Ok(FieldCtx(Arc::new(Inner {
            characteristic: p,
            degree: k,
            modulus,
            radicand: None,
        })))
    }

    pub fn prime_field(&self) -> FieldCtx {
        if self.degree() == 1 && self.0.radicand.is_none() {
            return self.clone();
        }
        if self.is_finite() {
            FieldCtx::make(self.characteristic(), 1).expect("characteristic already validated")
        } else {
            FieldCtx::rationals()
        }
    }

    /// `Q(sqrt d)`; `d` must not be a rational square.
    pub(crate) fn quadratic(d: BigRational) -> FieldCtx {
        FieldCtx(Arc::new(Inner {
            characteristic: 0,
            degree: 2,
            modulus: None,
            radicand: Some(d),
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.0.modulus.as_deref()
    }

    pub fn radicand(&self) -> Option<&BigRational> {
        self.0.radicand.as_ref()
    }

    pub fn is_finite(&self) -> bool {
        self.0.characteristic > 0
    }

    /// Number of elements, `None` in characteristic 0.
    pub fn order(&self) -> Option<BigUint> {
        if self.is_finite() {
            Some(num_traits::pow(BigUint::from(self.characteristic()), self.degree()))
        } else {
            None
        }
    }

    pub fn describe(&self) -> String {
        match (self.characteristic(), self.radicand()) {
            (0, None) => "Q".to_string(),
            (0, Some(d)) => format!("Q(sqrt({d}))"),
            (p, _) if self.degree() == 1 => format!("F_{p}"),
            (p, _) => {
                let m = self.modulus().expect("extension has a modulus");
                format!("F_{p}^{} = F_{p}[a]/({})", self.degree(), show_fp_poly(m, "a"))
            }
        }
    }

    pub fn zero(&self) -> Elem {
        if self.is_finite() {
            Elem::Fin(smallvec![0; self.degree()])
        } else {
            Elem::Rat(BigRational::zero())
        }
    }

    pub fn one(&self) -> Elem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> Elem {
        if self.is_finite() {
            let mut v: SmallVec<[u64; 4]> = smallvec![0; self.degree()];
            v[0] = n % self.characteristic();
            Elem::Fin(v)
        } else {
            Elem::Rat(BigRational::from_integer(BigInt::from(n)))
        }
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        if n < 0 {
            self.neg(&self.from_u64(n.unsigned_abs()))
        } else {
            self.from_u64(n as u64)
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        if self.is_finite() {
            let p = BigInt::from(self.characteristic());
            let r = n.mod_floor(&p).to_u64().expect("residue fits");
            self.from_u64(r)
        } else {
            Elem::Rat(BigRational::from_integer(n.clone()))
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, r: &BigRational) -> Result<Elem> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        if self.is_zero(&den) {
            return Err(Error::NotSupported(format!(
                "denominator of {r} vanishes in characteristic {}",
                self.characteristic()
            )));
        }
        Ok(self.div(&num, &den))
    }

    /// The prime-field residue of an element lying in the prime field.
    pub fn as_prime_residue(&self, a: &Elem) -> Option<u64> {
        match a {
            Elem::Fin(v) if v[1..].iter().all(|&c| c == 0) => Some(v[0]),
            _ => None,
        }
    }

    pub fn as_rational<'a>(&self, a: &'a Elem) -> Option<&'a BigRational> {
        match a {
            Elem::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::Quad(..) => false,
            Elem::Fin(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_one(),
            Elem::Quad(..) => false,
            Elem::Fin(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
        }
    }

    fn quad(a: BigRational, b: BigRational) -> Elem {
        if b.is_zero() {
            Elem::Rat(a)
        } else {
            Elem::Quad(a, b)
        }
    }

    fn parts(a: &Elem) -> (BigRational, BigRational) {
        match a {
            Elem::Rat(r) => (r.clone(), BigRational::zero()),
            Elem::Quad(x, y) => (x.clone(), y.clone()),
            Elem::Fin(_) => panic!("finite-field element in a characteristic-0 context"),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => {
                let p = self.characteristic();
                Elem::Fin(x.iter().zip(y.iter()).map(|(u, v)| (u + v) % p).collect())
            }
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            _ => {
                let (a0, a1) = Self::parts(a);
                let (b0, b1) = Self::parts(b);
                Self::quad(a0 + b0, a1 + b1)
            }
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Fin(x) => {
                let p = self.characteristic();
                Elem::Fin(x.iter().map(|&u| (p - u) % p).collect())
            }
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::Quad(x, y) => Elem::Quad(-x, -y),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => {
                let p = self.characteristic();
                Elem::Fin(x.iter().zip(y.iter()).map(|(u, v)| (u + p - v) % p).collect())
            }
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(self.fin_mul(x, y)),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            _ => {
                let d = self
                    .radicand()
                    .expect("quadratic element outside a quadratic context");
                let (a0, a1) = Self::parts(a);
                let (b0, b1) = Self::parts(b);
                let re = &a0 * &b0 + d * &a1 * &b1;
                let im = &a0 * &b1 + &a1 * &b0;
                Self::quad(re, im)
            }
        }
    }

    fn fin_mul(&self, x: &[u64], y: &[u64]) -> SmallVec<[u64; 4]> {
        let p = self.characteristic();
        let k = self.degree();
        if k == 1 {
            return smallvec![(x[0] * y[0]) % p];
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        let m = self.modulus().expect("extension has a modulus");
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..k {
                prod[d - k + j] = (prod[d - k + j] + (p - c) * m[j]) % p;
            }
        }
        prod.truncate(k);
        SmallVec::from_vec(prod)
    }

    pub fn square(&self, a: &Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    pub fn pow_big(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero: callers check first.
    pub fn inv(&self, a: &Elem) -> Elem {
        assert!(!self.is_zero(a), "inverse of zero");
        match a {
            Elem::Fin(x) => {
                let p = self.characteristic();
                if self.degree() == 1 {
                    return Elem::Fin(smallvec![mod_inverse(x[0], p)]);
                }
                let q = self.order().expect("finite");
                self.pow_big(a, &(q - 2u32))
            }
            Elem::Rat(r) => Elem::Rat(r.recip()),
            Elem::Quad(x, y) => {
                let d = self.radicand().expect("quadratic context");
                let norm = x * x - d * y * y;
                Self::quad(x / &norm, -(y / &norm))
            }
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(a, &self.inv(b))
    }

    /// Inverse of Frobenius: the unique `b` with `b^p = a` (finite fields only).
    pub fn pth_root(&self, a: &Elem) -> Elem {
        assert!(self.is_finite(), "p-th roots only exist in characteristic p");
        let p = self.characteristic();
        let mut b = a.clone();
        for _ in 1..self.degree() {
            b = self.pow(&b, p);
        }
        b
    }

    /// Deterministic enumeration of elements: base-p digits of `index` as
    /// coefficients (finite fields), or the integer `index` (characteristic 0).
    pub fn element(&self, index: u64) -> Elem {
        if self.is_finite() {
            let p = self.characteristic();
            let mut v: SmallVec<[u64; 4]> = smallvec![0; self.degree()];
            let mut i = index;
            for c in v.iter_mut() {
                *c = i % p;
                i /= p;
            }
            Elem::Fin(v)
        } else {
            self.from_u64(index)
        }
    }

    /// Number of distinct elements reachable by [`FieldCtx::element`], capped.
    pub fn enumerable(&self, cap: u64) -> u64 {
        match self.order() {
            Some(q) => q.to_u64().map_or(cap, |q| q.min(cap)),
            None => cap,
        }
    }

    /// Square root inside the context (characteristic 0 only), if it exists.
    pub(crate) fn sqrt_char0(&self, a: &Elem) -> Option<Elem> {
        let (u, v) = Self::parts(a);
        if v.is_zero() {
            if let Some(s) = rational_sqrt(&u) {
                return Some(Elem::Rat(s));
            }
            if let Some(d) = self.radicand() {
                // u = s^2 d  =>  sqrt(u) = s sqrt(d)
                if let Some(s) = rational_sqrt(&(&u / d)) {
                    return Some(Self::quad(BigRational::zero(), s));
                }
            }
            return None;
        }
        let d = self.radicand()?;
        let norm = &u * &u - d * &v * &v;
        let n = rational_sqrt(&norm)?;
        let two = BigRational::from_integer(BigInt::from(2));
        for cand in [(&u + &n) / &two, (&u - &n) / &two] {
            if cand.is_zero() {
                continue;
            }
            if let Some(x) = rational_sqrt(&cand) {
                let y = &v / (&two * &x);
                let r = Self::quad(x, y);
                if self.square(&r) == *a {
                    return Some(r);
                }
            }
        }
        None
    }

    pub fn show(&self, a: &Elem) -> String {
        match a {
            Elem::Rat(r) => r.to_string(),
            Elem::Quad(x, y) => {
                let d = self.radicand().expect("quadratic context");
                format!("{x}+({y})*sqrt({d})")
            }
            Elem::Fin(v) => {
                if self.degree() == 1 {
                    v[0].to_string()
                } else {
                    show_fp_poly(v, "a")
                }
            }
        }
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

fn show_fp_poly(c: &[u64], var: &str) -> String {
    let mut s = String::new();
    for (i, &v) in c.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('+');
        }
        match (i, v) {
            (0, v) => write!(s, "{v}").unwrap(),
            (1, 1) => s.push_str(var),
            (1, v) => write!(s, "{v}*{var}").unwrap(),
            (i, 1) => write!(s, "{var}^{i}").unwrap(),
            (i, v) => write!(s, "{v}*{var}^{i}").unwrap(),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// First monic irreducible polynomial of degree `k` over `F_p`, coefficients
/// enumerated as base-p digits of a counter (constant term least significant).
fn find_modulus(p: u64, k: usize) -> Vec<u64> {
    let prime = FieldCtx::make(p, 1).expect("prime");
    let mut counter: u64 = 0;
    loop {
        counter += 1;
        let mut i = counter;
        let mut m: Vec<u64> = (0..k)
            .map(|_| {
                let c = i % p;
                i /= p;
                c
            })
            .collect();
        if i > 0 {
            unreachable!("an irreducible polynomial of every degree exists");
        }
        if m[0] == 0 {
            continue;
        }
        m.push(1);
        let poly: Vec<Elem> = m.iter().map(|&c| prime.from_u64(c)).collect();
        if upoly::is_irreducible(&prime, &poly) {
            return m;
        }
    }
}
