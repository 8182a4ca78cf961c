//! Sparse bivariate polynomials, the jets standing in for power series.

mod gcd;
pub(crate) use gcd::FILTER_PRIMES;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::upoly::UPoly;
use crate::field::{Elem, Embedding, FieldCtx};

pub use parse::parse_poly;

/// Exponent pair `(alpha, beta)` of `x^alpha y^beta`.
pub type Exp = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    ctx: FieldCtx,
    terms: BTreeMap<Exp, Elem>,
}

/// `w = (n, m)` with `ord_w(x) = n`, `ord_w(y) = m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub n: u32,
    pub m: u32,
}

impl Weight {
    pub const STANDARD: Weight = Weight { n: 1, m: 1 };

    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::NotSupported(format!("weight ({n},{m}) must be positive")));
        }
        Ok(Weight { n, m })
    }

    pub fn value(&self, (a, b): Exp) -> u64 {
        a as u64 * self.n as u64 + b as u64 * self.m as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDecomposition {
    pub w_order: u64,
    pub initial: BivarPoly,
    pub tail: BivarPoly,
}

impl BivarPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        BivarPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ctx: &FieldCtx, exp: Exp, c: Elem) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(exp, c);
        p
    }

    pub fn constant(ctx: &FieldCtx, c: Elem) -> Self {
        Self::monomial(ctx, (0, 0), c)
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::constant(ctx, ctx.one())
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, (1, 0), ctx.one())
    }

    pub fn y(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, (0, 1), ctx.one())
    }

    /// `a*x + b*y`.
    pub fn linear(ctx: &FieldCtx, a: Elem, b: Elem) -> Self {
        let mut p = Self::monomial(ctx, (1, 0), a);
        p.add_term((0, 1), b);
        p
    }

    pub fn from_terms(ctx: &FieldCtx, terms: impl IntoIterator<Item = (Exp, Elem)>) -> Self {
        let mut p = Self::zero(ctx);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &Elem)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: Exp) -> Elem {
        self.terms.get(&exp).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    /// Nonzero constant term, i.e. a unit of the power series ring.
    pub fn is_unit(&self) -> bool {
        self.terms.contains_key(&(0, 0))
    }

    pub fn constant_term(&self) -> Elem {
        self.coeff((0, 0))
    }

    fn add_term(&mut self, exp: Exp, c: Elem) {
        if self.ctx.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(old) => {
                let s = self.ctx.add(old, &c);
                if self.ctx.is_zero(&s) {
                    self.terms.remove(&exp);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    fn same_ctx(&self, other: &Self) {
        debug_assert!(self.ctx == other.ctx, "mixed field contexts");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ctx(other);
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BivarPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, self.ctx.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> Self {
        if self.ctx.is_zero(c) {
            return Self::zero(&self.ctx);
        }
        BivarPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&e, v)| (e, self.ctx.mul(v, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ctx(other);
        let mut out = Self::zero(&self.ctx);
        for (&(a, b), c) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term((a + a2, b + b2), self.ctx.mul(c, c2));
            }
        }
        out
    }

    /// Multiply by `x^a y^b`.
    pub fn mul_monomial(&self, (a, b): Exp) -> Self {
        BivarPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + a, j + b), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    /// `ord(f)`; `None` for the zero polynomial.
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).min()
    }

    pub fn weighted_order(&self, w: Weight) -> Option<u64> {
        self.terms.keys().map(|&e| w.value(e)).min()
    }

    pub fn weighted_order_and_initial(&self, w: Weight) -> Result<WeightedDecomposition> {
        let w_order = self.weighted_order(w).ok_or(Error::ZeroInput)?;
        let (ini, tail): (Vec<_>, Vec<_>) = self
            .terms
            .iter()
            .map(|(&e, c)| (e, c.clone()))
            .partition(|&(e, _)| w.value(e) == w_order);
        Ok(WeightedDecomposition {
            w_order,
            initial: Self::from_terms(&self.ctx, ini),
            tail: Self::from_terms(&self.ctx, tail),
        })
    }

    /// Initial form `in(f)` for the standard weight; zero for zero.
    pub fn initial_form(&self) -> Self {
        match self.ord() {
            None => self.clone(),
            Some(m) => self.homogeneous_part(m),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        BivarPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| a + b == d)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub fn derivative_x(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (&(a, b), c) in &self.terms {
            if a > 0 {
                out.add_term((a - 1, b), self.ctx.mul(c, &self.ctx.from_u64(a as u64)));
            }
        }
        out
    }

    pub fn derivative_y(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (&(a, b), c) in &self.terms {
            if b > 0 {
                out.add_term((a, b - 1), self.ctx.mul(c, &self.ctx.from_u64(b as u64)));
            }
        }
        out
    }

    pub fn partial_derivatives(&self) -> (Self, Self) {
        (self.derivative_x(), self.derivative_y())
    }

    /// `P_l(f) = f_x l_y - f_y l_x`.
    pub fn polar(&self, l: &Self) -> Result<Self> {
        let ord_l = l.ord().ok_or(Error::ZeroInput)?;
        if ord_l != 1 {
            return Err(Error::NotRegularParameter(ord_l));
        }
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.gcd(l).ord().unwrap_or(0) > 0 {
            return Err(Error::DegenerateDirection);
        }
        let (fx, fy) = self.partial_derivatives();
        let (lx, ly) = l.partial_derivatives();
        Ok(fx.mul(&ly).sub(&fy.mul(&lx)))
    }

    /// `f(a x + b y, c x + d y)` for the matrix `[[a, b], [c, d]]`.
    pub fn linear_change(&self, m: &[[Elem; 2]; 2]) -> Result<Self> {
        let k = &self.ctx;
        let det = k.sub(&k.mul(&m[0][0], &m[1][1]), &k.mul(&m[0][1], &m[1][0]));
        if k.is_zero(&det) {
            return Err(Error::NotInvertible);
        }
        let lx = Self::linear(k, m[0][0].clone(), m[0][1].clone());
        let ly = Self::linear(k, m[1][0].clone(), m[1][1].clone());
        let xs = powers(&lx, self.deg_x().unwrap_or(0));
        let ys = powers(&ly, self.deg_y().unwrap_or(0));
        let mut out = Self::zero(k);
        for (&(a, b), c) in &self.terms {
            out = out.add(&xs[a as usize].mul(&ys[b as usize]).scale(c));
        }
        Ok(out)
    }

    pub fn swap_xy(&self) -> Self {
        BivarPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((b, a), c.clone()))
                .collect(),
        }
    }

    /// `f(x, y + c)`.
    pub fn shift_y(&self, c: &Elem) -> Self {
        if self.ctx.is_zero(c) {
            return self.clone();
        }
        let k = &self.ctx;
        let max_b = self.deg_y().unwrap_or(0) as usize;
        let mut cpow = vec![k.one()];
        for i in 1..=max_b {
            cpow.push(k.mul(&cpow[i - 1], c));
        }
        let binom = pascal(k, max_b);
        let mut out = Self::zero(k);
        for (&(a, b), v) in &self.terms {
            for j in 0..=b as usize {
                let coef = k.mul(&k.mul(v, &binom[b as usize][j]), &cpow[b as usize - j]);
                out.add_term((a, j as u32), coef);
            }
        }
        out
    }

    /// Strict transform in the chart `y = x t`: returns `f(x, x t) / x^m`
    /// with `m = ord(f)`; the new variable `t` occupies the `y` slot.
    pub fn blowup_chart_x(&self) -> Self {
        let m = self.ord().unwrap_or(0);
        BivarPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + b - m, b), c.clone()))
                .collect(),
        }
    }

    /// Strict transform in the chart `x = s y`: `f(s y, y) / y^m`.
    pub fn blowup_chart_y(&self) -> Self {
        self.swap_xy().blowup_chart_x().swap_xy()
    }

    /// `f(x, 0)` as a univariate polynomial in `x`.
    pub fn restrict_y0(&self) -> UPoly {
        self.restrict(|(a, b)| (b == 0).then_some(a))
    }

    /// `f(0, y)` as a univariate polynomial in `y`.
    pub fn restrict_x0(&self) -> UPoly {
        self.restrict(|(a, b)| (a == 0).then_some(b))
    }

    fn restrict(&self, pick: impl Fn(Exp) -> Option<u32>) -> UPoly {
        let mut out: UPoly = Vec::new();
        for (&e, c) in &self.terms {
            if let Some(i) = pick(e) {
                let i = i as usize;
                if out.len() <= i {
                    out.resize(i + 1, self.ctx.zero());
                }
                out[i] = c.clone();
            }
        }
        out
    }

    /// `in(f)(1, t)`: the tangent-direction polynomial in the chart `y = x t`.
    pub fn tangent_polynomial(&self) -> UPoly {
        let m = self.ord().unwrap_or(0);
        self.restrict(|(a, b)| (a + b == m).then_some(b))
    }

    /// Coefficients in `y` with entries in `K[x]`.
    pub fn y_coefficients(&self) -> Vec<UPoly> {
        let mut out: Vec<UPoly> = vec![Vec::new(); self.deg_y().map_or(0, |d| d as usize + 1)];
        for (&(a, b), c) in &self.terms {
            let row = &mut out[b as usize];
            if row.len() <= a as usize {
                row.resize(a as usize + 1, self.ctx.zero());
            }
            row[a as usize] = c.clone();
        }
        out
    }

    pub fn from_y_coefficients(ctx: &FieldCtx, rows: &[UPoly]) -> Self {
        let mut p = Self::zero(ctx);
        for (b, row) in rows.iter().enumerate() {
            for (a, c) in row.iter().enumerate() {
                p.add_term((a as u32, b as u32), c.clone());
            }
        }
        p
    }

    pub fn from_x_poly(ctx: &FieldCtx, u: &[Elem]) -> Self {
        Self::from_y_coefficients(ctx, &[u.to_vec()])
    }

    /// Map all coefficients into a larger field.
    pub fn embed(&self, e: &Embedding) -> Self {
        BivarPoly {
            ctx: e.target().clone(),
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, e.apply(c)))
                .collect(),
        }
    }

    /// Largest `x^a y^b` dividing `f`.
    pub fn monomial_content(&self) -> Exp {
        let a = self.terms.keys().map(|&(a, _)| a).min().unwrap_or(0);
        let b = self.terms.keys().map(|&(_, b)| b).min().unwrap_or(0);
        (a, b)
    }

    /// Exact division by `x^a y^b`; panics unless it divides.
    pub fn div_monomial(&self, (a, b): Exp) -> Self {
        BivarPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i - a, j - b), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &Elem, y: &Elem) -> Elem {
        let k = &self.ctx;
        self.terms.iter().fold(k.zero(), |acc, (&(a, b), c)| {
            k.add(&acc, &k.mul(c, &k.mul(&k.pow(x, a as u64), &k.pow(y, b as u64))))
        })
    }

    /// `g` with `g^p = f` when all partial derivatives vanish identically.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.ctx.characteristic() as u32;
        if p == 0 {
            return None;
        }
        if self.terms.keys().any(|&(a, b)| a % p != 0 || b % p != 0) {
            return None;
        }
        Some(BivarPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a / p, b / p), self.ctx.pth_root(c)))
                .collect(),
        })
    }

    /// Leading term in the lexicographic order `x > y`.
    pub fn leading(&self) -> Option<(Exp, &Elem)> {
        self.terms.iter().next_back().map(|(&e, c)| (e, c))
    }

    /// Scaled so the leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.ctx.inv(c)),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.same_ctx(d);
        let ((da, db), dc) = d.leading()?;
        let inv = self.ctx.inv(dc);
        let (max_a, max_b) = (self.deg_x().unwrap_or(0), self.deg_y().unwrap_or(0));
        let (dx, dy) = (d.deg_x().unwrap_or(0), d.deg_y().unwrap_or(0));
        let mut r = self.clone();
        let mut q = Self::zero(&self.ctx);
        while let Some(((ra, rb), rc)) = r.leading() {
            if ra < da || rb < db || ra - da + dx > max_a || rb - db + dy > max_b {
                return None;
            }
            let e = (ra - da, rb - db);
            let c = self.ctx.mul(rc, &inv);
            r = r.sub(&d.mul_monomial(e).scale(&c));
            q.add_term(e, c);
        }
        Some(q)
    }

    pub fn show(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<Exp> = self.terms.keys().copied().collect();
        keys.sort_by(|&(a, b), &(c, d)| (a + b).cmp(&(c + d)).then(c.cmp(&a)).then(b.cmp(&d)));
        let mut out = String::new();
        for (i, e) in keys.iter().enumerate() {
            let c = self.ctx.show(&self.terms[e]);
            let mono = match e {
                (0, 0) => String::new(),
                (a, 0) => pw("x", *a),
                (0, b) => pw("y", *b),
                (a, b) => format!("{}*{}", pw("x", *a), pw("y", *b)),
            };
            let (neg, c) = match c.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, c),
            };
            let c = if c.contains(['+', '-', '/']) && !mono.is_empty() {
                format!("({c})")
            } else {
                c
            };
            let body = match (c.as_str(), mono.is_empty()) {
                (_, true) => c.clone(),
                ("1", false) => mono,
                (_, false) => format!("{c}*{mono}"),
            };
            if i > 0 {
                out.push(if neg { '-' } else { '+' });
            } else if neg {
                out.push('-');
            }
            out.push_str(&body);
        }
        out
    }
}

fn pw(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

fn powers(l: &BivarPoly, n: u32) -> Vec<BivarPoly> {
    let mut out = vec![BivarPoly::one(l.ctx())];
    for i in 0..n as usize {
        out.push(out[i].mul(l));
    }
    out
}

/// Binomial coefficients `C(n, j)` as field elements, rows `0..=n`.
fn pascal(k: &FieldCtx, n: usize) -> Vec<Vec<Elem>> {
    let mut rows: Vec<Vec<Elem>> = vec![vec![k.one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![k.one(); i + 1];
        for j in 1..i {
            row[j] = k.add(&prev[j - 1], &prev[j]);
        }
        rows.push(row);
    }
    rows
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.show())
    }
}

/// Product of the pairwise coprime `factors` raised to their multiplicities.
pub fn product(ctx: &FieldCtx, factors: &[(BivarPoly, u32)]) -> BivarPoly {
    factors
        .iter()
        .fold(BivarPoly::one(ctx), |acc, (f, m)| acc.mul(&f.pow(*m)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedTest {
    pub reduced: bool,
    /// Product of the distinct components through the origin.
    pub squarefree_part: BivarPoly,
}

impl BivarPoly {
    /// Decides whether `f` is reduced as a power series: no irreducible
    /// component through the origin occurs twice.
    pub fn reduced_test(&self) -> Result<ReducedTest> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let parts = self.squarefree_decomposition();
        let mut reduced = true;
        let mut sf = Self::one(&self.ctx);
        for (s, m) in &parts {
            if s.is_unit() {
                continue;
            }
            if *m > 1 {
                reduced = false;
            }
            sf = sf.mul(s);
        }
        Ok(ReducedTest {
            reduced,
            squarefree_part: sf.normalized(),
        })
    }
}
