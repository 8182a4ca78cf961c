//! Tameness: the Milnor formula `mu = 2 delta - r + 1`, decided directly
//! and through the criteria that imply or characterize it.

mod merle;
pub mod newton;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::upoly::{self, UPoly};
use crate::intersect::ExtNat;
use crate::invariants::{
    coprime_to_char, generic_transversal, milnor_number, mu_bar, polar_analysis, Tri,
};
use crate::poly::{BivarPoly, Weight};
use crate::resolve;

pub use merle::{merle_verify, MerleBundle, MerleReport};
use newton::Face;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriterionName {
    Direct,
    Sqh,
    NewtonNd,
    NguyenMuBound,
    KappaBound,
    PolarFactors,
    Semigroup,
    Merle,
}

impl CriterionName {
    pub fn as_str(self) -> &'static str {
        match self {
            CriterionName::Direct => "DIRECT",
            CriterionName::Sqh => "SQH",
            CriterionName::NewtonNd => "NEWTON_ND",
            CriterionName::NguyenMuBound => "NGUYEN_MU_BOUND",
            CriterionName::KappaBound => "KAPPA_BOUND",
            CriterionName::PolarFactors => "POLAR_FACTORS",
            CriterionName::Semigroup => "SEMIGROUP",
            CriterionName::Merle => "MERLE",
        }
    }
}

impl fmt::Display for CriterionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a `true` or `false` verdict says about tameness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// The definition itself.
    Direct,
    /// Verdict equals tameness.
    Equivalence,
    /// Only `true` says something: the germ is tame.
    Sufficient,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Direct => "direct",
            Kind::Equivalence => "equivalence",
            Kind::Sufficient => "sufficient",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub name: CriterionName,
    pub kind: Kind,
    pub applicable: bool,
    pub verdict: Tri,
    pub witness: String,
}

impl CriterionResult {
    fn inapplicable(name: CriterionName, kind: Kind, witness: impl Into<String>) -> Self {
        CriterionResult {
            name,
            kind,
            applicable: false,
            verdict: Tri::Indeterminate,
            witness: witness.into(),
        }
    }

    fn decided(name: CriterionName, kind: Kind, verdict: Tri, witness: impl Into<String>) -> Self {
        CriterionResult {
            name,
            kind,
            applicable: true,
            verdict,
            witness: witness.into(),
        }
    }
}

fn require_reduced(f: &BivarPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !f.reduced_test()?.reduced {
        return Err(Error::NotReduced);
    }
    Ok(())
}

/// `mu` finite and equal to `2 delta - r + 1`.
pub fn tame_direct(f: &BivarPoly) -> Result<CriterionResult> {
    require_reduced(f)?;
    let mu = milnor_number(f)?;
    let bar = mu_bar(f)?;
    let (verdict, witness) = match mu {
        ExtNat::Infinity => (false, "μ infinite".to_string()),
        ExtNat::Fin(m) => (m == bar, format!("μ = {m}, 2δ - r + 1 = {bar}")),
    };
    Ok(CriterionResult::decided(
        CriterionName::Direct,
        Kind::Direct,
        verdict.into(),
        witness,
    ))
}

/// `f(1, y)` as a polynomial in `y`.
fn at_x_one(g: &BivarPoly) -> UPoly {
    let ctx = g.ctx();
    let mut out: UPoly = Vec::new();
    for (&(_, b), c) in g.terms() {
        let b = b as usize;
        if out.len() <= b {
            out.resize(b + 1, ctx.zero());
        }
        out[b] = ctx.add(&out[b], c);
    }
    upoly::trim(ctx, out)
}

/// A nontrivial common zero of the partials of a quasihomogeneous `g`,
/// described; `None` when the origin is the only one. With `torus_only`
/// only zeros with both coordinates nonzero count.
fn partials_common_zero(g: &BivarPoly, torus_only: bool) -> Option<String> {
    let ctx = g.ctx();
    let (gx, gy) = g.partial_derivatives();
    let has_zero = |h: &BivarPoly| {
        if torus_only {
            !h.div_monomial(h.monomial_content()).is_constant()
        } else {
            !h.is_constant()
        }
    };
    match (gx.is_zero(), gy.is_zero()) {
        (true, true) => return Some("both partials vanish identically".into()),
        (true, false) => return has_zero(&gy).then(|| "∂/∂x vanishes and ∂/∂y has zeros".into()),
        (false, true) => return has_zero(&gx).then(|| "∂/∂y vanishes and ∂/∂x has zeros".into()),
        _ => {}
    }
    if !torus_only {
        let (cx, cy) = (gx.monomial_content(), gy.monomial_content());
        if cx.0 > 0 && cy.0 > 0 {
            return Some("x divides both partials".into());
        }
        if cx.1 > 0 && cy.1 > 0 {
            return Some("y divides both partials".into());
        }
    }
    let h = upoly::gcd(ctx, &at_x_one(&gx), &at_x_one(&gy));
    let d = h.len() - 1 - upoly::ord0(ctx, &h).unwrap_or(0);
    (d > 0).then(|| format!("partials share {d} roots off the axes"))
}

fn is_squarefree(g: &BivarPoly) -> bool {
    g.squarefree_decomposition().iter().all(|(_, m)| *m == 1)
}

/// Semi-quasihomogeneity with respect to `w`; decides tameness when
/// `in_w(f)` is squarefree.
pub fn sqh_test(f: &BivarPoly, w: Weight) -> Result<CriterionResult> {
    let name = CriterionName::Sqh;
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let tag = format!("w = ({},{})", w.n, w.m);
    if f.ord() == Some(0) {
        return Ok(CriterionResult::inapplicable(name, Kind::Equivalence, "f is a unit"));
    }
    let init = f.weighted_order_and_initial(w)?.initial;
    if !is_squarefree(&init) {
        return Ok(CriterionResult::inapplicable(
            name,
            Kind::Equivalence,
            format!("{tag}: in_w(f) = {} has a multiple factor", init.show()),
        ));
    }
    Ok(match partials_common_zero(&init, false) {
        None => CriterionResult::decided(
            name,
            Kind::Equivalence,
            Tri::True,
            format!("{tag}: partials of in_w(f) meet only at the origin"),
        ),
        Some(why) => CriterionResult::decided(
            name,
            Kind::Equivalence,
            Tri::False,
            format!("{tag}: {why}"),
        ),
    })
}

/// The first of `(1,1)` and the weights of the compact Newton edges whose
/// initial form is squarefree.
fn sqh_default(f: &BivarPoly) -> Result<CriterionResult> {
    let mut weights = vec![Weight::STANDARD];
    for face in newton::compact_faces(f) {
        if let Face::Edge { weight, .. } = face {
            if !weights.contains(&weight) {
                weights.push(weight);
            }
        }
    }
    let mut first = None;
    for w in weights {
        let res = sqh_test(f, w)?;
        if res.applicable {
            return Ok(res);
        }
        first.get_or_insert(res);
    }
    Ok(first.expect("standard weight tried"))
}

/// Face nondegeneracy of the Newton polygon after splitting off the
/// monomial factors. Sufficient for tameness.
pub fn newton_nondegenerate_test(f: &BivarPoly) -> Result<CriterionResult> {
    let name = CriterionName::NewtonNd;
    let kind = Kind::Sufficient;
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (a, b) = f.monomial_content();
    if a > 1 || b > 1 {
        return Ok(CriterionResult::inapplicable(
            name,
            kind,
            format!("x^{a} y^{b} divides f"),
        ));
    }
    let cof = f.div_monomial((a, b));
    if cof.ord() == Some(0) {
        if a + b == 0 {
            return Ok(CriterionResult::inapplicable(name, kind, "f is a unit"));
        }
        return Ok(CriterionResult::decided(
            name,
            kind,
            Tri::True,
            "f is a normal crossing of coordinate axes",
        ));
    }
    if cof.restrict_x0().is_empty() || cof.restrict_y0().is_empty() {
        return Ok(CriterionResult::inapplicable(
            name,
            kind,
            "cofactor of the monomial part is not convenient",
        ));
    }
    let p = f.ctx().characteristic();
    for face in newton::compact_faces(f) {
        let degenerate = match &face {
            Face::Vertex((a, b)) => (p > 0 && *a as u64 % p == 0 && *b as u64 % p == 0)
                .then(|| "both partials vanish".to_string()),
            Face::Edge { .. } => {
                let form = newton::face_form(f, &face);
                let torus = form.div_monomial(form.monomial_content());
                if !is_squarefree(&torus) {
                    Some(format!("face form {} has a multiple factor", form.show()))
                } else {
                    partials_common_zero(&form, true)
                        .map(|why| format!("face form {}: {why}", form.show()))
                }
            }
        };
        if let Some(why) = degenerate {
            return Ok(CriterionResult::decided(
                name,
                kind,
                Tri::Indeterminate,
                format!("degenerate {}: {why}", face.describe()),
            ));
        }
    }
    Ok(CriterionResult::decided(
        name,
        kind,
        Tri::True,
        "every compact face is nondegenerate",
    ))
}

/// The bound `p > mu + ord - 1`, the bound `p > i0(f, P_l(f))` and the
/// polar factor equivalence for `p > ord(f)`, in that order.
pub fn nguyen_criteria(f: &BivarPoly, l: Option<&BivarPoly>) -> Result<Vec<CriterionResult>> {
    use CriterionName::{KappaBound, NguyenMuBound, PolarFactors};
    require_reduced(f)?;
    let p = f.ctx().characteristic();
    if p == 0 {
        return Ok([
            (NguyenMuBound, Kind::Sufficient),
            (KappaBound, Kind::Sufficient),
            (PolarFactors, Kind::Equivalence),
        ]
        .into_iter()
        .map(|(n, k)| CriterionResult::inapplicable(n, k, "characteristic 0"))
        .collect());
    }
    let ord = f.ord().expect("nonzero") as u64;
    let mut out = Vec::new();
    out.push(match milnor_number(f)? {
        ExtNat::Infinity => {
            CriterionResult::inapplicable(NguyenMuBound, Kind::Sufficient, "μ infinite")
        }
        ExtNat::Fin(mu) => {
            let bound = mu + ord - 1;
            let witness = format!("μ + ord - 1 = {bound}, p = {p}");
            let verdict = if p > bound { Tri::True } else { Tri::Indeterminate };
            CriterionResult::decided(NguyenMuBound, Kind::Sufficient, verdict, witness)
        }
    });
    let l = match l {
        Some(l) => l.clone(),
        None => generic_transversal(f)?,
    };
    let rep = polar_analysis(f, &l)?;
    let transversal = rep.i0_f_l == ExtNat::Fin(ord);
    let lname = l.show();
    if !transversal {
        let why = format!("i0(f, {lname}) = {} differs from ord(f) = {ord}", rep.i0_f_l);
        out.push(CriterionResult::inapplicable(KappaBound, Kind::Sufficient, why.clone()));
        out.push(CriterionResult::inapplicable(PolarFactors, Kind::Equivalence, why));
        return Ok(out);
    }
    let kappa = rep.i0_f_polar;
    let verdict = match kappa {
        ExtNat::Fin(k) if k < p => Tri::True,
        _ => Tri::Indeterminate,
    };
    out.push(CriterionResult::decided(
        KappaBound,
        Kind::Sufficient,
        verdict,
        format!("l = {lname}, i0(f, P_l(f)) = {kappa}, p = {p}"),
    ));
    out.push(if p > ord {
        if rep.failing_factors.is_empty() {
            CriterionResult::decided(
                PolarFactors,
                Kind::Equivalence,
                Tri::True,
                format!("l = {lname}, every polar factor h has i0(f, h) prime to p"),
            )
        } else {
            CriterionResult::decided(
                PolarFactors,
                Kind::Equivalence,
                Tri::False,
                format!(
                    "l = {lname}, i0(f, h) divisible by p for {}",
                    rep.failing_factors.join(", ")
                ),
            )
        }
    } else {
        CriterionResult::inapplicable(
            PolarFactors,
            Kind::Equivalence,
            format!("p = {p} does not exceed ord(f) = {ord}"),
        )
    });
    Ok(out)
}

fn list_divisible(gens: &[u64], range: std::ops::RangeInclusive<usize>, p: u64) -> Vec<String> {
    range
        .filter(|&k| !coprime_to_char(gens[k], p))
        .map(|k| format!("β̄_{k} = {}", gens[k]))
        .collect()
}

fn semigroup_from(gens: &[u64], n_star: u64, p: u64) -> CriterionResult {
    let name = CriterionName::Semigroup;
    let g = gens.len() - 1;
    let shown = format!("Γ = ⟨{}⟩", join(gens));
    let verdict_of = |range: std::ops::RangeInclusive<usize>, kind: Kind| {
        let bad = list_divisible(gens, range, p);
        if bad.is_empty() {
            CriterionResult::decided(name, kind, Tri::True, format!("{shown}, no generator divisible by p"))
        } else if kind == Kind::Equivalence {
            CriterionResult::decided(name, kind, Tri::False, format!("{shown}, {} ≡ 0 mod p", bad.join(", ")))
        } else {
            CriterionResult::decided(
                name,
                kind,
                Tri::Indeterminate,
                format!("{shown}, {} ≡ 0 mod p, only the sufficient direction applies", bad.join(", ")),
            )
        }
    };
    if p == 0 || p > n_star {
        let mut res = verdict_of(1..=g, Kind::Equivalence);
        if !coprime_to_char(gens[0], p) {
            res.witness.push_str(", β̄_0 divisible by p");
        }
        res
    } else if g == 1 {
        verdict_of(0..=1, Kind::Equivalence)
    } else {
        verdict_of(0..=g, Kind::Sufficient)
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Tameness of a branch read off its semigroup.
pub fn semigroup_criterion(f: &BivarPoly) -> Result<CriterionResult> {
    let tree = resolve::branch_decompose(f)?;
    if tree.r() != 1 {
        return Err(Error::NotIrreducible(tree.r()));
    }
    let b = &tree.branches[0];
    if b.gens.len() == 1 {
        return Ok(CriterionResult::inapplicable(
            CriterionName::Semigroup,
            Kind::Equivalence,
            "smooth branch",
        ));
    }
    Ok(semigroup_from(&b.gens, b.n_star, f.ctx().characteristic()))
}

/// For a branch with `p > n*`: tame iff `i0(f, f_y) = mu + n - 1`, with
/// `i0(f, f_y)` summed over the bundles of the decomposition of `f_y`.
pub fn merle_criterion(f: &BivarPoly) -> Result<(CriterionResult, Option<MerleReport>)> {
    let name = CriterionName::Merle;
    let kind = Kind::Equivalence;
    require_reduced(f)?;
    let tree = resolve::branch_decompose(f)?;
    if tree.r() != 1 {
        let why = format!("f has {} branches", tree.r());
        return Ok((CriterionResult::inapplicable(name, kind, why), None));
    }
    let b = &tree.branches[0];
    let p = f.ctx().characteristic();
    if b.gens.len() == 1 {
        return Ok((CriterionResult::inapplicable(name, kind, "smooth branch"), None));
    }
    if p != 0 && p <= b.n_star {
        let why = format!("p = {p} does not exceed n* = {}", b.n_star);
        return Ok((CriterionResult::inapplicable(name, kind, why), None));
    }
    let rep = merle_verify(f)?;
    if !rep.violations.is_empty() {
        let why = format!("decomposition violated: {}", rep.violations.join("; "));
        return Ok((CriterionResult::decided(name, kind, Tri::Indeterminate, why), Some(rep)));
    }
    let mu = milnor_number(f)?;
    let lhs = rep.i0_f_polar;
    let res = match mu {
        ExtNat::Infinity => CriterionResult::decided(
            name,
            kind,
            Tri::False,
            format!("i0(f, f_y) = {lhs} but μ infinite"),
        ),
        ExtNat::Fin(m) => {
            let rhs = m + rep.n - 1;
            CriterionResult::decided(
                name,
                kind,
                (lhs == ExtNat::Fin(rhs)).into(),
                format!("i0(f, f_y) = {lhs}, μ + n - 1 = {rhs}"),
            )
        }
    };
    Ok((res, Some(rep)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TameReport {
    pub direct: CriterionResult,
    /// SQH, NEWTON_ND, NGUYEN_MU_BOUND, KAPPA_BOUND, POLAR_FACTORS,
    /// SEMIGROUP, MERLE.
    pub criteria: Vec<CriterionResult>,
    pub merle: Option<MerleReport>,
    /// Criteria contradicting the direct verdict; empty unless something is
    /// wrong.
    pub inconsistencies: Vec<String>,
    /// A tame branch with some `beta_bar_k` divisible by `p`: would refute
    /// the converse of the generator condition.
    pub converse_candidate: bool,
}

fn or_inapplicable(
    name: CriterionName,
    kind: Kind,
    r: Result<CriterionResult>,
) -> CriterionResult {
    r.unwrap_or_else(|e| CriterionResult::inapplicable(name, kind, e.to_string()))
}

/// The direct verdict and every criterion, side by side, audited against
/// each other.
pub fn tame_report(
    f: &BivarPoly,
    w: Option<Weight>,
    l: Option<&BivarPoly>,
) -> Result<TameReport> {
    let direct = tame_direct(f)?;
    let mut criteria = Vec::new();
    criteria.push(or_inapplicable(
        CriterionName::Sqh,
        Kind::Equivalence,
        match w {
            Some(w) => sqh_test(f, w),
            None => sqh_default(f),
        },
    ));
    criteria.push(or_inapplicable(
        CriterionName::NewtonNd,
        Kind::Sufficient,
        newton_nondegenerate_test(f),
    ));
    match nguyen_criteria(f, l) {
        Ok(v) => criteria.extend(v),
        Err(e) => {
            for (n, k) in [
                (CriterionName::NguyenMuBound, Kind::Sufficient),
                (CriterionName::KappaBound, Kind::Sufficient),
                (CriterionName::PolarFactors, Kind::Equivalence),
            ] {
                criteria.push(CriterionResult::inapplicable(n, k, e.to_string()));
            }
        }
    }
    let p = f.ctx().characteristic();
    let tree = resolve::branch_decompose(f)?;
    let mut converse_candidate = false;
    if tree.r() == 1 {
        let b = &tree.branches[0];
        criteria.push(if b.gens.len() == 1 {
            CriterionResult::inapplicable(CriterionName::Semigroup, Kind::Equivalence, "smooth branch")
        } else {
            semigroup_from(&b.gens, b.n_star, p)
        });
        converse_candidate = direct.verdict == Tri::True
            && b.gens.iter().any(|&v| !coprime_to_char(v, p));
    } else {
        criteria.push(CriterionResult::inapplicable(
            CriterionName::Semigroup,
            Kind::Equivalence,
            format!("f has {} branches", tree.r()),
        ));
    }
    let merle = match merle_criterion(f) {
        Ok((res, rep)) => {
            criteria.push(res);
            rep
        }
        Err(e) => {
            criteria.push(CriterionResult::inapplicable(
                CriterionName::Merle,
                Kind::Equivalence,
                e.to_string(),
            ));
            None
        }
    };
    let inconsistencies = audit(&direct, &criteria, merle.as_ref());
    Ok(TameReport {
        direct,
        criteria,
        merle,
        inconsistencies,
        converse_candidate,
    })
}

fn audit(
    direct: &CriterionResult,
    criteria: &[CriterionResult],
    merle: Option<&MerleReport>,
) -> Vec<String> {
    let mut out = Vec::new();
    for c in criteria.iter().filter(|c| c.applicable) {
        let clash = match c.kind {
            Kind::Sufficient => c.verdict == Tri::True && direct.verdict == Tri::False,
            Kind::Equivalence => c.verdict != direct.verdict,
            Kind::Direct => false,
        };
        if clash {
            out.push(format!(
                "{} ({}) says {} but DIRECT says {}: {}",
                c.name,
                c.kind.as_str(),
                c.verdict,
                direct.verdict,
                c.witness
            ));
        }
    }
    if let Some(m) = merle {
        out.extend(m.violations.iter().map(|v| format!("MERLE: {v}")));
    }
    out
}
