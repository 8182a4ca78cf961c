//! Milnor number, delta, conductor and the polar identities.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::intersect::{i0, ExtNat};
use crate::poly::BivarPoly;
use crate::resolve::{self, semigroup, BranchData, ResolutionTree};

/// A truth value that may be undecidable, e.g. the Milnor formula when
/// `mu` is infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tri {
    True,
    False,
    Indeterminate,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::True => "true",
            Tri::False => "false",
            Tri::Indeterminate => "indeterminate",
        })
    }
}

/// `v` is not divisible by the characteristic (always true in characteristic 0).
pub fn coprime_to_char(v: u64, p: u64) -> bool {
    p == 0 || v % p != 0
}

fn ext_coprime_to_char(v: ExtNat, p: u64) -> bool {
    v.finite().is_some_and(|v| coprime_to_char(v, p))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityReport {
    pub ord: u32,
    pub mu: ExtNat,
    pub delta: u64,
    pub r: u64,
    pub c: u64,
    pub mu_bar: u64,
    pub milnor_formula_holds: Tri,
    pub per_branch: Vec<BranchData>,
    /// `i0` of branches `i < j`.
    pub pairwise: Vec<((usize, usize), u64)>,
    /// Degree over the prime field of the field the resolution ended in.
    pub field_degree: usize,
    /// Failed internal cross-checks; empty unless something is wrong.
    pub checks: Vec<String>,
}

/// `mu = i0(f_x, f_y)`, infinite when the partials share a component
/// through the origin (in particular when one of them vanishes).
pub fn milnor_number(f: &BivarPoly) -> Result<ExtNat> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.ord() == Some(0) {
        return Err(Error::NotThroughOrigin);
    }
    let (fx, fy) = f.partial_derivatives();
    if fx.is_unit() || fy.is_unit() {
        return Ok(ExtNat::Fin(0));
    }
    if fx.is_zero() || fy.is_zero() {
        return Ok(ExtNat::Infinity);
    }
    i0(&fx, &fy)
}

/// `mu_bar = c - r + 1`.
pub fn mu_bar(f: &BivarPoly) -> Result<u64> {
    let tree = resolve::branch_decompose(f)?;
    let dc = resolve::delta_and_conductor(&tree);
    Ok(dc.c + 1 - dc.r)
}

/// Cross-checks of the resolution data against the semigroups.
fn tree_checks(tree: &ResolutionTree, germ: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut sum_c = 0u64;
    let branches: Vec<&BranchData> = tree.branches_of(germ).collect();
    for b in &branches {
        if let Err(e) = semigroup::check_generators(&b.gens) {
            out.push(format!("branch {}: {e}", b.id));
        }
        let closed = semigroup::conductor_closed_form(&b.gens);
        if closed != b.conductor as i64 {
            out.push(format!(
                "branch {}: conductor {} by gaps but {closed} by the closed form",
                b.id, b.conductor
            ));
        }
        if b.conductor != 2 * b.delta_branch {
            out.push(format!(
                "branch {}: conductor {} but delta {}",
                b.id, b.conductor, b.delta_branch
            ));
        }
        sum_c += b.conductor;
    }
    for (i, a) in branches.iter().enumerate() {
        for b in &branches[i + 1..] {
            sum_c += 2 * tree.pair(a.id, b.id);
        }
    }
    let delta = tree.delta_of(&[germ]);
    if sum_c != 2 * delta {
        out.push(format!(
            "conductor {sum_c} from branches and pairs but 2*delta = {}",
            2 * delta
        ));
    }
    out
}

pub fn invariant_report(f: &BivarPoly) -> Result<SingularityReport> {
    let tree = resolve::branch_decompose(f)?;
    let ord = f.ord().expect("nonzero");
    let mu = milnor_number(f)?;
    let dc = resolve::delta_and_conductor(&tree);
    let mu_bar = dc.c + 1 - dc.r;
    let mut checks = tree_checks(&tree, 0);
    if (mu_bar == 0) != (ord == 1) {
        checks.push(format!("mu_bar = {mu_bar} with ord = {ord}"));
    }
    let milnor_formula_holds = match mu {
        ExtNat::Infinity => Tri::Indeterminate,
        ExtNat::Fin(m) => Tri::from(m == mu_bar),
    };
    Ok(SingularityReport {
        ord,
        mu,
        delta: dc.delta,
        r: dc.r,
        c: dc.c,
        mu_bar,
        milnor_formula_holds,
        pairwise: tree.pairwise.iter().map(|(&k, &v)| (k, v)).collect(),
        per_branch: tree.branches,
        field_degree: tree.ctx.degree(),
        checks,
    })
}

/// One irreducible factor of a polar curve through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarFactor {
    pub description: String,
    /// Multiplicity as a factor of the polar.
    pub multiplicity: u32,
    pub ord: u32,
    pub i0_f: ExtNat,
    pub i0_l: ExtNat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolarIdentityReport {
    pub l: BivarPoly,
    pub polar: BivarPoly,
    pub mu: ExtNat,
    pub mu_bar: u64,
    pub i0_f_l: ExtNat,
    pub i0_f_polar: ExtNat,
    pub i0_l_polar: ExtNat,
    pub polar_ord: u32,
    /// Every branch `f_i` has `i0(f_i, l)` prime to the characteristic.
    pub dedekind_applicable: bool,
    /// `i0(f, P_l(f)) = mu_bar + i0(f, l) - 1`.
    pub dedekind_holds: bool,
    /// `i0(l, P_l(f)) >= i0(f, l) - 1`.
    pub line_polar_bound: bool,
    pub line_polar_equality: bool,
    pub hypothesis_i: bool,
    pub hypothesis_ii: bool,
    /// `i0(f, P_l(f)) <= mu + i0(f, l) - 1`.
    pub teissier_bound_holds: Tri,
    /// `i0(f, P_l(f)) = mu + i0(f, l) - 1`.
    pub teissier_equality: Tri,
    pub factors: Vec<PolarFactor>,
    /// Polar factors `h` with `i0(f, h)` divisible by the characteristic.
    pub failing_factors: Vec<String>,
    pub checks: Vec<String>,
}

enum Piece {
    Free(BivarPoly, u32),
    SharesF(BivarPoly, u32),
    SharesL(BivarPoly, u32),
}

fn through_origin(p: &BivarPoly) -> bool {
    p.ord().unwrap_or(0) > 0
}

/// Squarefree pieces of the polar through the origin, split by components
/// shared with `f` or `l`.
fn polar_pieces(f: &BivarPoly, l: &BivarPoly, polar: &BivarPoly) -> Vec<Piece> {
    let mut out = Vec::new();
    if polar.is_unit() {
        return out;
    }
    for (s, m) in polar.squarefree_decomposition() {
        if !through_origin(&s) {
            continue;
        }
        let a = s.gcd(f);
        let rest = s.div_exact(&a).expect("gcd divides");
        let b = rest.gcd(l);
        let c = rest.div_exact(&b).expect("gcd divides");
        if through_origin(&a) {
            out.push(Piece::SharesF(a, m));
        }
        if through_origin(&b) {
            out.push(Piece::SharesL(b, m));
        }
        if through_origin(&c) {
            out.push(Piece::Free(c, m));
        }
    }
    out
}

fn branch_label(tree: &ResolutionTree, branch: usize, poly: &BivarPoly) -> String {
    let b = &tree.branches[branch];
    let same_germ = tree.branches_of(b.germ).count();
    if same_germ == 1 {
        poly.show()
    } else {
        let k = tree.branches_of(b.germ).position(|x| x.id == branch).unwrap();
        format!("branch {} of {}", k + 1, poly.show())
    }
}

/// The polar `P_l(f)` with its branches and all intersection numbers
/// entering the polar identities.
pub fn polar_analysis(f: &BivarPoly, l: &BivarPoly) -> Result<PolarIdentityReport> {
    let polar = f.polar(l)?;
    if !f.reduced_test()?.reduced {
        return Err(Error::NotReduced);
    }
    if f.ord() == Some(0) {
        return Err(Error::NotThroughOrigin);
    }
    let p = f.ctx().characteristic();
    let mu = milnor_number(f)?;
    let pieces = polar_pieces(f, l, &polar);
    let mut germs = vec![f.clone(), l.clone()];
    let mut free_mults = Vec::new();
    for piece in &pieces {
        if let Piece::Free(c, m) = piece {
            germs.push(c.clone());
            free_mults.push(*m);
        }
    }
    let tree = resolve::resolve_germs(&germs)?;
    let f_branches: Vec<&BranchData> = tree.branches_of(0).collect();
    let r = f_branches.len() as u64;
    let mu_bar = 2 * tree.delta_of(&[0]) + 1 - r;
    let i0_f_l = ExtNat::Fin(tree.germ_intersection(0, 1));
    let dedekind_applicable = f_branches
        .iter()
        .all(|b| coprime_to_char(tree.branch_germ_intersection(b.id, 1), p));

    let mut factors = Vec::new();
    for (k, m) in free_mults.iter().enumerate() {
        let g = k + 2;
        for b in tree.branches_of(g) {
            factors.push(PolarFactor {
                description: branch_label(&tree, b.id, &germs[g]),
                multiplicity: *m,
                ord: b.path_mults[0],
                i0_f: ExtNat::Fin(tree.branch_germ_intersection(b.id, 0)),
                i0_l: ExtNat::Fin(tree.branch_germ_intersection(b.id, 1)),
            });
        }
    }
    for piece in &pieces {
        let (h, m, other, shares_f) = match piece {
            Piece::Free(..) => continue,
            Piece::SharesF(h, m) => (h, *m, l, true),
            Piece::SharesL(h, m) => (h, *m, f, false),
        };
        let t = resolve::resolve_germs(&[h.clone(), other.clone()])?;
        for b in t.branches_of(0) {
            let finite = ExtNat::Fin(t.branch_germ_intersection(b.id, 1));
            let (i0_f, i0_l) = if shares_f {
                (ExtNat::Infinity, finite)
            } else {
                (finite, ExtNat::Infinity)
            };
            factors.push(PolarFactor {
                description: branch_label(&t, b.id, h),
                multiplicity: m,
                ord: b.path_mults[0],
                i0_f,
                i0_l,
            });
        }
    }

    let weighted = |sel: fn(&PolarFactor) -> ExtNat| {
        factors.iter().fold(ExtNat::Fin(0), |acc, h| match sel(h) {
            ExtNat::Fin(v) => acc + ExtNat::Fin(v * h.multiplicity as u64),
            ExtNat::Infinity => ExtNat::Infinity,
        })
    };
    let i0_f_polar = weighted(|h| h.i0_f);
    let i0_l_polar = weighted(|h| h.i0_l);
    let polar_ord = polar.ord().unwrap_or(0);

    let mut checks = Vec::new();
    let direct_f = i0(f, &polar)?;
    if direct_f != i0_f_polar {
        checks.push(format!(
            "i0(f, polar) = {direct_f} directly but {i0_f_polar} from the polar branches"
        ));
    }
    let direct_l = i0(l, &polar)?;
    if direct_l != i0_l_polar {
        checks.push(format!(
            "i0(l, polar) = {direct_l} directly but {i0_l_polar} from the polar branches"
        ));
    }
    let ord_sum: u64 = factors.iter().map(|h| h.ord as u64 * h.multiplicity as u64).sum();
    if ord_sum != polar_ord as u64 {
        checks.push(format!("polar order {polar_ord} but its branches sum to {ord_sum}"));
    }

    let fl = i0_f_l.finite().expect("l is not a component of f");
    let dedekind_holds = i0_f_polar == ExtNat::Fin(mu_bar + fl - 1);
    if dedekind_applicable && !dedekind_holds {
        checks.push(format!(
            "Dedekind formula fails: i0(f, polar) = {i0_f_polar}, mu_bar + i0(f,l) - 1 = {}",
            mu_bar + fl - 1
        ));
    }
    let line_polar_bound = i0_l_polar >= ExtNat::Fin(fl - 1);
    let line_polar_equality = i0_l_polar == ExtNat::Fin(fl - 1);
    let hypothesis_i = coprime_to_char(fl, p);
    let hypothesis_ii = factors.iter().all(|h| ext_coprime_to_char(h.i0_l, p));
    let (teissier_bound_holds, teissier_equality) = match mu {
        ExtNat::Fin(m) => {
            let rhs = ExtNat::Fin(m + fl - 1);
            (Tri::from(i0_f_polar <= rhs), Tri::from(i0_f_polar == rhs))
        }
        ExtNat::Infinity => (Tri::Indeterminate, Tri::Indeterminate),
    };
    let failing_factors = factors
        .iter()
        .filter(|h| !ext_coprime_to_char(h.i0_f, p))
        .map(|h| format!("{} (i0(f,h) = {})", h.description, h.i0_f))
        .collect();
    Ok(PolarIdentityReport {
        l: l.clone(),
        polar,
        mu,
        mu_bar,
        i0_f_l,
        i0_f_polar,
        i0_l_polar,
        polar_ord,
        dedekind_applicable,
        dedekind_holds,
        line_polar_bound,
        line_polar_equality,
        hypothesis_i,
        hypothesis_ii,
        teissier_bound_holds,
        teissier_equality,
        factors,
        failing_factors,
        checks,
    })
}

/// `i0(f, P_l(f)) = mu_bar(f) + i0(f, l) - 1` for `l` with every
/// `i0(f_i, l)` prime to the characteristic.
pub fn dedekind_polar_identity(f: &BivarPoly, l: &BivarPoly) -> Result<PolarIdentityReport> {
    let rep = polar_analysis(f, l)?;
    if !rep.dedekind_applicable {
        return Err(Error::HypothesisFailed {
            reason: "some branch f_i has i0(f_i, l) divisible by the characteristic".into(),
            partial: Some(Box::new(rep)),
        });
    }
    Ok(rep)
}

/// Teissier's inequality `i0(f, P_l(f)) <= mu + i0(f, l) - 1`, with the
/// equality diagnosis through the polar factors.
pub fn teissier_bound(f: &BivarPoly, l: &BivarPoly) -> Result<PolarIdentityReport> {
    let rep = polar_analysis(f, l)?;
    let reason = if rep.mu.is_infinite() {
        Some("mu is infinite".to_string())
    } else if !rep.hypothesis_i {
        Some(format!("(i) fails: i0(f, l) = {} is divisible by the characteristic", rep.i0_f_l))
    } else if !rep.hypothesis_ii {
        let bad: Vec<String> = rep
            .factors
            .iter()
            .filter(|h| !ext_coprime_to_char(h.i0_l, f.ctx().characteristic()))
            .map(|h| format!("{} (i0(l,h) = {})", h.description, h.i0_l))
            .collect();
        Some(format!("(ii) fails for {}", bad.join(", ")))
    } else {
        None
    };
    match reason {
        Some(reason) => Err(Error::HypothesisFailed {
            reason,
            partial: Some(Box::new(rep)),
        }),
        None => Ok(rep),
    }
}

/// Transversal regular parameter: the first of `y`, `y + c x` (c running
/// through the field), `x` with `i0(f, l) = ord(f)`.
pub fn generic_transversal(f: &BivarPoly) -> Result<BivarPoly> {
    let ctx: &FieldCtx = f.ctx();
    let ord = f.ord().ok_or(Error::ZeroInput)? as u64;
    let mut candidates = vec![BivarPoly::y(ctx)];
    for i in 1..ctx.enumerable(64) {
        candidates.push(BivarPoly::linear(ctx, ctx.element(i), ctx.one()));
    }
    candidates.push(BivarPoly::x(ctx));
    for l in candidates {
        if i0(f, &l)? == ExtNat::Fin(ord) {
            return Ok(l);
        }
    }
    Err(Error::hypothesis(format!(
        "no transversal line among y, y + c*x, x over {}",
        ctx.describe()
    )))
}

/// `l = -b x + a y`.
pub fn line(ctx: &FieldCtx, a: i64, b: i64) -> BivarPoly {
    BivarPoly::linear(ctx, ctx.from_i64(-b), ctx.from_i64(a))
}
