//! Decomposition of `f_y` for an irreducible `f` by contact ratios.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::intersect::ExtNat;
use crate::invariants::{coprime_to_char, polar_analysis, PolarFactor};
use crate::poly::BivarPoly;
use crate::resolve;

/// The factors `h` of `f_y` with `i0(f, h) / ord(h) = e_{k-1} beta_bar_k / n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MerleBundle {
    pub k: usize,
    /// Irreducible factors in the bundle, with their multiplicity in `f_y`.
    pub factors: Vec<(String, u32)>,
    pub ord_h: u64,
    pub expected_ord: u64,
    pub contact_ratios: Vec<Ratio<u64>>,
    pub expected_ratio: Ratio<u64>,
    /// Every factor has order divisible by `n / e_{k-1}`.
    pub ord_divisibility_ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MerleReport {
    pub n: u64,
    pub gens: Vec<u64>,
    pub e: Vec<u64>,
    /// `x` and `y` were exchanged so that `ord f(0, y) = n`.
    pub swapped: bool,
    pub bundles: Vec<MerleBundle>,
    /// `sum ord(h_k)`; equals `n - 1`.
    pub sum_ord: u64,
    /// `i0(f, f_y)`.
    pub i0_f_polar: ExtNat,
    pub polar_factors: Vec<PolarFactor>,
    pub violations: Vec<String>,
}

/// Orders and contact ratios of the factors of `f_y`, checked against the
/// semigroup of `f`.
pub fn merle_verify(f: &BivarPoly) -> Result<MerleReport> {
    let tree = resolve::branch_decompose(f)?;
    if tree.r() != 1 {
        return Err(Error::NotIrreducible(tree.r()));
    }
    let p = f.ctx().characteristic();
    let n = f.ord().expect("nonzero") as u64;
    if !coprime_to_char(n, p) {
        return Err(Error::hypothesis(format!(
            "ord(f) = {n} is divisible by the characteristic"
        )));
    }
    let branch = &tree.branches[0];
    let gens = branch.gens.clone();
    let e = branch.e.clone();
    let g = gens.len() - 1;

    let ord_y = |h: &BivarPoly| crate::field::upoly::ord0(h.ctx(), &h.restrict_x0());
    let mut work = f.clone();
    let mut swapped = false;
    if ord_y(&work) != Some(n as usize) {
        work = work.swap_xy();
        swapped = true;
    }
    if ord_y(&work) != Some(n as usize) {
        return Err(Error::Internal(format!(
            "no coordinate axis is transverse to the branch {}",
            f.show()
        )));
    }

    let rep = polar_analysis(&work, &BivarPoly::x(work.ctx()))?;
    let mut violations = Vec::new();
    let expected: Vec<Ratio<u64>> = (1..=g)
        .map(|k| Ratio::new(e[k - 1] * gens[k], n))
        .collect();
    let mut bundles: Vec<MerleBundle> = (1..=g)
        .map(|k| MerleBundle {
            k,
            factors: Vec::new(),
            ord_h: 0,
            expected_ord: n / e[k] - n / e[k - 1],
            contact_ratios: Vec::new(),
            expected_ratio: expected[k - 1],
            ord_divisibility_ok: true,
        })
        .collect();
    let mut sum_ord = 0u64;
    for h in &rep.factors {
        let ord = h.ord as u64;
        sum_ord += ord * h.multiplicity as u64;
        let Some(i) = h.i0_f.finite() else {
            violations.push(format!("{} shares a component with f", h.description));
            continue;
        };
        let ratio = Ratio::new(i, ord);
        let Some(k) = expected.iter().position(|r| *r == ratio) else {
            violations.push(format!(
                "{}: contact ratio {ratio} matches no e_(k-1) beta_bar_k / n",
                h.description
            ));
            continue;
        };
        let b = &mut bundles[k];
        b.factors.push((h.description.clone(), h.multiplicity));
        b.ord_h += ord * h.multiplicity as u64;
        b.contact_ratios.push(ratio);
        if ord % (n / e[k]) != 0 {
            b.ord_divisibility_ok = false;
            violations.push(format!(
                "{}: ord {ord} is not divisible by n/e_{} = {}",
                h.description,
                k,
                n / e[k]
            ));
        }
    }
    for b in &bundles {
        if b.ord_h != b.expected_ord {
            violations.push(format!(
                "ord(h_{}) = {} but n/e_{} - n/e_{} = {}",
                b.k,
                b.ord_h,
                b.k,
                b.k - 1,
                b.expected_ord
            ));
        }
    }
    if sum_ord != n - 1 {
        violations.push(format!("sum of ord(h_k) is {sum_ord}, expected {}", n - 1));
    }
    Ok(MerleReport {
        n,
        gens,
        e,
        swapped,
        bundles,
        sum_ord,
        i0_f_polar: rep.i0_f_polar,
        polar_factors: rep.factors,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::poly::parse_poly;

    fn f(s: &str, p: u64) -> BivarPoly {
        parse_poly(s, &FieldCtx::make(p, 1).unwrap()).unwrap()
    }

    #[test]
    fn two_pair_example() {
        let rep = merle_verify(&f("(y^2+x^3)^2+x^5*y", 7)).unwrap();
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        let ords: Vec<u64> = rep.bundles.iter().map(|b| b.ord_h).collect();
        assert_eq!(ords, vec![1, 2]);
        assert_eq!(rep.bundles[0].expected_ratio, Ratio::new(6, 1));
        assert_eq!(rep.bundles[1].expected_ratio, Ratio::new(13, 2));
        assert_eq!(rep.sum_ord, 3);
    }

    #[test]
    fn cusp_and_quartic() {
        let rep = merle_verify(&f("y^2-x^3", 5)).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.bundles[0].ord_h, 1);
        assert_eq!(rep.bundles[0].contact_ratios, vec![Ratio::new(3, 1)]);

        let rep = merle_verify(&f("y^4+x^7", 11)).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.bundles[0].ord_h, 3);
        assert_eq!(rep.bundles[0].factors.len(), 1);
        assert_eq!(rep.bundles[0].factors[0].1, 3);
        assert_eq!(rep.bundles[0].contact_ratios, vec![Ratio::new(7, 1)]);
    }

    #[test]
    fn rotates_and_rejects() {
        let rep = merle_verify(&f("x^2-y^3", 5)).unwrap();
        assert!(rep.swapped);
        assert!(rep.violations.is_empty());
        assert!(matches!(
            merle_verify(&f("x*y", 5)),
            Err(Error::NotIrreducible(2))
        ));
        assert!(matches!(
            merle_verify(&f("y^5+x^6", 5)),
            Err(Error::HypothesisFailed { .. })
        ));
    }
}
