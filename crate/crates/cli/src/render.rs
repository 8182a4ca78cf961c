//! JSON and table renderings. Every integer is written as a decimal string.

use charplane_core::invariants::{PolarFactor, PolarIdentityReport, SingularityReport, Tri};
use charplane_core::tameness::{CriterionResult, MerleReport};
use serde_json::{json, Value};

pub const SCHEMA: &str = "charplane/1";

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn list<T: std::fmt::Display>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|x| s(x)).collect())
}

fn tri(t: Tri) -> Value {
    s(t)
}

fn verdict(t: Tri) -> Value {
    s(match t {
        Tri::Indeterminate => "unknown".to_string(),
        t => t.to_string(),
    })
}

pub fn report(r: &SingularityReport) -> Value {
    let branches: Vec<Value> = r
        .per_branch
        .iter()
        .map(|b| {
            json!({
                "id": s(b.id),
                "mult_seq": list(&b.mult_seq),
                "semigroup": list(&b.gens),
                "e": list(&b.e),
                "n": list(&b.n_seq),
                "n_star": s(b.n_star),
                "conductor": s(b.conductor),
                "delta": s(b.delta_branch),
            })
        })
        .collect();
    let pairwise: Vec<Value> = r
        .pairwise
        .iter()
        .map(|((i, j), v)| json!({ "i": s(i), "j": s(j), "i0": s(v) }))
        .collect();
    json!({
        "ord": s(r.ord),
        "mu": s(r.mu),
        "delta": s(r.delta),
        "r": s(r.r),
        "c": s(r.c),
        "mu_bar": s(r.mu_bar),
        "milnor_formula_holds": tri(r.milnor_formula_holds),
        "branches": branches,
        "pairwise": pairwise,
        "checks": r.checks,
    })
}

pub fn criterion(c: &CriterionResult) -> Value {
    json!({
        "name": c.name.as_str(),
        "kind": c.kind.as_str(),
        "applicable": c.applicable,
        "verdict": verdict(c.verdict),
        "witness": c.witness,
    })
}

fn polar_factor(h: &PolarFactor) -> Value {
    json!({
        "factor": h.description,
        "multiplicity": s(h.multiplicity),
        "ord": s(h.ord),
        "i0_f": s(h.i0_f),
        "i0_l": s(h.i0_l),
    })
}

pub fn polar(p: &PolarIdentityReport) -> Value {
    json!({
        "l": p.l.show(),
        "polar": p.polar.show(),
        "mu": s(p.mu),
        "mu_bar": s(p.mu_bar),
        "i0_f_l": s(p.i0_f_l),
        "i0_f_polar": s(p.i0_f_polar),
        "i0_l_polar": s(p.i0_l_polar),
        "polar_ord": s(p.polar_ord),
        "dedekind_applicable": p.dedekind_applicable,
        "dedekind_holds": p.dedekind_holds,
        "line_polar_bound": p.line_polar_bound,
        "line_polar_equality": p.line_polar_equality,
        "hypothesis_i": p.hypothesis_i,
        "hypothesis_ii": p.hypothesis_ii,
        "teissier_bound_holds": tri(p.teissier_bound_holds),
        "teissier_equality": tri(p.teissier_equality),
        "factors": p.factors.iter().map(polar_factor).collect::<Vec<_>>(),
        "failing_factors": p.failing_factors,
        "checks": p.checks,
    })
}

pub fn merle(m: &MerleReport) -> Value {
    let bundles: Vec<Value> = m
        .bundles
        .iter()
        .map(|b| {
            json!({
                "k": s(b.k),
                "factors": b.factors.iter().map(|(d, mult)| json!({
                    "factor": d,
                    "multiplicity": s(mult),
                })).collect::<Vec<_>>(),
                "ord_h": s(b.ord_h),
                "expected_ord": s(b.expected_ord),
                "contact_ratios": list(&b.contact_ratios),
                "expected_ratio": s(b.expected_ratio),
                "ord_divisibility_ok": b.ord_divisibility_ok,
            })
        })
        .collect();
    json!({
        "n": s(m.n),
        "semigroup": list(&m.gens),
        "e": list(&m.e),
        "swapped": m.swapped,
        "bundles": bundles,
        "sum_ord": s(m.sum_ord),
        "i0_f_polar": s(m.i0_f_polar),
        "violations": m.violations,
    })
}

/// `key: value` lines for a JSON record, nested objects indented.
pub fn table(v: &Value) -> String {
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::String(t) => Some(t.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::String(_))) => Some(
            a.iter()
                .map(|x| x.as_str().unwrap())
                .collect::<Vec<_>>()
                .join(", "),
        ),
        _ => None,
    }
}

fn walk(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(t) => out.push_str(&format!("{pad}{k:<22} {t}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}\n"));
                        walk(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(t) => out.push_str(&format!("{pad}[{i}] {t}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        walk(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
