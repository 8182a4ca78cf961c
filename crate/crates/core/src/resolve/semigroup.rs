//! Numerical semigroups of branches.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Minimal generators `beta_bar_0, ..., beta_bar_g` of the semigroup of a
/// branch with the given multiplicity sequence.
///
/// The sequence is split into runs of equal values; each characteristic
/// stage is a Euclidean algorithm whose quotients are the run lengths. The
/// trailing run of ones is treated as unbounded.
pub fn semigroup_from_multiplicities(seq: &[u32]) -> Result<Vec<u64>> {
    let bad = |why: &str| Error::Internal(format!("multiplicity sequence {seq:?}: {why}"));
    let n = *seq.first().ok_or_else(|| bad("empty"))? as u64;
    if n == 1 {
        return Ok(vec![1]);
    }
    let mut runs: Vec<(u64, u64)> = Vec::new();
    for &m in seq {
        match runs.last_mut() {
            Some((v, c)) if *v == m as u64 => *c += 1,
            _ => runs.push((m as u64, 1)),
        }
    }
    if runs.last().map(|r| r.0) != Some(1) {
        return Err(bad("does not end in 1"));
    }
    // characteristic exponents, accumulated
    let mut betas: Vec<u64> = Vec::new();
    let mut es: Vec<u64> = vec![n];
    let mut beta = 0u64;
    let mut e_prev = n;
    let mut surplus = runs[0].1;
    let mut idx = 0usize;
    loop {
        let h0 = surplus;
        idx += 1;
        let r1 = runs.get(idx).ok_or_else(|| bad("truncated stage"))?.0;
        if r1 >= e_prev {
            return Err(bad("values must decrease"));
        }
        let mut prev = e_prev;
        let e_next = loop {
            let (v, c) = runs[idx];
            if v == 1 {
                if prev % v != 0 {
                    return Err(bad("inconsistent stage"));
                }
                surplus = u64::MAX;
                break 1;
            }
            if c * v >= prev {
                if prev % v != 0 {
                    return Err(bad("inconsistent stage end"));
                }
                surplus = c - prev / v;
                break v;
            }
            let rem = prev - c * v;
            match runs.get(idx + 1) {
                Some(&(w, _)) if w == rem => {}
                _ => return Err(bad("Euclidean step mismatch")),
            }
            prev = v;
            idx += 1;
        };
        beta += h0 * e_prev + r1;
        betas.push(beta);
        es.push(e_next);
        if e_next == 1 {
            break;
        }
        e_prev = e_next;
    }
    let mut gens = vec![n, betas[0]];
    for k in 1..betas.len() {
        let nk = es[k - 1] / es[k];
        let next = nk * gens[k] + betas[k] - betas[k - 1];
        gens.push(next);
    }
    Ok(gens)
}

/// `e_k = gcd(beta_bar_0, ..., beta_bar_k)`.
pub fn e_sequence(gens: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(gens.len());
    let mut g = 0u64;
    for &b in gens {
        g = g.gcd(&b);
        out.push(g);
    }
    out
}

/// `n_k = e_{k-1} / e_k` for `k = 1..g`.
pub fn n_sequence(e: &[u64]) -> Vec<u64> {
    e.windows(2).map(|w| w[0] / w[1]).collect()
}

/// Membership table of the semigroup generated by `gens` on `0..len`.
pub fn membership(gens: &[u64], len: usize) -> Vec<bool> {
    let mut inside = vec![false; len];
    if len > 0 {
        inside[0] = true;
    }
    for v in 1..len {
        inside[v] = gens
            .iter()
            .any(|&g| g as usize <= v && inside[v - g as usize]);
    }
    inside
}

/// Conductor by gap enumeration. The generators must have gcd 1.
pub fn conductor_by_gaps(gens: &[u64]) -> u64 {
    let g0 = *gens.iter().min().expect("nonempty generators");
    // a run of g0 consecutive members settles it
    let mut len = 64usize.max(4 * g0 as usize);
    loop {
        let inside = membership(gens, len);
        let mut run = 0usize;
        for (v, &m) in inside.iter().enumerate() {
            run = if m { run + 1 } else { 0 };
            if run >= g0 as usize {
                let last_gap = inside[..=v].iter().rposition(|&m| !m);
                return last_gap.map_or(0, |g| g as u64 + 1);
            }
        }
        len *= 2;
    }
}

/// `sum_{k=1}^{g} (n_k - 1) beta_bar_k - beta_bar_0 + 1`.
pub fn conductor_closed_form(gens: &[u64]) -> i64 {
    let e = e_sequence(gens);
    let n = n_sequence(&e);
    let s: i64 = (1..gens.len())
        .map(|k| (n[k - 1] as i64 - 1) * gens[k] as i64)
        .sum();
    s - gens[0] as i64 + 1
}

/// The generators are minimal and strongly increasing in the sense
/// `n_k beta_bar_k < beta_bar_{k+1}`.
pub fn check_generators(gens: &[u64]) -> std::result::Result<(), String> {
    let e = e_sequence(gens);
    let n = n_sequence(&e);
    if *e.last().unwrap() != 1 {
        return Err(format!("generators {gens:?} have gcd {}", e.last().unwrap()));
    }
    for k in 1..gens.len() {
        if n[k - 1] <= 1 {
            return Err(format!("n_{k} = {} is not > 1", n[k - 1]));
        }
        let inside = membership(&gens[..k], gens[k] as usize + 1);
        if inside[gens[k] as usize] {
            return Err(format!("beta_bar_{k} = {} is not minimal", gens[k]));
        }
        if k + 1 < gens.len() && n[k - 1] * gens[k] >= gens[k + 1] {
            return Err(format!("n_{k} beta_bar_{k} >= beta_bar_{}", k + 1));
        }
    }
    Ok(())
}
