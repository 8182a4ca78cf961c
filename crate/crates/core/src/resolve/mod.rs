//! Joint resolution of plane curve germs by point blowups.
//!
//! Every point carries the strict transforms of the germs through it and the
//! exceptional divisors passing through it (as the local axes `x = 0` and
//! `y = 0`). Branches are read off at the leaves, and their multiplicities
//! are recovered backwards along the path by the proximity equalities.

pub mod semigroup;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::upoly;
use crate::field::{roots_in_splitting_field, Elem, Embedding, FieldCtx};
use crate::poly::BivarPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    Origin,
    /// `y = x t`, centered at `t = c`.
    X,
    /// `x = s y`, centered at `s = 0`.
    Y,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfinitelyNearPoint {
    pub depth: usize,
    pub parent: Option<usize>,
    pub chart: Chart,
    pub center: String,
    /// Branch id to multiplicity of its strict transform.
    pub multiplicities: BTreeMap<usize, u32>,
    /// Germ index to multiplicity of its strict transform.
    pub germ_multiplicities: BTreeMap<usize, u32>,
    pub proximate_to: Vec<usize>,
}

impl InfinitelyNearPoint {
    pub fn is_satellite(&self) -> bool {
        self.proximate_to.len() > 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchData {
    pub id: usize,
    /// Index of the input germ containing this branch.
    pub germ: usize,
    pub mult_seq: Vec<u32>,
    pub gens: Vec<u64>,
    pub e: Vec<u64>,
    pub n_seq: Vec<u64>,
    pub n_star: u64,
    pub conductor: u64,
    pub delta_branch: u64,
    /// Points of the resolution the branch passes through, from the origin.
    pub path: Vec<usize>,
    /// Multiplicity at each point of `path`.
    pub path_mults: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionTree {
    pub ctx: FieldCtx,
    pub germs: usize,
    pub points: Vec<InfinitelyNearPoint>,
    pub branches: Vec<BranchData>,
    /// `i0` of branches `i < j`, by Noether's formula.
    pub pairwise: BTreeMap<(usize, usize), u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaConductor {
    pub delta: u64,
    pub r: u64,
    pub c: u64,
}

struct Node {
    id: usize,
    divisors: [Option<usize>; 2],
    polys: Vec<(usize, BivarPoly)>,
}

struct Builder {
    ctx: FieldCtx,
    centers: Vec<Elem>,
    points: Vec<InfinitelyNearPoint>,
    leaves: Vec<(usize, usize)>,
}

impl Builder {
    fn grow(&mut self, emb: &Embedding, stack: &mut [Node], current: &mut Node) {
        self.ctx = emb.target().clone();
        for c in &mut self.centers {
            *c = emb.apply(c);
        }
        for node in stack.iter_mut().chain(std::iter::once(current)) {
            for (_, p) in &mut node.polys {
                *p = p.embed(emb);
            }
        }
    }

    fn push_point(
        &mut self,
        parent: Option<usize>,
        chart: Chart,
        center: Elem,
        proximate_to: Vec<usize>,
    ) -> usize {
        let depth = parent.map_or(0, |p| self.points[p].depth + 1);
        self.points.push(InfinitelyNearPoint {
            depth,
            parent,
            chart,
            center: String::new(),
            multiplicities: BTreeMap::new(),
            germ_multiplicities: BTreeMap::new(),
            proximate_to,
        });
        self.centers.push(center);
        self.points.len() - 1
    }
}

fn is_leaf(node: &Node) -> bool {
    let [(_, f)] = node.polys.as_slice() else {
        return false;
    };
    if f.ord() != Some(1) {
        return false;
    }
    let k = f.ctx();
    let a = f.coeff((1, 0));
    let b = f.coeff((0, 1));
    (node.divisors[0].is_none() || !k.is_zero(&b)) && (node.divisors[1].is_none() || !k.is_zero(&a))
}

/// Resolves pairwise coprime reduced germs through the origin jointly.
pub fn resolve_germs(germs: &[BivarPoly]) -> Result<ResolutionTree> {
    let first = germs.first().ok_or(Error::ZeroInput)?;
    let mut total_degree = 0u64;
    for g in germs {
        if g.is_zero() {
            return Err(Error::ZeroInput);
        }
        if g.ord() == Some(0) {
            return Err(Error::NotThroughOrigin);
        }
        total_degree += g.total_degree().unwrap_or(0) as u64;
    }
    let guard = (4 * total_degree * total_degree) as usize;
    let mut b = Builder {
        ctx: first.ctx().clone(),
        centers: Vec::new(),
        points: Vec::new(),
        leaves: Vec::new(),
    };
    let origin = b.push_point(None, Chart::Origin, b.ctx.zero(), Vec::new());
    let mut stack = vec![Node {
        id: origin,
        divisors: [None, None],
        polys: germs.iter().cloned().enumerate().collect(),
    }];
    while let Some(mut node) = stack.pop() {
        for (g, f) in &node.polys {
            b.points[node.id]
                .germ_multiplicities
                .insert(*g, f.ord().expect("nonzero"));
        }
        if is_leaf(&node) {
            b.leaves.push((node.polys[0].0, node.id));
            continue;
        }
        if b.points[node.id].depth >= guard {
            return Err(Error::DepthExceeded(guard));
        }
        // tangent directions, enlarging the field until all of them are rational
        let tangents = 'field: loop {
            let mut out = Vec::with_capacity(node.polys.len());
            for (_, f) in &node.polys {
                let u = f.tangent_polynomial();
                if upoly::degree(&u).unwrap_or(0) == 0 {
                    out.push((u, Vec::new()));
                    continue;
                }
                let s = roots_in_splitting_field(&b.ctx, &u)?;
                if s.ctx != b.ctx {
                    b.grow(&s.embedding, &mut stack, &mut node);
                    continue 'field;
                }
                out.push((u, s.roots.into_iter().map(|(r, _)| r).collect::<Vec<_>>()));
            }
            break out;
        };
        let mut centers: Vec<Elem> = tangents.iter().flat_map(|(_, r)| r.clone()).collect();
        centers.sort();
        centers.dedup();
        let parent = node.id;
        let [d0, d1] = node.divisors;
        let mut children = Vec::new();
        for c in centers {
            let polys: Vec<(usize, BivarPoly)> = node
                .polys
                .iter()
                .zip(&tangents)
                .filter(|(_, (_, roots))| roots.contains(&c))
                .map(|((g, f), _)| (*g, f.blowup_chart_x().shift_y(&c)))
                .collect();
            let on_old = if b.ctx.is_zero(&c) { d1 } else { None };
            let prox = std::iter::once(parent).chain(on_old).collect();
            let id = b.push_point(Some(parent), Chart::X, c, prox);
            children.push(Node {
                id,
                divisors: [Some(parent), on_old],
                polys,
            });
        }
        let vertical: Vec<(usize, BivarPoly)> = node
            .polys
            .iter()
            .filter(|(_, f)| {
                let m = f.ord().unwrap();
                f.ctx().is_zero(&f.coeff((0, m)))
            })
            .map(|(g, f)| (*g, f.blowup_chart_y()))
            .collect();
        if !vertical.is_empty() {
            let prox = std::iter::once(parent).chain(d0).collect();
            let id = b.push_point(Some(parent), Chart::Y, b.ctx.zero(), prox);
            children.push(Node {
                id,
                divisors: [d0, Some(parent)],
                polys: vertical,
            });
        }
        stack.extend(children.into_iter().rev());
    }
    finish(b, germs.len())
}

fn finish(mut b: Builder, germs: usize) -> Result<ResolutionTree> {
    for (p, c) in b.points.iter_mut().zip(&b.centers) {
        p.center = b.ctx.show(c);
    }
    let mut branches = Vec::new();
    for (id, &(germ, leaf)) in b.leaves.iter().enumerate() {
        let mut path = vec![leaf];
        while let Some(p) = b.points[*path.last().unwrap()].parent {
            path.push(p);
        }
        path.reverse();
        let mut mults = vec![0u32; path.len()];
        *mults.last_mut().unwrap() = 1;
        for i in (0..path.len() - 1).rev() {
            mults[i] = (i + 1..path.len())
                .filter(|&j| b.points[path[j]].proximate_to.contains(&path[i]))
                .map(|j| mults[j])
                .sum();
        }
        for (&p, &m) in path.iter().zip(&mults) {
            b.points[p].multiplicities.insert(id, m);
        }
        branches.push(branch_semigroup(id, germ, &b.points, path, mults)?);
    }
    for (pid, p) in b.points.iter().enumerate() {
        for (&g, &m) in &p.germ_multiplicities {
            let sum: u32 = p
                .multiplicities
                .iter()
                .filter(|(br, _)| branches[**br].germ == g)
                .map(|(_, m)| m)
                .sum();
            if sum != m {
                return Err(Error::Internal(format!(
                    "point {pid}: germ {g} has multiplicity {m} but its branches sum to {sum}"
                )));
            }
        }
    }
    let mut pairwise = BTreeMap::new();
    for i in 0..branches.len() {
        for j in i + 1..branches.len() {
            pairwise.insert((i, j), noether(&branches[i], &branches[j]));
        }
    }
    Ok(ResolutionTree {
        ctx: b.ctx,
        germs,
        points: b.points,
        branches,
        pairwise,
    })
}

fn noether(a: &BranchData, b: &BranchData) -> u64 {
    a.path
        .iter()
        .zip(&b.path)
        .take_while(|(p, q)| p == q)
        .zip(a.path_mults.iter().zip(&b.path_mults))
        .map(|(_, (&ma, &mb))| ma as u64 * mb as u64)
        .sum()
}

/// Fills the semigroup data of a branch from its multiplicities along `path`.
pub fn branch_semigroup(
    id: usize,
    germ: usize,
    points: &[InfinitelyNearPoint],
    path: Vec<usize>,
    path_mults: Vec<u32>,
) -> Result<BranchData> {
    let last_satellite = path.iter().rposition(|&p| points[p].is_satellite());
    let mult_seq = match last_satellite {
        Some(i) => path_mults[..=i].to_vec(),
        None => vec![1],
    };
    let gens = semigroup::semigroup_from_multiplicities(&path_mults)?;
    let e = semigroup::e_sequence(&gens);
    let n_seq = semigroup::n_sequence(&e);
    let n_star = n_seq.iter().copied().max().unwrap_or(1);
    let conductor = semigroup::conductor_by_gaps(&gens);
    let delta_branch = path_mults
        .iter()
        .map(|&m| m as u64 * (m as u64).saturating_sub(1) / 2)
        .sum();
    Ok(BranchData {
        id,
        germ,
        mult_seq,
        gens,
        e,
        n_seq,
        n_star,
        conductor,
        delta_branch,
        path,
        path_mults,
    })
}

impl ResolutionTree {
    pub fn r(&self) -> usize {
        self.branches.len()
    }

    pub fn branches_of(&self, germ: usize) -> impl Iterator<Item = &BranchData> + '_ {
        self.branches.iter().filter(move |b| b.germ == germ)
    }

    pub fn pair(&self, i: usize, j: usize) -> u64 {
        self.pairwise[&(i.min(j), i.max(j))]
    }

    /// `delta` of the product of the given germs, from the point multiplicities.
    pub fn delta_of(&self, germs: &[usize]) -> u64 {
        self.points
            .iter()
            .map(|p| {
                let m: u64 = germs
                    .iter()
                    .map(|g| p.germ_multiplicities.get(g).copied().unwrap_or(0) as u64)
                    .sum();
                m * m.saturating_sub(1) / 2
            })
            .sum()
    }

    /// `i0(branch, germ)` by Noether's formula.
    pub fn branch_germ_intersection(&self, branch: usize, germ: usize) -> u64 {
        let b = &self.branches[branch];
        b.path
            .iter()
            .zip(&b.path_mults)
            .map(|(p, &m)| {
                m as u64 * self.points[*p].germ_multiplicities.get(&germ).copied().unwrap_or(0) as u64
            })
            .sum()
    }

    /// `i0(germ_a, germ_b)` by Noether's formula.
    pub fn germ_intersection(&self, a: usize, b: usize) -> u64 {
        self.points
            .iter()
            .map(|p| {
                let ma = p.germ_multiplicities.get(&a).copied().unwrap_or(0) as u64;
                let mb = p.germ_multiplicities.get(&b).copied().unwrap_or(0) as u64;
                ma * mb
            })
            .sum()
    }
}

/// Branches, multiplicity sequences and semigroups of a reduced germ.
pub fn branch_decompose(f: &BivarPoly) -> Result<ResolutionTree> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.ord() == Some(0) {
        return Err(Error::NotThroughOrigin);
    }
    if !f.reduced_test()?.reduced {
        return Err(Error::NotReduced);
    }
    resolve_germs(std::slice::from_ref(f))
}

/// `delta`, `r` and `c = 2 delta` of the product of all germs in the tree.
pub fn delta_and_conductor(tree: &ResolutionTree) -> DeltaConductor {
    let all: Vec<usize> = (0..tree.germs).collect();
    let delta = tree.delta_of(&all);
    DeltaConductor {
        delta,
        r: tree.r() as u64,
        c: 2 * delta,
    }
}

pub fn pairwise_intersections(tree: &ResolutionTree) -> &BTreeMap<(usize, usize), u64> {
    &tree.pairwise
}
