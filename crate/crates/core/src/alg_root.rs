//! Branchwidth of graphs through root derivations.
//!
//! An edge set `F` is small when its core has at most as many vertices as
//! lie outside `V(F)`. For a separator `S`, the parts are the closures of the
//! components of `G[V ∖ S]`. `bw(G) ≤ k` iff some `S` with `|S| ≤ ⌊3k/2⌋`
//! has only small parts, each of branchwidth at most `k`, and admits three
//! sets `M1, M2, M3 ⊆ S` of size at most `k` covering every vertex of `S` at
//! least twice, together with a tripartition of the parts whose boundaries
//! fall in the matching `Mi`.
//!
//! Only small blocks are ever certified, which keeps the block table far
//! smaller than in [`crate::alg_blocks`].

use crate::alg_blocks::{build_block, check_input, with_large_stack, BlockSolver, BlocksOptions};
use crate::bits::EdgeSet;
use crate::blocks::{extend_bicover, list_blocks_raw, pop, raw, wrap, NbLimit, Set, G64};
use crate::decomposition::BranchDecomposition;
use crate::error::{BwError, Result};
use crate::graph::Hypergraph;
use crate::hyper_dp;
use crate::preprocess::{lower_bound, normalize};

/// How the order of a root derivation is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootRoute {
    /// Tripartitions when there are at most `2|S|` parts, otherwise `Q(S)`.
    #[default]
    Auto,
    /// Backtracking over tripartitions of the parts.
    Tripartition,
    /// Branchwidth of the hypergraph `Q(S)` on `S`.
    HyperQ,
}

/// Solver settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct RootOptions {
    /// Settings for certifying small blocks.
    pub blocks: BlocksOptions,
    pub route: RootRoute,
}

/// Separator with the closures of the components of `G[V ∖ S]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDerivation {
    pub separator: Set,
    pub parts: Vec<Set>,
}

/// True iff `|κ(F)| ≤ |V ∖ V(F)|`.
pub fn is_small<const W: usize>(h: &Hypergraph<W>, f: &EdgeSet) -> bool {
    h.edge_core(f).len() + h.vertices_of(f).len() <= h.n()
}

#[inline]
fn block_is_small(g: &G64, a: u64) -> bool {
    2 * pop(g.core(a)) + pop(a & !g.core(a)) <= g.n
}

/// Root derivation of `S`, or `None` when `G[V ∖ S]` is empty.
pub fn root_derivation(g: &Hypergraph<1>, s: Set) -> Option<RootDerivation> {
    let rest = g.vertices() - s;
    if rest.is_empty() {
        return None;
    }
    let parts: Vec<Set> = g.connected_components(rest).into_iter().map(|c| g.vertex_closure(c)).collect();
    Some(RootDerivation { separator: s, parts })
}

/// `Q(S)`: `G[S]` plus one hyperedge `∂(A)` per part with nonempty
/// boundary. Returns the hypergraph and the input vertex of each local vertex.
pub fn build_q(g: &Hypergraph<1>, d: &RootDerivation) -> Result<(Hypergraph<1>, Vec<usize>)> {
    let (q, map, _) = build_q_raw(raw(d.separator), &g.edges().iter().map(|&e| raw(e)).collect::<Vec<_>>(), &boundaries(g, d))?;
    Ok((q, map))
}

fn boundaries(g: &Hypergraph<1>, d: &RootDerivation) -> Vec<u64> {
    d.parts.iter().map(|&a| raw(g.vertex_boundary(a))).collect()
}

/// Origin of an edge of `Q(S)`.
#[derive(Debug, Clone, Copy)]
enum QEdge {
    Graph(usize),
    Part(usize),
}

fn build_q_raw(s: u64, edges: &[u64], bds: &[u64]) -> Result<(Hypergraph<1>, Vec<usize>, Vec<QEdge>)> {
    let map: Vec<usize> = (0..64).filter(|&v| s >> v & 1 == 1).collect();
    let local = |x: u64| -> Set { Set::from_indices(map.iter().enumerate().filter(|&(_, &v)| x >> v & 1 == 1).map(|(i, _)| i)) };
    let mut qe = Vec::new();
    let mut origin = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        if e & !s == 0 {
            qe.push(local(e));
            origin.push(QEdge::Graph(i));
        }
    }
    for (i, &bd) in bds.iter().enumerate() {
        if bd != 0 {
            qe.push(local(bd));
            origin.push(QEdge::Part(i));
        }
    }
    Ok((Hypergraph::new(map.len(), qe)?, map, origin))
}

/// Feasibility of a partial tripartition with boundary unions `d`.
fn tri_conditions(s: u64, k: usize, d: [u64; 3]) -> Option<(u64, usize)> {
    let i = d[0] & d[1] & d[2];
    let ki = k.checked_sub(pop(i))?;
    let rest = s & !i;
    let seeds = [d[0] & !i, d[1] & !i, d[2] & !i];
    let size = pop(rest);
    let ok = 2 * size <= 3 * ki
        && seeds.iter().all(|&x| pop(x) <= ki)
        && [(0, 1), (1, 2), (0, 2)].iter().all(|&(a, b)| pop(seeds[a] & seeds[b]) + size <= 2 * ki);
    ok.then_some((i, ki))
}

/// Labels in `0..3` for each part and a conforming triple, or `None`.
fn tri_search(s: u64, bds: &[u64], k: usize) -> Option<(Vec<u8>, [u64; 3])> {
    if pop(s) <= k {
        return Some((vec![0; bds.len()], [s, s, 0]));
    }
    if 2 * pop(s) > 3 * k {
        return None;
    }
    let mut order: Vec<usize> = (0..bds.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(pop(bds[i])));
    let mut labels = vec![0u8; bds.len()];
    tri_rec(s, bds, k, &order, 0, 0, [0; 3], &mut labels).map(|t| (labels, t))
}

#[allow(clippy::too_many_arguments)]
fn tri_rec(s: u64, bds: &[u64], k: usize, order: &[usize], depth: usize, used: u8, d: [u64; 3], labels: &mut [u8]) -> Option<[u64; 3]> {
    let (i, ki) = tri_conditions(s, k, d)?;
    if depth == order.len() {
        let r = extend_bicover(s & !i, ki, [d[0] & !i, d[1] & !i, d[2] & !i])?;
        return Some([r[0] | i, r[1] | i, r[2] | i]);
    }
    let p = order[depth];
    // Labels are symmetric, so a new label is only opened in order.
    for side in 0..=used.min(2) {
        let mut nd = d;
        nd[side as usize] |= bds[p];
        labels[p] = side;
        let next_used = if side == used { used + 1 } else { used };
        if let Some(t) = tri_rec(s, bds, k, order, depth + 1, next_used, nd, labels) {
            return Some(t);
        }
    }
    None
}

/// `bw(Q) ≤ k` through normalization and the hypergraph solver.
fn q_accepts(q: &Hypergraph<1>, k: usize, opts: &BlocksOptions) -> Result<bool> {
    let norm = normalize(q);
    if norm.trace.floor > k {
        return Ok(false);
    }
    let hopts = hyper_dp::HyperOptions { deadline: opts.deadline, ..Default::default() };
    for c in &norm.components {
        if !hyper_dp::accepts(&c.graph, &hyper_dp::decide_with(&c.graph, k, hopts, None)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decomposition of `E(Q)` of width at most `k`, or `None`.
fn q_decomposition(q: &Hypergraph<1>, k: usize, opts: &BlocksOptions) -> Result<Option<BranchDecomposition>> {
    let norm = normalize(q);
    if norm.trace.floor > k {
        return Ok(None);
    }
    let hopts = hyper_dp::HyperOptions { deadline: opts.deadline, ..Default::default() };
    let mut parts = Vec::new();
    for c in &norm.components {
        let table = hyper_dp::decide_with(&c.graph, k, hopts, None)?;
        if !hyper_dp::accepts(&c.graph, &table) {
            return Ok(None);
        }
        parts.push(hyper_dp::reconstruct(&c.graph, &table)?);
    }
    Ok(Some(norm.lift(parts)))
}

fn root_order_raw(g: &G64, s: u64, bds: &[u64], k: usize, route: RootRoute, opts: &BlocksOptions) -> Result<bool> {
    let use_q = match route {
        RootRoute::Auto => bds.len() > 2 * pop(s),
        RootRoute::Tripartition => false,
        RootRoute::HyperQ => true,
    };
    if !use_q {
        return Ok(tri_search(s, bds, k).is_some());
    }
    if 2 * pop(s) > 3 * k {
        return Ok(false);
    }
    let (q, _, _) = build_q_raw(s, &g.edges, bds)?;
    q_accepts(&q, k, opts)
}

/// Whether the root derivation has order at most `k`.
pub fn root_order_leq(g: &Hypergraph<1>, d: &RootDerivation, k: usize) -> Result<bool> {
    root_order_leq_with(g, d, k, RootRoute::Auto)
}

/// [`root_order_leq`] through a fixed route.
pub fn root_order_leq_with(g: &Hypergraph<1>, d: &RootDerivation, k: usize, route: RootRoute) -> Result<bool> {
    let g64 = G64::new(g, "root order")?;
    root_order_raw(&g64, raw(d.separator), &boundaries(g, d), k, route, &BlocksOptions::default())
}

/// Small blocks with boundary at most `k` and branchwidth at most `k`.
pub fn small_feasible_blocks(g: &Hypergraph<1>, k: usize, opts: BlocksOptions) -> Result<Vec<Set>> {
    let g64 = check_input(g, "root")?;
    with_large_stack(|| {
        let mut solver = BlockSolver::new(&g64, &opts);
        solver.set_k(k);
        let mut out = Vec::new();
        for b in list_blocks_raw(&g64, k) {
            if block_is_small(&g64, b) && solver.certify(b)? {
                out.push(wrap(b));
            }
        }
        Ok(out)
    })
}

struct RootSolver<'g> {
    blocks: BlockSolver<'g>,
    route: RootRoute,
    opts: BlocksOptions,
}

/// Separator and parts of an accepted root derivation.
type Found = (u64, Vec<u64>);

impl<'g> RootSolver<'g> {
    fn decide(&mut self, k: usize) -> Result<Option<Found>> {
        self.blocks.set_k(k);
        let mut parts = Vec::new();
        self.search(0, self.blocks.g.full(), &mut parts)
    }

    /// Same split as block certification, starting from all of `V` with an
    /// empty separator and admitting only small parts.
    fn search(&mut self, s: u64, u: u64, parts: &mut Vec<u64>) -> Result<Option<Found>> {
        self.blocks.poll()?;
        let g = self.blocks.g;
        let k = self.blocks.k;
        let cap = 3 * k / 2;
        let bds: Vec<u64> = parts.iter().map(|&a| a & !g.core(a)).collect();
        if u == 0 {
            let ok = root_order_raw(g, s, &bds, k, self.route, &self.opts)?;
            return Ok(ok.then(|| (s, parts.clone())));
        }
        // Restricting a conforming triple of a completion gives one of the
        // partial derivation, so infeasible partial states are pruned.
        if self.route != RootRoute::HyperQ && pop(s) > k && tri_search(s, &bds, k).is_none() {
            return Ok(None);
        }
        let v = u.trailing_zeros() as usize;
        let limit = NbLimit { size: pop(u).min(g.n / 2), total: k, fresh: cap - pop(s) };
        let mut candidates = Vec::new();
        g.for_each_connected(v, u, s, limit, &mut |c, nc| {
            candidates.push((c, nc));
            true
        });
        candidates.sort_by_key(|&(c, _)| std::cmp::Reverse(pop(c)));
        for (c, nc) in candidates {
            let a = c | nc;
            if g.core(a) != c || !block_is_small(g, a) || !self.blocks.certify(a)? {
                continue;
            }
            parts.push(a);
            let found = self.search(s | nc, u & !a, parts)?;
            parts.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        if pop(s) < cap {
            let bit = 1u64 << v;
            return self.search(s | bit, u & !bit, parts);
        }
        Ok(None)
    }

    /// Decomposition from an accepted root derivation.
    fn build(&self, found: &Found) -> Result<BranchDecomposition> {
        let g = self.blocks.g;
        let k = self.blocks.k;
        let m = g.edges.len();
        let (s, parts) = found;
        let bds: Vec<u64> = parts.iter().map(|&a| a & !g.core(a)).collect();
        let part_tree = |a: u64| build_block(g, m, k, &self.blocks.certified, a);
        if let Some((labels, triple)) = tri_search(*s, &bds, k) {
            let mut sides: [Vec<BranchDecomposition>; 3] = Default::default();
            for (&a, &l) in parts.iter().zip(&labels) {
                sides[l as usize].push(part_tree(a)?);
            }
            let mut t = BranchDecomposition::empty(m);
            for (side, mi) in sides.into_iter().zip(triple) {
                let chain = BranchDecomposition::compose_all(m, side);
                t = t.compose(chain.compose(BranchDecomposition::caterpillar(m, &g.edges_within(mi))));
            }
            return Ok(t.make_injective());
        }
        // Accepted through Q(S): expand each part hyperedge into its block.
        let (q, _, origin) = build_q_raw(*s, &g.edges, &bds)?;
        let tq = q_decomposition(&q, k, &self.opts)?
            .ok_or_else(|| BwError::Invariant("accepted root derivation has no decomposition".into()))?;
        let mut failure = None;
        let t = tq.substitute_leaves(m, |e| match origin[e] {
            QEdge::Graph(i) => BranchDecomposition::leaf(m, i),
            QEdge::Part(j) => part_tree(parts[j]).unwrap_or_else(|err| {
                failure = Some(err);
                BranchDecomposition::empty(m)
            }),
        });
        match failure {
            Some(err) => Err(err),
            None => Ok(t.make_injective()),
        }
    }
}

fn single_edge(g: &Hypergraph<1>) -> Option<BranchDecomposition> {
    (g.m() == 1).then(|| BranchDecomposition::leaf(1, 0))
}

/// Whether `bw(G) ≤ k`.
pub fn decide_root(g: &Hypergraph<1>, k: usize, opts: RootOptions) -> Result<bool> {
    let g64 = check_input(g, "root")?;
    if single_edge(g).is_some() {
        return Ok(g.leaf_order(0) <= k);
    }
    with_large_stack(|| {
        let mut solver = RootSolver { blocks: BlockSolver::new(&g64, &opts.blocks), route: opts.route, opts: opts.blocks };
        Ok(solver.decide(k)?.is_some())
    })
}

/// Branchwidth and an optimal decomposition, trying `k` upward from the
/// largest leaf order and keeping small-block certificates between rounds.
pub fn branchwidth_root(g: &Hypergraph<1>, opts: RootOptions) -> Result<(usize, BranchDecomposition)> {
    let g64 = check_input(g, "root")?;
    if let Some(t) = single_edge(g) {
        return Ok((g.leaf_order(0), t));
    }
    with_large_stack(|| {
        let mut solver = RootSolver { blocks: BlockSolver::new(&g64, &opts.blocks), route: opts.route, opts: opts.blocks };
        let mut k = lower_bound(g);
        loop {
            if let Some(found) = solver.decide(k)? {
                return Ok((k, solver.build(&found)?));
            }
            k += 1;
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, pairs: &[(usize, usize)]) -> Hypergraph<1> {
        Hypergraph::from_edge_lists(n, &pairs.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>()).unwrap()
    }

    fn s(xs: &[usize]) -> Set {
        Set::from_indices(xs.iter().copied())
    }

    #[test]
    fn small_examples() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut f = EdgeSet::with_capacity(3);
        f.insert(0);
        assert!(is_small(&p4, &f));
        f.insert(1);
        f.insert(2);
        assert!(!is_small(&p4, &f));
    }

    #[test]
    fn q_of_path() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let d = root_derivation(&p4, s(&[1, 2])).unwrap();
        let (q, map) = build_q(&p4, &d).unwrap();
        assert_eq!(map, vec![1, 2]);
        let mut edges: Vec<Vec<usize>> = q.edges().iter().map(|e| e.iter().collect()).collect();
        edges.sort();
        assert_eq!(edges, vec![vec![0], vec![0, 1], vec![1]]);
    }

    #[test]
    fn solves_small_graphs() {
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let c6 = graph(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>());
        for route in [RootRoute::Auto, RootRoute::Tripartition, RootRoute::HyperQ] {
            let opts = RootOptions { route, ..Default::default() };
            for (g, want) in [(&k4, 3), (&c6, 2)] {
                let (k, t) = branchwidth_root(g, opts).unwrap();
                assert_eq!(k, want, "{route:?}");
                assert!(t.validate(g, k).is_ok());
                assert!(decide_root(g, k, opts).unwrap());
                assert!(!decide_root(g, k - 1, opts).unwrap());
            }
        }
    }

    #[test]
    fn single_edge_graph() {
        let g = graph(2, &[(0, 1)]);
        assert_eq!(branchwidth_root(&g, RootOptions::default()).unwrap().0, 0);
    }
}
