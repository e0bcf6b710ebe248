//! Vertex-subset recurrence for hypergraphs.
//!
//! For `|E(X)| ≥ 2`, `bw(E(X)) ≤ k` iff there are proper subsets `X1, X2` of
//! `X` with `X1 ∪ X2 = X`, `bw(E(Xi)) ≤ k`, `X1 ∩ X2 ⊆ ∂(X1) ∩ ∂(X2)` and
//! `|∂(X) ∪ V(F⁺(X1, X2))| ≤ k`. The table holds one bit per vertex subset.
//!
//! [`Mode::Closed`] evaluates only sets `X` with `X = V(E(X))` and
//! `|∂(X)| ≤ k`, and only closed `X1, X2`; other sets are answered through
//! their closure. [`Mode::AllSubsets`] evaluates every subset as written.

use crate::bits::{submasks, Bits, EdgeSet, VertexSet};
use crate::decomposition::BranchDecomposition;
use crate::error::{BwError, Deadline, Result};
use crate::graph::Hypergraph;
use crate::preprocess::lower_bound;

/// Largest vertex count accepted (the table has `2^n` bits).
pub const HYPER_VERTEX_LIMIT: usize = 30;

/// Which subsets the table covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Closed sets with boundary at most `k`.
    #[default]
    Closed,
    /// Every vertex subset.
    AllSubsets,
}

/// Feasibility bits for one `k`.
#[derive(Debug, Clone)]
pub struct FeasibleTable {
    k: usize,
    n: usize,
    mode: Mode,
    bits: Vec<u64>,
}

impl FeasibleTable {
    fn new(n: usize, k: usize, mode: Mode) -> Self {
        FeasibleTable { k, n, mode, bits: vec![0; (1usize << n).div_ceil(64)] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    #[inline]
    fn get(&self, x: u64) -> bool {
        self.bits[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, x: u64) {
        self.bits[(x >> 6) as usize] |= 1 << (x & 63);
    }

    /// Number of sets marked feasible.
    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Hypergraph as `u64` masks.
struct Ctx {
    n: usize,
    edges: Vec<u64>,
    adj: Vec<u64>,
    incident: Vec<Vec<u64>>,
    leaf_order: Vec<usize>,
    graph: bool,
}

impl Ctx {
    fn new<const W: usize>(h: &Hypergraph<W>) -> Result<Self> {
        if h.n() > HYPER_VERTEX_LIMIT {
            return Err(BwError::TooLarge { what: "vertex-subset table", size: h.n(), limit: HYPER_VERTEX_LIMIT });
        }
        let edges: Vec<u64> = h.edges().iter().map(|e| e.0[0]).collect();
        let adj = (0..h.n()).map(|v| h.neighbors(v).0[0]).collect();
        let incident = (0..h.n()).map(|v| h.incidence(v).ones().map(|i| edges[i]).collect()).collect();
        let leaf_order = (0..h.m()).map(|i| h.leaf_order(i)).collect();
        Ok(Ctx { n: h.n(), edges, adj, incident, leaf_order, graph: h.is_graph() })
    }

    #[inline]
    fn boundary(&self, x: u64) -> u64 {
        let mut b = 0;
        let mut rest = x;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adj[v] & !x != 0 {
                b |= 1 << v;
            }
        }
        b
    }

    fn is_closed(&self, x: u64) -> bool {
        let mut rest = x;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !self.incident[v].iter().any(|&e| e & !x == 0) {
                return false;
            }
        }
        true
    }

    /// `V(E(X))`.
    fn closure(&self, x: u64) -> u64 {
        self.edges.iter().filter(|&&e| e & !x == 0).fold(0, |acc, &e| acc | e)
    }

    /// Up to two edges inside `X`.
    fn edges_within(&self, x: u64) -> (usize, Option<usize>) {
        let mut count = 0;
        let mut first = None;
        for (i, &e) in self.edges.iter().enumerate() {
            if e & !x == 0 {
                count += 1;
                first.get_or_insert(i);
                if count == 2 {
                    break;
                }
            }
        }
        (count, first)
    }

    #[inline]
    fn touches(&self, from: u64, to: u64) -> u64 {
        let mut out = 0;
        let mut rest = from;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adj[v] & to != 0 {
                out |= 1 << v;
            }
        }
        out
    }

    /// `V(F⁺(X1, X2))`.
    #[inline]
    fn fplus_support(&self, x1: u64, x2: u64) -> u64 {
        if self.graph {
            let a = x1 & !x2;
            let b = x2 & !x1;
            self.touches(a, b) | self.touches(b, a)
        } else {
            let x = x1 | x2;
            self.edges.iter().filter(|&&e| e & !x == 0 && e & !x1 != 0 && e & !x2 != 0).fold(0, |acc, &e| acc | e)
        }
    }

    fn fplus_edges(&self, x1: u64, x2: u64) -> Vec<usize> {
        let x = x1 | x2;
        (0..self.edges.len())
            .filter(|&i| {
                let e = self.edges[i];
                e & !x == 0 && e & !x1 != 0 && e & !x2 != 0
            })
            .collect()
    }

    fn within(&self, x: u64) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i] & !x == 0).collect()
    }

    /// Searches for a split of `X` using the feasibility bits in `table`.
    fn witness(&self, x: u64, k: usize, table: &FeasibleTable) -> Option<(u64, u64)> {
        let bx = self.boundary(x);
        if bx.count_ones() as usize > k {
            return None;
        }
        let low = x & x.wrapping_neg();
        let rest = x ^ low;
        for sub in submasks(rest) {
            if sub == rest {
                break;
            }
            let x1 = low | sub;
            if !table.get(x1) {
                continue;
            }
            let only2 = x ^ x1;
            let b1 = self.boundary(x1);
            for t in submasks(x1 & b1) {
                let x2 = only2 | t;
                if x2 == x || !table.get(x2) {
                    continue;
                }
                // Shared vertices must also lie on the boundary of X2.
                if self.touches(t, !x2 & ((1u64 << self.n) - 1)) != t {
                    continue;
                }
                if ((bx | self.fplus_support(x1, x2)).count_ones() as usize) <= k {
                    return Some((x1, x2));
                }
            }
        }
        None
    }
}

fn to_mask<const W: usize>(x: VertexSet<W>) -> u64 {
    x.to_u64()
}

fn from_mask<const W: usize>(x: u64) -> VertexSet<W> {
    Bits::from_u64(x)
}

/// Base case for `|E(X)| ≤ 1`: the empty set is feasible; a single edge `e`
/// is feasible iff `|e ∩ V(E ∖ {e})| ≤ k`.
pub fn base_feasible<const W: usize>(h: &Hypergraph<W>, x: VertexSet<W>, k: usize) -> Result<bool> {
    let inside: Vec<usize> = h.edges_within(x).ones().collect();
    match inside.as_slice() {
        [] => Ok(true),
        [e] => Ok(h.leaf_order(*e) <= k),
        _ => Err(BwError::InvalidInput(format!("base case needs at most one edge inside X, found {}", inside.len()))),
    }
}

/// Evaluates the recurrence for `X` against a table that already decides
/// every proper subset of `X`. Returns the split found, if any.
pub fn recurrence_feasible<const W: usize>(
    h: &Hypergraph<W>,
    x: VertexSet<W>,
    k: usize,
    table: &FeasibleTable,
) -> Result<Option<(VertexSet<W>, VertexSet<W>)>> {
    let ctx = Ctx::new(h)?;
    Ok(ctx.witness(to_mask(x), k, table).map(|(a, b)| (from_mask(a), from_mask(b))))
}

/// Solver options.
#[derive(Debug, Clone, Copy, Default)]
pub struct HyperOptions {
    pub mode: Mode,
    pub deadline: Deadline,
}

fn fill(ctx: &Ctx, table: &mut FeasibleTable, deadline: Deadline) -> Result<()> {
    let k = table.k;
    let top: u64 = (1u64 << ctx.n) - 1;
    for x in 1..=top {
        if x & 0xfff == 0 {
            deadline.check()?;
        }
        if table.get(x) {
            continue;
        }
        let ok = match table.mode {
            Mode::Closed => {
                if !ctx.is_closed(x) || ctx.boundary(x).count_ones() as usize > k {
                    continue;
                }
                match ctx.edges_within(x) {
                    (1, Some(e)) => ctx.leaf_order[e] <= k,
                    _ => ctx.witness(x, k, table).is_some(),
                }
            }
            Mode::AllSubsets => match ctx.edges_within(x) {
                (0, _) => true,
                (1, Some(e)) => ctx.leaf_order[e] <= k,
                _ => ctx.witness(x, k, table).is_some(),
            },
        };
        if ok {
            table.set(x);
        }
    }
    Ok(())
}

/// Fills the table for `k`, reusing `warm` (a table for a smaller `k` in the
/// same mode) when given.
pub fn decide_with<const W: usize>(h: &Hypergraph<W>, k: usize, opts: HyperOptions, warm: Option<&FeasibleTable>) -> Result<FeasibleTable> {
    let ctx = Ctx::new(h)?;
    let mut table = FeasibleTable::new(ctx.n, k, opts.mode);
    if let Some(w) = warm {
        assert!(w.mode == opts.mode && w.n == ctx.n && w.k <= k, "warm start table does not fit");
        table.bits.copy_from_slice(&w.bits);
    }
    fill(&ctx, &mut table, opts.deadline)?;
    Ok(table)
}

/// Table for `k` in closed mode.
pub fn decide<const W: usize>(h: &Hypergraph<W>, k: usize) -> Result<FeasibleTable> {
    decide_with(h, k, HyperOptions::default(), None)
}

/// `bw(E(X)) ≤ table.k()`. The empty set is feasible.
pub fn is_feasible<const W: usize>(h: &Hypergraph<W>, table: &FeasibleTable, x: VertexSet<W>) -> bool {
    let x = to_mask(x);
    match table.mode {
        Mode::AllSubsets => table.get(x),
        Mode::Closed => {
            let edges: Vec<u64> = h.edges().iter().map(|e| e.0[0]).collect();
            let c = edges.iter().filter(|&&e| e & !x == 0).fold(0, |acc, &e| acc | e);
            c == 0 || table.get(c)
        }
    }
}

/// `bw(H) ≤ table.k()`.
pub fn accepts<const W: usize>(h: &Hypergraph<W>, table: &FeasibleTable) -> bool {
    is_feasible(h, table, h.vertices())
}

/// Smallest `k` accepted, starting at the largest leaf order.
pub fn branchwidth_with<const W: usize>(h: &Hypergraph<W>, opts: HyperOptions) -> Result<(usize, FeasibleTable)> {
    let mut k = lower_bound(h);
    let mut table: Option<FeasibleTable> = None;
    loop {
        let t = decide_with(h, k, opts, table.as_ref())?;
        if accepts(h, &t) {
            return Ok((k, t));
        }
        table = Some(t);
        k += 1;
    }
}

/// [`branchwidth_with`] in closed mode without a time limit.
pub fn branchwidth<const W: usize>(h: &Hypergraph<W>) -> Result<(usize, FeasibleTable)> {
    branchwidth_with(h, HyperOptions::default())
}

/// Decomposition of `E(H)` of width at most `table.k()`. Splits are
/// recomputed from the table during the descent.
pub fn reconstruct<const W: usize>(h: &Hypergraph<W>, table: &FeasibleTable) -> Result<BranchDecomposition> {
    let ctx = Ctx::new(h)?;
    let top = ctx.closure((1u64 << ctx.n) - 1);
    if top != 0 && !table.get(top) {
        return Err(BwError::Invariant("reconstruction requested for an infeasible table".into()));
    }
    let t = rebuild(&ctx, h.m(), table, top)?;
    Ok(t.make_injective())
}

fn rebuild(ctx: &Ctx, m: usize, table: &FeasibleTable, x: u64) -> Result<BranchDecomposition> {
    let inside = ctx.within(x);
    if inside.len() <= 1 {
        return Ok(BranchDecomposition::caterpillar(m, &inside));
    }
    let (x1, x2) = ctx.witness(x, table.k, table).ok_or_else(|| BwError::Invariant(format!("no split recorded for vertex set {x:#x}")))?;
    let t = rebuild(ctx, m, table, x1)?.compose(rebuild(ctx, m, table, x2)?).make_injective();
    Ok(t.compose(BranchDecomposition::caterpillar(m, &ctx.fplus_edges(x1, x2))))
}

/// `E(X)` for a mask, exposed for tests.
pub fn edges_of_mask<const W: usize>(h: &Hypergraph<W>, x: u64) -> EdgeSet {
    h.edges_within(from_mask(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_branchwidth;

    type H = Hypergraph<1>;

    fn graph(n: usize, pairs: &[(usize, usize)]) -> H {
        H::from_edge_lists(n, &pairs.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>()).unwrap()
    }

    fn k3() -> H {
        graph(3, &[(0, 1), (1, 2), (0, 2)])
    }

    fn petersen() -> H {
        graph(10, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)])
    }

    #[test]
    fn base_examples() {
        let h = k3();
        assert!(base_feasible(&h, Bits::EMPTY, 0).unwrap());
        assert!(!base_feasible(&h, Bits::from_indices([0, 1]), 1).unwrap());
        assert!(base_feasible(&h, Bits::from_indices([0, 1]), 2).unwrap());
        assert!(base_feasible(&h, h.vertices(), 5).is_err());
    }

    #[test]
    fn recurrence_examples() {
        let h = k3();
        let t2 = decide(&h, 2).unwrap();
        let (x1, x2) = recurrence_feasible(&h, h.vertices(), 2, &t2).unwrap().expect("split");
        assert_eq!((x1 | x2), h.vertices());
        assert!(x1 != h.vertices() && x2 != h.vertices());
        let t1 = decide(&h, 1).unwrap();
        assert!(recurrence_feasible(&h, h.vertices(), 1, &t1).unwrap().is_none());
    }

    #[test]
    fn decide_examples() {
        assert!(accepts(&k3(), &decide(&k3(), 2).unwrap()));
        assert!(!accepts(&k3(), &decide(&k3(), 1).unwrap()));
        let p = petersen();
        assert!(accepts(&p, &decide(&p, 4).unwrap()));
        assert!(!accepts(&p, &decide(&p, 3).unwrap()));
        assert!(is_feasible(&p, &decide(&p, 0).unwrap(), Bits::singleton(3)));
    }

    #[test]
    fn branchwidth_examples() {
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(branchwidth(&k4).unwrap().0, 3);
        assert_eq!(branchwidth(&petersen()).unwrap().0, 4);
        let one = graph(2, &[(0, 1)]);
        assert_eq!(branchwidth(&one).unwrap().0, 0);
    }

    #[test]
    fn reconstruct_examples() {
        for h in [k3(), petersen()] {
            let (k, table) = branchwidth(&h).unwrap();
            let t = reconstruct(&h, &table).unwrap();
            assert_eq!(t.validate(&h, k), Ok(k));
            assert!(t.is_injective());
        }
        let one = graph(2, &[(0, 1)]);
        let (_, table) = branchwidth(&one).unwrap();
        assert_eq!(reconstruct(&one, &table).unwrap().num_nodes(), 1);
    }

    #[test]
    fn modes_agree_on_hypergraph() {
        let h = H::from_edge_lists(5, &[vec![0, 1, 2], vec![1, 3], vec![2, 3, 4], vec![0, 4], vec![0, 3]]).unwrap();
        let oracle = oracle_branchwidth(&h).unwrap();
        let (closed, _) = branchwidth(&h).unwrap();
        let (all, _) = branchwidth_with(&h, HyperOptions { mode: Mode::AllSubsets, ..Default::default() }).unwrap();
        assert_eq!((closed, all), (oracle, oracle));
    }
}
