//! Branchwidth of graphs by certifying blocks bottom-up.
//!
//! A block `B` is certified at `k` when `bw(E(B)) ≤ k`. That holds iff `B`
//! has a block derivation of order at most `k` whose parts are certified.
//! Parts have strictly smaller cores, so certification is well founded.
//!
//! The default mode certifies lazily: it starts from `V(G)` and certifies a
//! part only when a candidate derivation needs it, memoizing results. The
//! stratified mode lists every block with boundary at most `k` and processes
//! them in order of core size.

use std::collections::{HashMap, HashSet};

use crate::blocks::{find_triple, list_blocks_raw, pop, raw, wrap, NbLimit, OrderInput, OrderStrategy, Set, G64};
use crate::decomposition::BranchDecomposition;
use crate::error::{BwError, Deadline, Result};
use crate::graph::Hypergraph;
use crate::preprocess::lower_bound;

/// Order in which blocks are certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlocksMode {
    /// Top-down from `V(G)` with memoization.
    #[default]
    Lazy,
    /// All blocks of boundary at most `k`, by increasing core size.
    Stratified,
}

/// Solver settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct BlocksOptions {
    pub mode: BlocksMode,
    pub strategy: OrderStrategy,
    pub deadline: Deadline,
}

/// Why a block is certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Witness {
    /// At most one edge inside.
    Base,
    /// Parts of a derivation of order at most `k`.
    Derived(Vec<u64>),
}

/// Certified blocks for one `k`.
#[derive(Debug, Clone)]
pub struct BlockFeasibility {
    k: usize,
    pub(crate) certified: HashMap<u64, Witness>,
}

impl BlockFeasibility {
    pub fn k(&self) -> usize {
        self.k
    }

    /// True iff `b` was certified.
    pub fn contains(&self, b: Set) -> bool {
        self.certified.contains_key(&raw(b))
    }

    pub fn len(&self) -> usize {
        self.certified.len()
    }

    pub fn is_empty(&self) -> bool {
        self.certified.is_empty()
    }

    /// Certified blocks grouped by core size; entry `i` holds cores of size `i`.
    pub fn strata(&self, g: &Hypergraph<1>) -> Vec<Vec<Set>> {
        let mut out: Vec<Vec<Set>> = Vec::new();
        for &b in self.certified.keys() {
            let c = g.core(wrap(b)).len();
            if out.len() <= c {
                out.resize(c + 1, Vec::new());
            }
            out[c].push(wrap(b));
        }
        for s in &mut out {
            s.sort();
        }
        out
    }
}

/// Runs `f` on a thread with a large stack; certification recurses through
/// nested blocks.
pub(crate) fn with_large_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(1 << 29)
            .spawn_scoped(scope, f)
            .expect("spawn solver thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

/// Connected graph on at least one edge with no isolated vertex.
pub(crate) fn check_input(g: &Hypergraph<1>, alg: &'static str) -> Result<G64> {
    let g64 = G64::new(g, alg)?;
    if g.m() == 0 || (0..g.n()).any(|v| g.degree(v) == 0) || !g.is_connected(g.vertices()) {
        return Err(BwError::InvalidInput(format!("{alg} needs a connected graph with edges and no isolated vertex")));
    }
    Ok(g64)
}

pub(crate) struct BlockSolver<'g> {
    pub g: &'g G64,
    pub k: usize,
    cap: usize,
    strategy: OrderStrategy,
    mode: BlocksMode,
    deadline: Deadline,
    pub certified: HashMap<u64, Witness>,
    failed: HashSet<u64>,
    polls: u32,
}

impl<'g> BlockSolver<'g> {
    pub fn new(g: &'g G64, opts: &BlocksOptions) -> Self {
        BlockSolver {
            g,
            k: 0,
            cap: 0,
            strategy: opts.strategy,
            mode: opts.mode,
            deadline: opts.deadline,
            certified: HashMap::new(),
            failed: HashSet::new(),
            polls: 0,
        }
    }

    /// Moves to a new `k`. Certificates stay valid for larger `k`.
    pub fn set_k(&mut self, k: usize) {
        if k != self.k {
            if k < self.k {
                self.certified.clear();
            }
            self.failed.clear();
        }
        self.k = k;
        self.cap = 3 * k / 2;
    }

    pub fn poll(&mut self) -> Result<()> {
        self.polls = self.polls.wrapping_add(1);
        if self.polls.is_multiple_of(256) {
            self.deadline.check()?;
        }
        Ok(())
    }

    /// Whether a part may be used: certified recursively in lazy mode, looked
    /// up in stratified mode.
    pub fn part_ok(&mut self, a: u64) -> Result<bool> {
        match self.mode {
            BlocksMode::Lazy => self.certify(a),
            BlocksMode::Stratified => Ok(self.certified.contains_key(&a)),
        }
    }

    /// Whether `bw(E(B)) ≤ k`.
    pub fn certify(&mut self, b: u64) -> Result<bool> {
        if self.certified.contains_key(&b) {
            return Ok(true);
        }
        if self.failed.contains(&b) {
            return Ok(false);
        }
        self.poll()?;
        let witness = self.find_witness(b)?;
        let ok = witness.is_some();
        match witness {
            Some(w) => {
                self.certified.insert(b, w);
            }
            None => {
                self.failed.insert(b);
            }
        }
        Ok(ok)
    }

    fn find_witness(&mut self, b: u64) -> Result<Option<Witness>> {
        let g = self.g;
        let db = g.boundary(b);
        if pop(db) > self.k {
            return Ok(None);
        }
        match g.count_edges_within(b, 2) {
            (0, _) => return Ok(Some(Witness::Base)),
            (1, Some(e)) => return Ok((g.leaf_order[e] <= self.k).then_some(Witness::Base)),
            _ => {}
        }
        let mut parts = Vec::new();
        self.search(b, db, db, b & !db, &mut parts)
    }

    /// Splits the undecided set `u` between the separator and part cores.
    /// The lowest undecided vertex either joins `s` or lies in a part core
    /// `C`: a component of `G[B ∖ S]` with `κ(N[C]) = C`, whose neighbors
    /// all join `s`.
    fn search(&mut self, b: u64, db: u64, s: u64, u: u64, parts: &mut Vec<u64>) -> Result<Option<Witness>> {
        self.poll()?;
        let g = self.g;
        if u == 0 || pop(s) > self.k {
            // A mid-triple of any completion restricts to one of the partial
            // derivation, so an infeasible partial state prunes the subtree.
            let inp = OrderInput { s, db, parts: parts.iter().map(|&a| a & !g.core(a)).collect() };
            let feasible = find_triple(&inp, self.k, self.strategy).is_some();
            if u == 0 || !feasible {
                return Ok(feasible.then(|| Witness::Derived(parts.clone())));
            }
        }
        let v = u.trailing_zeros() as usize;
        let limit = NbLimit { size: pop(u), total: self.k, fresh: self.cap - pop(s) };
        let mut candidates = Vec::new();
        g.for_each_connected(v, u, s, limit, &mut |c, nc| {
            candidates.push((c, nc));
            true
        });
        // Larger cores first: fewer separator vertices remain to place.
        candidates.sort_by_key(|&(c, _)| std::cmp::Reverse(pop(c)));
        for (c, nc) in candidates {
            let a = c | nc;
            if a == b || g.core(a) != c || !self.part_ok(a)? {
                continue;
            }
            parts.push(a);
            let found = self.search(b, db, s | nc, u & !a, parts)?;
            parts.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        if pop(s) < self.cap {
            let bit = 1u64 << v;
            return self.search(b, db, s | bit, u & !bit, parts);
        }
        Ok(None)
    }

    /// Certifies blocks in order of core size, then reports `V(G)`.
    pub fn run_stratified(&mut self) -> Result<bool> {
        for b in list_blocks_raw(self.g, self.k) {
            if self.certified.contains_key(&b) {
                continue;
            }
            self.poll()?;
            if let Some(w) = self.find_witness(b)? {
                self.certified.insert(b, w);
            }
        }
        Ok(self.certified.contains_key(&self.g.full()))
    }

    pub fn decide(&mut self, k: usize) -> Result<bool> {
        self.set_k(k);
        match self.mode {
            BlocksMode::Lazy => self.certify(self.g.full()),
            BlocksMode::Stratified => self.run_stratified(),
        }
    }

    pub fn table(&self) -> BlockFeasibility {
        BlockFeasibility { k: self.k, certified: self.certified.clone() }
    }
}

/// Decomposition of `E(B)` for a certified block, of width at most `k`
/// before the final injectivity pass.
pub(crate) fn build_block(g: &G64, m: usize, k: usize, certified: &HashMap<u64, Witness>, b: u64) -> Result<BranchDecomposition> {
    let witness = certified.get(&b).ok_or_else(|| BwError::Invariant(format!("block {b:#x} used without a certificate")))?;
    let parts = match witness {
        Witness::Base => return Ok(BranchDecomposition::caterpillar(m, &g.edges_within(b))),
        Witness::Derived(parts) => parts,
    };
    let cores = parts.iter().fold(0, |acc, &a| acc | g.core(a));
    let inp = OrderInput { s: b & !cores, db: g.boundary(b), parts: parts.iter().map(|&a| g.boundary(a)).collect() };
    let [m1, m2, m3] = find_triple(&inp, k, OrderStrategy::Auto)
        .ok_or_else(|| BwError::Invariant(format!("certificate of block {b:#x} lost its mid-triple")))?;
    let mut side1 = Vec::new();
    let mut side2 = Vec::new();
    for (&a, &bd) in parts.iter().zip(&inp.parts) {
        let t = build_block(g, m, k, certified, a)?;
        if bd & !m1 == 0 {
            side1.push(t);
        } else {
            side2.push(t);
        }
    }
    let t1 = BranchDecomposition::compose_all(m, side1);
    let t2 = BranchDecomposition::compose_all(m, side2);
    let t3 = BranchDecomposition::caterpillar(m, &g.edges_within(m1));
    let t4 = BranchDecomposition::caterpillar(m, &g.edges_within(m2));
    let t5 = BranchDecomposition::caterpillar(m, &g.edges_within(m3));
    Ok(t1.compose(t3).compose(t2.compose(t4)).compose(t5))
}

/// Certified blocks at `k`. `V(G)` is certified iff `bw(G) ≤ k`.
pub fn decide_blocks(g: &Hypergraph<1>, k: usize, opts: BlocksOptions) -> Result<BlockFeasibility> {
    let g64 = check_input(g, "blocks")?;
    with_large_stack(|| {
        let mut solver = BlockSolver::new(&g64, &opts);
        solver.decide(k)?;
        Ok(solver.table())
    })
}

/// True iff `V(G)` is certified.
pub fn accepts_blocks(g: &Hypergraph<1>, table: &BlockFeasibility) -> bool {
    table.contains(g.vertices())
}

/// Decomposition of `E(G)` of width at most `table.k()`.
pub fn reconstruct_blocks(g: &Hypergraph<1>, table: &BlockFeasibility) -> Result<BranchDecomposition> {
    let g64 = check_input(g, "blocks")?;
    let top = g64.full();
    if !table.certified.contains_key(&top) {
        return Err(BwError::Invariant("reconstruction requested for a rejected instance".into()));
    }
    with_large_stack(|| Ok(build_block(&g64, g.m(), table.k, &table.certified, top)?.make_injective()))
}

/// Branchwidth and an optimal decomposition, trying `k` upward from the
/// largest leaf order and keeping certificates between rounds.
pub fn branchwidth_blocks(g: &Hypergraph<1>, opts: BlocksOptions) -> Result<(usize, BranchDecomposition)> {
    let g64 = check_input(g, "blocks")?;
    with_large_stack(|| {
        let mut solver = BlockSolver::new(&g64, &opts);
        let mut k = lower_bound(g);
        while !solver.decide(k)? {
            k += 1;
        }
        let t = build_block(&g64, g.m(), k, &solver.certified, g64.full())?.make_injective();
        Ok((k, t))
    })
}
