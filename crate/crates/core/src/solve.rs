//! End-to-end solving: normalize, solve each component, lift, validate.

use std::fmt;
use std::str::FromStr;

use crate::alg_blocks::{accepts_blocks, branchwidth_blocks, decide_blocks, BlocksMode, BlocksOptions};
use crate::alg_root::{branchwidth_root, decide_root, RootOptions, RootRoute};
use crate::blocks::OrderStrategy;
use crate::decomposition::BranchDecomposition;
use crate::error::{BwError, Deadline, Result};
use crate::graph::Hypergraph;
use crate::hyper_dp::{self, HyperOptions, Mode};
use crate::io::Instance;
use crate::oracle::OracleTable;
use crate::preprocess::normalize;

/// Exact algorithm used per component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Dynamic programming over vertex sets; any hypergraph.
    Hyper,
    /// Block certification; graphs only.
    Blocks,
    /// Root derivations over small blocks; graphs only.
    Root,
    /// Exhaustive edge-subset recursion; at most 16 edges per component.
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Hyper, Algorithm::Blocks, Algorithm::Root, Algorithm::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Hyper => "hyper",
            Algorithm::Blocks => "blocks",
            Algorithm::Root => "root",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = BwError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| BwError::InvalidInput(format!("unknown algorithm '{s}' (expected hyper, blocks, root or oracle)")))
    }
}

/// Settings for [`solve`] and [`decide`].
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub deadline: Deadline,
    pub hyper_mode: Mode,
    pub blocks_mode: BlocksMode,
    pub order_strategy: OrderStrategy,
    pub root_route: RootRoute,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions::new(Algorithm::Hyper)
    }
}

impl SolveOptions {
    pub fn new(algorithm: Algorithm) -> Self {
        SolveOptions {
            algorithm,
            deadline: Deadline::NONE,
            hyper_mode: Mode::default(),
            blocks_mode: BlocksMode::default(),
            order_strategy: OrderStrategy::default(),
            root_route: RootRoute::default(),
        }
    }

    pub fn with_deadline(mut self, deadline: Deadline) -> Self {
        self.deadline = deadline;
        self
    }

    fn hyper(&self) -> HyperOptions {
        HyperOptions { mode: self.hyper_mode, deadline: self.deadline }
    }

    fn blocks(&self) -> BlocksOptions {
        BlocksOptions { mode: self.blocks_mode, strategy: self.order_strategy, deadline: self.deadline }
    }

    fn root(&self) -> RootOptions {
        RootOptions { blocks: self.blocks(), route: self.root_route }
    }
}

/// Branchwidth with a decomposition of every input edge.
#[derive(Debug, Clone)]
pub struct Solution {
    pub width: usize,
    pub decomposition: BranchDecomposition,
    /// Components handed to the hypergraph solver because a graph algorithm
    /// met a non-graph component.
    pub fallback_components: usize,
}

/// Outcome class of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Timeout,
    /// A size limit of the chosen algorithm was exceeded.
    Memout,
    Error,
}

impl Status {
    pub fn of<T>(r: &Result<T>) -> Status {
        match r {
            Ok(_) => Status::Ok,
            Err(BwError::Timeout) => Status::Timeout,
            Err(BwError::TooLarge { .. }) => Status::Memout,
            Err(_) => Status::Error,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Timeout => "timeout",
            Status::Memout => "memout",
            Status::Error => "error",
        })
    }
}

fn hyper_solve<const W: usize>(g: &Hypergraph<W>, opts: &SolveOptions) -> Result<(usize, BranchDecomposition)> {
    let (k, table) = hyper_dp::branchwidth_with(g, opts.hyper())?;
    Ok((k, hyper_dp::reconstruct(g, &table)?))
}

fn component_solve<const W: usize>(g: &Hypergraph<W>, opts: &SolveOptions, fallbacks: &mut usize) -> Result<(usize, BranchDecomposition)> {
    match opts.algorithm {
        Algorithm::Oracle => {
            let table = OracleTable::build(g, &g.all_edges())?;
            Ok((table.width(), table.decomposition(g.m())))
        }
        Algorithm::Hyper => hyper_solve(g, opts),
        Algorithm::Blocks | Algorithm::Root if !g.is_graph() => {
            *fallbacks += 1;
            hyper_solve(g, opts)
        }
        Algorithm::Blocks => branchwidth_blocks(&g.rebind::<1>()?, opts.blocks()),
        Algorithm::Root => branchwidth_root(&g.rebind::<1>()?, opts.root()),
    }
}

fn component_decide<const W: usize>(g: &Hypergraph<W>, k: usize, opts: &SolveOptions) -> Result<bool> {
    let hyper = || -> Result<bool> { Ok(hyper_dp::accepts(g, &hyper_dp::decide_with(g, k, opts.hyper(), None)?)) };
    match opts.algorithm {
        Algorithm::Oracle => Ok(OracleTable::build(g, &g.all_edges())?.width() <= k),
        Algorithm::Hyper => hyper(),
        Algorithm::Blocks | Algorithm::Root if !g.is_graph() => hyper(),
        Algorithm::Blocks => {
            let g1 = g.rebind::<1>()?;
            Ok(accepts_blocks(&g1, &decide_blocks(&g1, k, opts.blocks())?))
        }
        Algorithm::Root => decide_root(&g.rebind::<1>()?, k, opts.root()),
    }
}

/// Branchwidth of `h` with a validated decomposition.
pub fn solve<const W: usize>(h: &Hypergraph<W>, opts: &SolveOptions) -> Result<Solution> {
    let norm = normalize(h);
    let mut widths = Vec::with_capacity(norm.components.len());
    let mut parts = Vec::with_capacity(norm.components.len());
    let mut fallback_components = 0;
    for c in &norm.components {
        opts.deadline.check()?;
        let (k, t) = component_solve(&c.graph, opts, &mut fallback_components)?;
        widths.push(k);
        parts.push(t);
    }
    let width = norm.combine(&widths);
    let decomposition = norm.lift(parts);
    decomposition.validate(h, width).map_err(|e| BwError::Invariant(format!("{} decomposition failed validation: {e}", opts.algorithm)))?;
    Ok(Solution { width, decomposition, fallback_components })
}

/// Whether `bw(h) ≤ k`.
pub fn decide<const W: usize>(h: &Hypergraph<W>, k: usize, opts: &SolveOptions) -> Result<bool> {
    let norm = normalize(h);
    if norm.trace.floor > k {
        return Ok(false);
    }
    for c in &norm.components {
        opts.deadline.check()?;
        if !component_decide(&c.graph, k, opts)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A hypergraph stored with the narrowest vertex-set width that fits.
#[derive(Debug, Clone)]
pub enum AnyHypergraph {
    W1(Hypergraph<1>),
    W2(Hypergraph<2>),
    W4(Hypergraph<4>),
    W8(Hypergraph<8>),
    W16(Hypergraph<16>),
}

macro_rules! dispatch {
    ($self:expr, $h:ident => $body:expr) => {
        match $self {
            AnyHypergraph::W1($h) => $body,
            AnyHypergraph::W2($h) => $body,
            AnyHypergraph::W4($h) => $body,
            AnyHypergraph::W8($h) => $body,
            AnyHypergraph::W16($h) => $body,
        }
    };
}

impl AnyHypergraph {
    /// Largest vertex count supported.
    pub const MAX_VERTICES: usize = 64 * 16;

    pub fn from_instance(inst: &Instance) -> Result<Self> {
        Ok(match inst.n {
            0..=64 => AnyHypergraph::W1(inst.to_hypergraph()?),
            65..=128 => AnyHypergraph::W2(inst.to_hypergraph()?),
            129..=256 => AnyHypergraph::W4(inst.to_hypergraph()?),
            257..=512 => AnyHypergraph::W8(inst.to_hypergraph()?),
            513..=1024 => AnyHypergraph::W16(inst.to_hypergraph()?),
            n => return Err(BwError::TooLarge { what: "vertex count", size: n, limit: Self::MAX_VERTICES }),
        })
    }

    pub fn n(&self) -> usize {
        dispatch!(self, h => h.n())
    }

    pub fn m(&self) -> usize {
        dispatch!(self, h => h.m())
    }

    pub fn is_graph(&self) -> bool {
        dispatch!(self, h => h.is_graph())
    }

    pub fn solve(&self, opts: &SolveOptions) -> Result<Solution> {
        dispatch!(self, h => solve(h, opts))
    }

    pub fn decide(&self, k: usize, opts: &SolveOptions) -> Result<bool> {
        dispatch!(self, h => decide(h, k, opts))
    }

    /// Width of `t` if it is a decomposition of every edge with width at
    /// most `k`.
    pub fn validate(&self, t: &BranchDecomposition, k: usize) -> Result<usize> {
        dispatch!(self, h => t.validate(h, k).map_err(|e| BwError::Invariant(e.to_string())))
    }

    /// Decomposition file text.
    pub fn write_decomposition(&self, t: &BranchDecomposition) -> String {
        dispatch!(self, h => crate::io::write_decomposition(t, h))
    }

    /// Checks decomposition file text against this hypergraph.
    pub fn check_decomposition_text(&self, text: &str, k: usize) -> Result<usize> {
        dispatch!(self, h => crate::io::check_decomposition_text(text, h, k))
    }

    /// Reference branchwidth; at most 16 edges.
    pub fn oracle_width(&self) -> Result<usize> {
        dispatch!(self, h => crate::oracle::oracle_branchwidth(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, edges: &[&[usize]]) -> Instance {
        Instance { n, edges: edges.iter().map(|e| e.to_vec()).collect(), comment: None }
    }

    #[test]
    fn algorithms_agree_with_pendants_and_components() {
        // Triangle with a pendant path plus a separate 4-cycle.
        let i = inst(9, &[&[0, 1], &[1, 2], &[0, 2], &[2, 3], &[3, 4], &[5, 6], &[6, 7], &[7, 8], &[8, 5]]);
        let h = AnyHypergraph::from_instance(&i).unwrap();
        for alg in Algorithm::ALL {
            let sol = h.solve(&SolveOptions::new(alg)).unwrap();
            assert_eq!(sol.width, 2, "{alg}");
            assert!(h.decide(2, &SolveOptions::new(alg)).unwrap());
            assert!(!h.decide(1, &SolveOptions::new(alg)).unwrap());
        }
    }

    #[test]
    fn graph_algorithms_fall_back_on_hyperedges() {
        let i = inst(4, &[&[0, 1, 2], &[1, 2, 3], &[0, 3], &[0, 2, 3]]);
        let h = AnyHypergraph::from_instance(&i).unwrap();
        let want = h.oracle_width().unwrap();
        for alg in Algorithm::ALL {
            assert_eq!(h.solve(&SolveOptions::new(alg)).unwrap().width, want, "{alg}");
        }
    }

    #[test]
    fn parses_algorithm_names() {
        assert_eq!("root".parse::<Algorithm>().unwrap(), Algorithm::Root);
        assert!("sat".parse::<Algorithm>().is_err());
    }

    #[test]
    fn width_dispatch() {
        let i = inst(70, &[&[0, 69]]);
        assert!(matches!(AnyHypergraph::from_instance(&i).unwrap(), AnyHypergraph::W2(_)));
    }
}
