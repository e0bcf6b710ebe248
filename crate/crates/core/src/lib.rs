//! Exact branchwidth of graphs and hypergraphs.
//!
//! Three exact solvers share one preprocessing pipeline:
//!
//! - [`hyper_dp`]: recurrence over vertex subsets, for hypergraphs.
//! - [`alg_blocks`]: dynamic programming over blocks and block derivations,
//!   for graphs.
//! - [`alg_root`]: search over root derivations whose parts are small
//!   certified blocks, for graphs.
//!
//! [`oracle`] is an independent edge-subset reference used for checking.
//! Every solver can emit a [`decomposition::BranchDecomposition`] that is
//! validated against the input.

pub mod alg_blocks;
pub mod alg_root;
pub mod bits;
pub mod blocks;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod hyper_dp;
pub mod io;
pub mod oracle;
pub mod preprocess;
pub mod solve;

pub use bits::{Bits, EdgeSet, VertexSet};
pub use decomposition::{BranchDecomposition, InvalidDecomposition, Node};
pub use error::{BwError, Deadline, ParseError, Result};
pub use graph::Hypergraph;
pub use solve::{decide, solve, Algorithm, AnyHypergraph, Solution, SolveOptions, Status};
