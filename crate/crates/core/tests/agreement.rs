//! All solvers and order routes agree with the edge-subset oracle.

mod common;

use branchwidth::alg_blocks::BlocksMode;
use branchwidth::alg_root::RootRoute;
use branchwidth::blocks::OrderStrategy;
use branchwidth::hyper_dp::Mode;
use branchwidth::{solve, Algorithm, SolveOptions};
use common::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn variants() -> Vec<(String, SolveOptions)> {
    let mut out = Vec::new();
    for alg in [Algorithm::Hyper, Algorithm::Blocks, Algorithm::Root] {
        out.push((alg.to_string(), SolveOptions::new(alg)));
    }
    out.push(("hyper/all-subsets".into(), SolveOptions { hyper_mode: Mode::AllSubsets, ..SolveOptions::new(Algorithm::Hyper) }));
    out.push(("blocks/stratified".into(), SolveOptions { blocks_mode: BlocksMode::Stratified, ..SolveOptions::new(Algorithm::Blocks) }));
    for strategy in [OrderStrategy::Bipartition, OrderStrategy::KFull, OrderStrategy::Backtrack] {
        out.push((format!("blocks/{strategy:?}"), SolveOptions { order_strategy: strategy, ..SolveOptions::new(Algorithm::Blocks) }));
    }
    for route in [RootRoute::Tripartition, RootRoute::HyperQ] {
        out.push((format!("root/{route:?}"), SolveOptions { root_route: route, ..SolveOptions::new(Algorithm::Root) }));
    }
    out
}

#[test]
fn random_graphs_match_oracle() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let variants = variants();
    let mut failures = Vec::new();
    for _ in 0..300 {
        let inst = random_small_graph(&mut rng, 9, 13);
        let h = hypergraph(&inst);
        let want = branchwidth::oracle::oracle_branchwidth(&h).unwrap();
        for (name, opts) in &variants {
            match solve(&h, opts) {
                Ok(sol) if sol.width == want => {}
                other => failures.push(format!("{name}: {:?} vs {want} on {:?}", other.map(|s| s.width), inst.edges)),
            }
        }
    }
    assert!(failures.is_empty(), "{} failures, first: {:#?}", failures.len(), &failures[..failures.len().min(5)]);
}

#[test]
fn random_hypergraphs_match_oracle() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let variants = variants();
    for _ in 0..200 {
        let inst = random_hypergraph(&mut rng, 7, 6, 2..=4);
        let h = hypergraph(&inst);
        let want = branchwidth::oracle::oracle_branchwidth(&h).unwrap();
        for (name, opts) in &variants {
            assert_eq!(solve(&h, opts).unwrap().width, want, "{name} on {:?}", inst.edges);
        }
    }
}
