//! Shared generators for integration tests.
#![allow(dead_code)]

use branchwidth::io::Instance;
use branchwidth::Hypergraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Connected simple graph on `n` vertices with `m` edges, `n - 1 ≤ m`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Instance {
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i].min(order[j]), order[i].max(order[j]));
        edges.push(vec![a, b]);
    }
    let mut rest: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&vec![a, b]) {
                rest.push(vec![a, b]);
            }
        }
    }
    rest.shuffle(rng);
    edges.extend(rest.into_iter().take(m.saturating_sub(n - 1)));
    Instance { n, edges, comment: None }
}

/// Connected graph with `2 ≤ n ≤ max_n` and at most `max_m` edges.
pub fn random_small_graph<R: Rng>(rng: &mut R, max_n: usize, max_m: usize) -> Instance {
    let n = rng.gen_range(2..=max_n);
    let hi = max_m.min(n * (n - 1) / 2);
    let m = rng.gen_range(n - 1..=hi);
    random_connected_graph(rng, n, m)
}

/// Hypergraph with `2 ≤ n ≤ max_n`, `1 ≤ m ≤ max_m` and edge sizes in `sizes`.
pub fn random_hypergraph<R: Rng>(rng: &mut R, max_n: usize, max_m: usize, sizes: std::ops::RangeInclusive<usize>) -> Instance {
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(1..=max_m);
    let mut verts: Vec<usize> = (0..n).collect();
    let edges = (0..m)
        .map(|_| {
            let r = rng.gen_range(sizes.clone()).min(n);
            verts.shuffle(rng);
            let mut e = verts[..r].to_vec();
            e.sort();
            e
        })
        .collect();
    Instance { n, edges, comment: None }
}

/// Connected graph with minimum degree at least two and `3 ≤ m ≤ max_m`.
pub fn random_min_degree_two<R: Rng>(rng: &mut R, max_n: usize, max_m: usize) -> Instance {
    loop {
        let inst = random_small_graph(rng, max_n, max_m);
        let mut deg = vec![0; inst.n];
        for e in &inst.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        if inst.m() >= 3 && deg.iter().all(|&d| d >= 2) {
            return inst;
        }
    }
}

pub fn hypergraph(inst: &Instance) -> Hypergraph<1> {
    inst.to_hypergraph::<1>().expect("instance fits in one word")
}

pub fn graph(n: usize, pairs: &[(usize, usize)]) -> Hypergraph<1> {
    Hypergraph::from_edge_lists(n, &pairs.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>()).unwrap()
}
