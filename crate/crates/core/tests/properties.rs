//! Property tests for the graph core, preprocessing, decompositions, the
//! hypergraph solver and the text formats, each against a direct oracle.

use branchwidth::decomposition::BranchDecomposition;
use branchwidth::io::{self, Instance};
use branchwidth::oracle::{oracle_branchwidth, OracleTable};
use branchwidth::preprocess::{is_normalized, lower_bound, normalize};
use branchwidth::{hyper_dp, EdgeSet, Hypergraph, VertexSet};
use proptest::prelude::*;

/// Hypergraph with up to `max_n` vertices and `1..=max_m` nonempty edges.
fn instance(max_n: usize, max_m: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1u64..(1 << n), 1..=max_m).prop_map(move |masks| Instance {
            n,
            edges: masks.iter().map(|&x| (0..n).filter(|&v| x >> v & 1 == 1).collect()).collect(),
            comment: None,
        })
    })
}

/// Simple graph given by a nonempty subset of the pairs of `0..n`.
fn simple_graph(max_n: usize) -> impl Strategy<Value = Instance> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<Vec<usize>> = (0..n).flat_map(|a| (a + 1..n).map(move |b| vec![a, b])).collect();
        prop::sample::subsequence(pairs.clone(), 1..=pairs.len().min(12)).prop_map(move |edges| Instance { n, edges, comment: None })
    })
}

fn h(inst: &Instance) -> Hypergraph<1> {
    inst.to_hypergraph().unwrap()
}

fn naive_vertices_of(inst: &Instance, f: u64) -> u64 {
    inst.edges.iter().enumerate().filter(|(i, _)| f >> i & 1 == 1).flat_map(|(_, e)| e.iter()).fold(0, |acc, &v| acc | 1 << v)
}

fn edge_set(m: usize, f: u64) -> EdgeSet {
    let mut s = EdgeSet::with_capacity(m);
    (0..m).filter(|i| f >> i & 1 == 1).for_each(|i| s.insert(i));
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boundary_and_core_match_definitions(inst in instance(7, 7), x in 0u64..128, f in 0u64..128) {
        let g = h(&inst);
        let m = inst.edges.len();
        let x = x & ((1 << inst.n) - 1);
        let xs = VertexSet::<1>::from_u64(x);
        // A vertex of X is on the boundary iff some edge through it leaves X.
        let leaves = |v: usize| inst.edges.iter().any(|e| e.contains(&v) && e.iter().any(|&u| x >> u & 1 == 0));
        let bd: u64 = (0..inst.n).filter(|&v| x >> v & 1 == 1 && leaves(v)).fold(0, |a, v| a | 1 << v);
        prop_assert_eq!(g.vertex_boundary(xs).to_u64(), bd);
        prop_assert_eq!(g.core(xs).to_u64(), x & !bd);

        let f = f & ((1 << m) - 1);
        let inside = naive_vertices_of(&inst, f);
        let outside = naive_vertices_of(&inst, !f & ((1 << m) - 1));
        let fs = edge_set(m, f);
        prop_assert_eq!(g.edge_boundary(&fs).to_u64(), inside & outside);
        prop_assert_eq!(g.edge_core(&fs).to_u64(), inside & !outside);
        prop_assert_eq!(g.vertices_of(&fs).to_u64(), inside);
    }

    #[test]
    fn blocks_are_closures_of_connected_cores(inst in simple_graph(7), x in 1u64..128) {
        let g = h(&inst);
        let x = x & ((1 << inst.n) - 1);
        let xs = VertexSet::<1>::from_u64(x);
        let k = g.core(xs);
        let expected = !k.is_empty() && g.connected_components(k).len() == 1 && g.vertex_closure(k) == xs;
        prop_assert_eq!(g.is_block(xs), expected);
    }

    #[test]
    fn normalization_preserves_width_and_lifts(inst in instance(6, 7)) {
        let g = h(&inst);
        let want = oracle_branchwidth(&g).unwrap();
        let norm = normalize(&g);
        let mut widths = Vec::new();
        let mut parts = Vec::new();
        for c in &norm.components {
            prop_assert!(is_normalized(&c.graph));
            let table = OracleTable::build(&c.graph, &c.graph.all_edges()).unwrap();
            widths.push(table.width());
            parts.push(table.decomposition(c.graph.m()));
        }
        prop_assert_eq!(norm.combine(&widths), want);
        let lifted = norm.lift(parts);
        prop_assert_eq!(lifted.validate(&g, want), Ok(want));
        prop_assert!(lower_bound(&g) <= want);
    }

    #[test]
    fn hyper_dp_equals_oracle(inst in instance(7, 7)) {
        let g = h(&inst);
        let norm = normalize(&g);
        for c in &norm.components {
            let want = oracle_branchwidth(&c.graph).unwrap();
            let (k, table) = hyper_dp::branchwidth(&c.graph).unwrap();
            prop_assert_eq!(k, want);
            prop_assert!(hyper_dp::accepts(&c.graph, &table));
            let t = hyper_dp::reconstruct(&c.graph, &table).unwrap();
            prop_assert_eq!(t.validate(&c.graph, k), Ok(k));
            if k > 0 {
                prop_assert!(!hyper_dp::accepts(&c.graph, &hyper_dp::decide(&c.graph, k - 1).unwrap()));
            }
        }
    }

    #[test]
    fn caterpillars_and_composition_are_valid(inst in instance(7, 8)) {
        let g = h(&inst);
        let m = g.m();
        let cat = BranchDecomposition::caterpillar(m, &(0..m).collect::<Vec<_>>());
        let w = cat.width(&g);
        prop_assert_eq!(cat.validate(&g, w), Ok(w));
        prop_assert!(w >= oracle_branchwidth(&g).unwrap());
        let half = m / 2;
        let left = BranchDecomposition::caterpillar(m, &(0..half).collect::<Vec<_>>());
        let right = BranchDecomposition::caterpillar(m, &(half..m).collect::<Vec<_>>());
        let joined = left.compose(right);
        prop_assert!(joined.is_full());
        prop_assert!(joined.validate(&g, usize::MAX).is_ok());
        // Duplicating a leaf and dropping it again keeps the width.
        let dup = cat.clone().compose(BranchDecomposition::leaf(m, 0));
        prop_assert!(!dup.is_injective());
        prop_assert!(dup.make_injective().is_injective());
        prop_assert!(dup.make_injective().width(&g) <= dup.width(&g));
    }

    #[test]
    fn hgr_round_trip(inst in instance(9, 9)) {
        let g = h(&inst);
        let back = io::parse_hgr(&io::write_hgr(&g)).unwrap();
        prop_assert_eq!(back.n, inst.n);
        let sorted = |es: &[Vec<usize>]| es.iter().map(|e| { let mut e = e.clone(); e.sort(); e }).collect::<Vec<_>>();
        prop_assert_eq!(sorted(&back.edges), sorted(&inst.edges));
    }

    #[test]
    fn gr_round_trip(inst in simple_graph(9)) {
        let g = h(&inst);
        let back = io::parse_gr(&io::write_gr(&g)).unwrap();
        prop_assert_eq!(back.n, inst.n);
        let rebuilt = h(&back);
        prop_assert_eq!(rebuilt.edges(), g.edges());
    }

    #[test]
    fn decomposition_text_round_trip(inst in instance(6, 7)) {
        let g = h(&inst);
        let table = OracleTable::build(&g, &g.all_edges()).unwrap();
        let t = table.decomposition(g.m());
        let text = io::write_decomposition(&t, &g);
        let file = io::read_decomposition(&text).unwrap();
        prop_assert_eq!((file.width, file.n, file.m), (table.width(), g.n(), g.m()));
        prop_assert_eq!(file.tree.width(&g), table.width());
        prop_assert_eq!(io::check_decomposition_text(&text, &g, table.width()).unwrap(), table.width());
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let cases = [("p tw 3 2\n1 2\n2 4\n", 3), ("c header\np tw 3 1\n1 x\n", 3), ("1 2\n", 1), ("p tw 3 2\n1 2\n", 0)];
    for (text, line) in cases {
        let err = io::parse_gr(text).unwrap_err();
        assert_eq!(err.line, line, "{text:?}: {err}");
    }
    assert!(io::parse_hgr("p hbw 2 1\n1 3\n").is_err());
}

#[test]
fn tampered_decompositions_are_rejected() {
    let inst = io::parse_gr("p tw 4 4\n1 2\n2 3\n3 4\n4 1\n").unwrap();
    let g = h(&inst);
    let t = OracleTable::build(&g, &g.all_edges()).unwrap().decomposition(g.m());
    let text = io::write_decomposition(&t, &g);
    assert!(io::check_decomposition_text(&text, &g, 2).is_ok());
    assert!(io::check_decomposition_text(&text, &g, 1).is_err());
    // Relabel the leaf of edge 4 to edge 1: no longer surjective.
    let missing: String = text
        .lines()
        .map(|l| if l.ends_with(" 4") && !l.starts_with('s') { format!("{}1\n", &l[..l.len() - 1]) } else { format!("{l}\n") })
        .collect();
    assert!(io::check_decomposition_text(&missing, &g, 4).is_err());
    let wrong_header = text.replacen("s bw 2", "s bw 1", 1);
    assert!(io::check_decomposition_text(&wrong_header, &g, 4).is_err());
}
