//! Reduction to normal form: connected, every vertex on at least two edges,
//! no edge contained in another.
//!
//! Deleting a vertex that lies on at most one edge preserves branchwidth.
//! Deleting an edge `e` contained in another edge `e'` changes branchwidth
//! to `max(bw(H'), |e' ∩ V(E ∖ {e'})|)`, the right-hand term taken before the
//! deletion; the trace keeps the maximum of these terms as `floor`. The
//! reductions are logged so that decompositions of the reduced components can
//! be lifted back to the input.

use crate::bits::{Bits, EdgeSet};
use crate::decomposition::BranchDecomposition;
use crate::graph::Hypergraph;

/// Why a vertex left the hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexReason {
    /// It lay on exactly one edge and was deleted from it.
    Private { edge: usize },
    /// It lay on no edge.
    Isolated,
}

/// Why an edge left the hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeReason {
    /// Contained in edge `by`; `contribution` is `|by ∩ V(E ∖ {by})|` at the
    /// time of removal.
    Subsumed { by: usize, contribution: usize },
    /// All of its vertices were private.
    Emptied,
}

/// Reduction step, in the order applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    RemoveVertex { vertex: usize, edge: Option<usize> },
    RemoveSubsumed { edge: usize, by: usize },
    DropEmpty { edge: usize },
}

/// Record of all reductions. Vertex and edge ids refer to the input.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub removed_vertices: Vec<(usize, VertexReason)>,
    /// `(edge, reason, |edge|)` with the size taken when the edge was removed.
    pub removed_edges: Vec<(usize, EdgeReason, usize)>,
    /// Largest subsumption contribution, 0 if none.
    pub floor: usize,
    pub log: Vec<Reduction>,
}

/// Connected piece of the reduced hypergraph.
#[derive(Debug, Clone)]
pub struct Component<const W: usize> {
    pub graph: Hypergraph<W>,
    /// Input edge id of each local edge.
    pub edge_ids: Vec<usize>,
    /// Input vertex id of each local vertex.
    pub vertex_ids: Vec<usize>,
}

/// Result of [`normalize`].
#[derive(Debug, Clone)]
pub struct Normalized<const W: usize> {
    pub components: Vec<Component<W>>,
    pub trace: ReductionTrace,
    m: usize,
}

impl<const W: usize> Normalized<W> {
    /// Edge count of the input.
    pub fn input_edges(&self) -> usize {
        self.m
    }

    /// Branchwidth of the input given the branchwidth of each component.
    pub fn combine(&self, widths: &[usize]) -> usize {
        widths.iter().copied().fold(self.trace.floor, usize::max)
    }

    /// Turns injective decompositions of the components (local edge ids) into
    /// a decomposition of every input edge whose width is the maximum of the
    /// component widths and the floor.
    pub fn lift(&self, parts: Vec<BranchDecomposition>) -> BranchDecomposition {
        assert_eq!(parts.len(), self.components.len());
        let mut t = BranchDecomposition::empty(self.m);
        for (c, part) in self.components.iter().zip(parts) {
            t = t.compose(part.make_injective().relabel_edges(self.m, &c.edge_ids));
        }
        for step in self.trace.log.iter().rev() {
            match *step {
                Reduction::RemoveSubsumed { edge, by } => {
                    let placed = t.attach_sibling_leaf(by, edge);
                    debug_assert!(placed, "superset edge {by} missing while lifting");
                }
                Reduction::DropEmpty { edge } => {
                    t = t.compose(BranchDecomposition::leaf(self.m, edge));
                }
                Reduction::RemoveVertex { .. } => {}
            }
        }
        t
    }
}

/// Mutable working copy with edge identities preserved.
struct Work<const W: usize> {
    n: usize,
    edges: Vec<Option<Bits<W>>>,
    present: Bits<W>,
}

impl<const W: usize> Work<W> {
    fn new(h: &Hypergraph<W>) -> Self {
        Work { n: h.n(), edges: h.edges().iter().copied().map(Some).collect(), present: h.vertices() }
    }

    fn alive(&self) -> impl Iterator<Item = (usize, Bits<W>)> + '_ {
        self.edges.iter().enumerate().filter_map(|(i, e)| e.map(|e| (i, e)))
    }

    /// Removes every edge contained in another live edge, smallest first.
    fn subsumed_pass(&mut self, trace: &mut ReductionTrace) -> bool {
        let mut order: Vec<(usize, usize)> = self.alive().map(|(i, e)| (e.len(), i)).collect();
        order.sort_unstable();
        let mut changed = false;
        for (_, i) in order {
            let e = self.edges[i].expect("live edge");
            let Some(by) = self.alive().find(|&(j, f)| j != i && e.is_subset(&f)).map(|(j, _)| j) else {
                continue;
            };
            let sup = self.edges[by].expect("live edge");
            let others = self.alive().filter(|&(j, _)| j != by).fold(Bits::EMPTY, |acc, (_, f)| acc | f);
            let contribution = (sup & others).len();
            trace.removed_edges.push((i, EdgeReason::Subsumed { by, contribution }, e.len()));
            trace.log.push(Reduction::RemoveSubsumed { edge: i, by });
            trace.floor = trace.floor.max(contribution);
            self.edges[i] = None;
            changed = true;
        }
        changed
    }

    /// Deletes vertices on at most one live edge, then drops emptied edges.
    fn private_pass(&mut self, trace: &mut ReductionTrace) -> bool {
        let mut changed = false;
        for v in self.present.iter() {
            let on: Vec<usize> = self.alive().filter(|(_, e)| e.contains(v)).map(|(i, _)| i).take(2).collect();
            if on.len() > 1 {
                continue;
            }
            let first = on.first().copied();
            match first {
                Some(i) => {
                    self.edges[i].as_mut().expect("live edge").remove(v);
                    trace.removed_vertices.push((v, VertexReason::Private { edge: i }));
                }
                None => trace.removed_vertices.push((v, VertexReason::Isolated)),
            }
            trace.log.push(Reduction::RemoveVertex { vertex: v, edge: first });
            self.present.remove(v);
            changed = true;
        }
        for i in 0..self.edges.len() {
            if self.edges[i].is_some_and(|e| e.is_empty()) {
                trace.removed_edges.push((i, EdgeReason::Emptied, 0));
                trace.log.push(Reduction::DropEmpty { edge: i });
                self.edges[i] = None;
                changed = true;
            }
        }
        changed
    }

    /// Live edges as a hypergraph on the original vertex indices, with the
    /// input edge id of each.
    fn finish(&self, labels: &[usize]) -> (Hypergraph<W>, Vec<usize>) {
        let (ids, edges): (Vec<usize>, Vec<Bits<W>>) = self.alive().unzip();
        let h = Hypergraph::new(self.n, edges).expect("reduced edges are nonempty").with_labels(labels.to_vec());
        (h, ids)
    }
}

/// Deletes every vertex that lies on at most one edge and drops edges that
/// become empty. Vertex indices are kept; the result has the surviving edges
/// in input order.
pub fn remove_private_vertices<const W: usize>(h: &Hypergraph<W>) -> (Hypergraph<W>, ReductionTrace) {
    let mut trace = ReductionTrace::default();
    let mut w = Work::new(h);
    w.private_pass(&mut trace);
    (w.finish(h.labels()).0, trace)
}

/// Deletes edges contained in another edge until the edges form an antichain.
/// Of two equal edges the lower-indexed one is deleted.
pub fn remove_subsumed_edges<const W: usize>(h: &Hypergraph<W>) -> (Hypergraph<W>, ReductionTrace) {
    let mut trace = ReductionTrace::default();
    let mut w = Work::new(h);
    w.subsumed_pass(&mut trace);
    (w.finish(h.labels()).0, trace)
}

fn component_edge_groups<const W: usize>(h: &Hypergraph<W>) -> Vec<Vec<usize>> {
    let support = h.vertices_of(&h.all_edges());
    h.connected_components(support).into_iter().map(|c| (0..h.m()).filter(|&i| h.edge(i).is_subset(&c)).collect()).collect()
}

/// Connected sub-hypergraphs partitioning the edges, vertices renumbered
/// densely and isolated vertices dropped. Ordered by smallest vertex.
pub fn split_components<const W: usize>(h: &Hypergraph<W>) -> Vec<Hypergraph<W>> {
    component_edge_groups(h).iter().map(|ids| h.restrict_to_edges(ids).0).collect()
}

/// Applies subsumed-edge and private-vertex removal until neither changes
/// anything, then splits the rest into connected components.
pub fn normalize<const W: usize>(h: &Hypergraph<W>) -> Normalized<W> {
    let mut trace = ReductionTrace::default();
    let mut w = Work::new(h);
    loop {
        let a = w.subsumed_pass(&mut trace);
        let b = w.private_pass(&mut trace);
        if !a && !b {
            break;
        }
    }
    let (reduced, ids) = w.finish(h.labels());
    let components = component_edge_groups(&reduced)
        .into_iter()
        .map(|local| {
            let (graph, vertex_ids) = reduced.restrict_to_edges(&local);
            Component { graph, edge_ids: local.iter().map(|&i| ids[i]).collect(), vertex_ids }
        })
        .collect();
    Normalized { components, trace, m: h.m() }
}

/// `max_e |e ∩ V(E ∖ {e})|`, the order of the largest leaf.
pub fn lower_bound<const W: usize>(h: &Hypergraph<W>) -> usize {
    (0..h.m()).map(|i| h.leaf_order(i)).max().unwrap_or(0)
}

/// True iff `h` is connected, every vertex lies on at least two edges and the
/// edges form an antichain.
pub fn is_normalized<const W: usize>(h: &Hypergraph<W>) -> bool {
    let all = h.all_edges();
    let support = h.vertices_of(&all);
    let antichain = (0..h.m()).all(|i| (0..h.m()).all(|j| i == j || !h.edge(i).is_subset(&h.edge(j))));
    support == h.vertices() && (0..h.n()).all(|v| h.degree(v) >= 2) && antichain && h.connected_components(support).len() <= 1
}

/// Edge set of a component as input edge ids.
pub fn component_edge_set<const W: usize>(c: &Component<W>, m: usize) -> EdgeSet {
    let mut f = EdgeSet::with_capacity(m);
    for &e in &c.edge_ids {
        f.insert(e);
    }
    f
}
