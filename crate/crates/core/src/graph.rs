//! Immutable hypergraphs and the boundary, core and closure primitives.
//!
//! Vertices are `0..n`, edges are indexed by position. A graph is the special
//! case where every edge has exactly two vertices.

use crate::bits::{Bits, EdgeSet, VertexSet};
use crate::error::{BwError, Result};

/// Hypergraph with inline vertex sets of `64 * W` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph<const W: usize> {
    n: usize,
    edges: Vec<Bits<W>>,
    incidence: Vec<EdgeSet>,
    adj: Vec<Bits<W>>,
    labels: Vec<usize>,
}

impl<const W: usize> Hypergraph<W> {
    /// Builds a hypergraph. Every edge must be a nonempty subset of `0..n`.
    pub fn new(n: usize, edges: Vec<Bits<W>>) -> Result<Self> {
        if n > Bits::<W>::CAPACITY {
            return Err(BwError::TooLarge { what: "vertex count", size: n, limit: Bits::<W>::CAPACITY });
        }
        let universe = Bits::<W>::full(n);
        let m = edges.len();
        let mut incidence = vec![EdgeSet::with_capacity(m); n];
        let mut adj = vec![Bits::<W>::EMPTY; n];
        for (i, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(BwError::InvalidInput(format!("edge {i} is empty")));
            }
            if !e.is_subset(&universe) {
                return Err(BwError::InvalidInput(format!("edge {i} has a vertex outside 0..{n}")));
            }
            for v in e.iter() {
                incidence[v].insert(i);
                adj[v] |= *e;
            }
        }
        for (v, a) in adj.iter_mut().enumerate() {
            a.remove(v);
        }
        Ok(Hypergraph { n, edges, incidence, adj, labels: (1..=n).collect() })
    }

    /// Builds a hypergraph from vertex lists.
    pub fn from_edge_lists<E: AsRef<[usize]>>(n: usize, edges: &[E]) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if let Some(&v) = e.as_ref().iter().find(|&&v| v >= n) {
                return Err(BwError::InvalidInput(format!("edge {i} has vertex {v} outside 0..{n}")));
            }
        }
        if n > Bits::<W>::CAPACITY {
            return Err(BwError::TooLarge { what: "vertex count", size: n, limit: Bits::<W>::CAPACITY });
        }
        Self::new(n, edges.iter().map(|e| Bits::from_indices(e.as_ref().iter().copied())).collect())
    }

    /// Same hypergraph stored with `V` words per vertex set.
    pub fn rebind<const V: usize>(&self) -> Result<Hypergraph<V>> {
        if self.n > Bits::<V>::CAPACITY {
            return Err(BwError::TooLarge { what: "vertex count", size: self.n, limit: Bits::<V>::CAPACITY });
        }
        let edges = self.edges.iter().map(|e| Bits::<V>::from_indices(e.iter())).collect();
        Ok(Hypergraph::<V>::new(self.n, edges)?.with_labels(self.labels.clone()))
    }

    /// Replaces the external vertex labels.
    pub fn with_labels(mut self, labels: Vec<usize>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    /// External label of each vertex (1-based ids by default).
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Bits<W>] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, i: usize) -> Bits<W> {
        self.edges[i]
    }

    /// Edges containing `v`.
    #[inline]
    pub fn incidence(&self, v: usize) -> &EdgeSet {
        &self.incidence[v]
    }

    /// Vertices sharing an edge with `v`, excluding `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> Bits<W> {
        self.adj[v]
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].count_ones(..)
    }

    /// `V(H)`.
    pub fn vertices(&self) -> VertexSet<W> {
        Bits::full(self.n)
    }

    /// `E(H)`.
    pub fn all_edges(&self) -> EdgeSet {
        let mut f = EdgeSet::with_capacity(self.m());
        f.insert_range(..);
        f
    }

    /// True iff every edge has exactly two vertices.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// Largest edge size.
    pub fn rank(&self) -> usize {
        self.edges.iter().map(|e| e.len()).max().unwrap_or(0)
    }

    /// `V(F)`.
    pub fn vertices_of(&self, f: &EdgeSet) -> VertexSet<W> {
        let mut v = Bits::EMPTY;
        for i in f.ones() {
            v |= self.edges[i];
        }
        v
    }

    /// `∂(X)`: vertices of `X` lying on an edge that leaves `X`.
    pub fn vertex_boundary(&self, x: VertexSet<W>) -> VertexSet<W> {
        let mut b = Bits::EMPTY;
        for v in x.iter() {
            if !self.adj[v].is_subset(&x) {
                b.insert(v);
            }
        }
        b
    }

    /// `∂(F) = V(F) ∩ V(E ∖ F)`.
    pub fn edge_boundary(&self, f: &EdgeSet) -> VertexSet<W> {
        let mut inside = Bits::EMPTY;
        let mut outside = Bits::EMPTY;
        for (i, e) in self.edges.iter().enumerate() {
            if f.contains(i) {
                inside |= *e;
            } else {
                outside |= *e;
            }
        }
        inside & outside
    }

    /// `E(X)`: edges contained in `X`.
    pub fn edges_within(&self, x: VertexSet<W>) -> EdgeSet {
        let mut f = EdgeSet::with_capacity(self.m());
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_subset(&x) {
                f.insert(i);
            }
        }
        f
    }

    /// `|E(X)|`.
    pub fn count_edges_within(&self, x: VertexSet<W>) -> usize {
        self.edges.iter().filter(|e| e.is_subset(&x)).count()
    }

    /// `clos(F) = E(V(F))`.
    pub fn closure_edges(&self, f: &EdgeSet) -> EdgeSet {
        self.edges_within(self.vertices_of(f))
    }

    /// `κ(X) = X ∖ ∂(X)`.
    pub fn core(&self, x: VertexSet<W>) -> VertexSet<W> {
        x - self.vertex_boundary(x)
    }

    /// `κ(F) = V(F) ∖ ∂(F)`.
    pub fn edge_core(&self, f: &EdgeSet) -> VertexSet<W> {
        self.vertices_of(f) - self.edge_boundary(f)
    }

    /// `N[W]`: `W` plus every vertex sharing an edge with `W`.
    pub fn vertex_closure(&self, w: VertexSet<W>) -> VertexSet<W> {
        let mut c = w;
        for v in w.iter() {
            c |= self.adj[v];
        }
        c
    }

    /// `N(W) = N[W] ∖ W`.
    pub fn open_neighborhood(&self, w: VertexSet<W>) -> VertexSet<W> {
        self.vertex_closure(w) - w
    }

    /// Block test: nonempty connected core whose closure is `X`.
    pub fn is_block(&self, x: VertexSet<W>) -> bool {
        let k = self.core(x);
        !k.is_empty() && self.is_connected(k) && self.vertex_closure(k) == x
    }

    /// True iff `X` is nonempty and connected under [`Self::connected_components`].
    pub fn is_connected(&self, x: VertexSet<W>) -> bool {
        match x.first() {
            None => false,
            Some(v) => self.component_of(v, x) == x,
        }
    }

    /// Component of `v` inside `X` where two vertices are adjacent when they
    /// share a hyperedge. For graphs this is the component of `G[X]`.
    pub fn component_of(&self, v: usize, x: VertexSet<W>) -> VertexSet<W> {
        let mut comp = Bits::singleton(v);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = Bits::EMPTY;
            for u in frontier.iter() {
                next |= self.adj[u];
            }
            next = (next & x) - comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Partition of `X` into components under the shared-hyperedge relation,
    /// ordered by minimum vertex. For graphs these are the components of
    /// `G[X]`.
    pub fn connected_components(&self, x: VertexSet<W>) -> Vec<VertexSet<W>> {
        let mut rest = x;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_of(v, rest);
            rest -= c;
            out.push(c);
        }
        out
    }

    /// Components of `X` connected only through edges contained in `X`.
    /// Vertices on no such edge form singleton components.
    pub fn induced_components(&self, x: VertexSet<W>) -> Vec<VertexSet<W>> {
        let inner: Vec<Bits<W>> = self.edges.iter().filter(|e| e.is_subset(&x)).copied().collect();
        let mut rest = x;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let mut comp = Bits::singleton(v);
            loop {
                let mut grown = comp;
                for e in &inner {
                    if e.intersects(&comp) {
                        grown |= *e;
                    }
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            rest -= comp;
            out.push(comp);
        }
        out
    }

    /// `F⁺(X1, X2) = E(X1 ∪ X2) ∖ (E(X1) ∪ E(X2))`.
    pub fn fplus(&self, x1: VertexSet<W>, x2: VertexSet<W>) -> EdgeSet {
        let x = x1 | x2;
        let mut f = EdgeSet::with_capacity(self.m());
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_subset(&x) && !e.is_subset(&x1) && !e.is_subset(&x2) {
                f.insert(i);
            }
        }
        f
    }

    /// Order of a leaf mapped to edge `i` in a decomposition of all edges:
    /// `|e ∩ V(E ∖ {e})|`.
    pub fn leaf_order(&self, i: usize) -> usize {
        let e = self.edges[i];
        let mut others = Bits::EMPTY;
        for (j, f) in self.edges.iter().enumerate() {
            if j != i {
                others |= *f;
            }
        }
        (e & others).len()
    }

    /// Sub-hypergraph on the listed edges with vertices densely renumbered.
    /// Returns the hypergraph and the original index of each new vertex.
    pub fn restrict_to_edges(&self, edge_ids: &[usize]) -> (Hypergraph<W>, Vec<usize>) {
        let mut support = Bits::<W>::EMPTY;
        for &i in edge_ids {
            support |= self.edges[i];
        }
        let old: Vec<usize> = support.iter().collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (j, &v) in old.iter().enumerate() {
            new_of[v] = j;
        }
        let edges = edge_ids.iter().map(|&i| self.edges[i].iter().map(|v| new_of[v]).collect::<Bits<W>>()).collect();
        let h = Hypergraph::new(old.len(), edges).expect("restriction of a valid hypergraph");
        let labels = old.iter().map(|&v| self.labels[v]).collect();
        (h.with_labels(labels), old)
    }
}
