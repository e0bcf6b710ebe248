//! Relaxed branch-decompositions: evaluation, composition, injectivity
//! normalization and validation.
//!
//! A decomposition is a rooted binary tree stored as an index arena. Leaves
//! map to edge indices of a host hypergraph; several leaves may map to the
//! same edge. Middle sets use the rooted convention where the upper edge set
//! of a node also contains every host edge outside the scope.

use crate::bits::{Bits, EdgeSet, VertexSet};
use crate::graph::Hypergraph;

/// Tree node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// Leaf mapped to an edge index.
    Leaf(usize),
    /// Internal node with one or two children.
    Inner(usize, Option<usize>),
}

/// First violated structural or width invariant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvalidDecomposition {
    #[error("decomposition has no root but its scope is nonempty")]
    MissingRoot,
    #[error("node {0} is referenced more than once or lies on a cycle")]
    NotATree(usize),
    #[error("node {0} is unreachable from the root")]
    Unreachable(usize),
    #[error("node {0} refers to a child outside the arena")]
    DanglingChild(usize),
    #[error("leaf {node} maps to edge {edge} outside the scope")]
    EdgeOutsideScope { node: usize, edge: usize },
    #[error("edge {0} of the scope has no leaf")]
    NotSurjective(usize),
    #[error("decomposition is over {found} edges but the hypergraph has {expected}")]
    EdgeCountMismatch { found: usize, expected: usize },
    #[error("width {width} exceeds the claimed width {claimed}")]
    WidthExceeded { width: usize, claimed: usize },
}

/// Relaxed branch-decomposition of an edge set of a hypergraph with `m` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDecomposition {
    m: usize,
    nodes: Vec<Node>,
    root: Option<usize>,
    scope: EdgeSet,
}

impl BranchDecomposition {
    /// Decomposition of the empty edge set.
    pub fn empty(m: usize) -> Self {
        BranchDecomposition { m, nodes: Vec::new(), root: None, scope: EdgeSet::with_capacity(m) }
    }

    /// Single leaf mapped to edge `e`.
    pub fn leaf(m: usize, e: usize) -> Self {
        let mut scope = EdgeSet::with_capacity(m);
        scope.insert(e);
        BranchDecomposition { m, nodes: vec![Node::Leaf(e)], root: Some(0), scope }
    }

    /// Left-leaning caterpillar over `edges` in the given order.
    pub fn caterpillar(m: usize, edges: &[usize]) -> Self {
        let mut t = Self::empty(m);
        for &e in edges {
            t = t.compose(Self::leaf(m, e));
        }
        t
    }

    /// Caterpillar over the edges of `f` in increasing index order.
    pub fn caterpillar_of(m: usize, f: &EdgeSet) -> Self {
        Self::caterpillar(m, &f.ones().collect::<Vec<_>>())
    }

    /// Builds a decomposition from raw parts. `validate` checks the result.
    pub fn from_parts(m: usize, nodes: Vec<Node>, root: Option<usize>, scope: EdgeSet) -> Self {
        let mut scope = scope;
        scope.grow(m);
        BranchDecomposition { m, nodes, root, scope }
    }

    /// New root whose children are the roots of `self` and `other`.
    /// Composition with an empty decomposition returns the other operand.
    pub fn compose(self, other: Self) -> Self {
        assert_eq!(self.m, other.m, "decompositions over different hosts");
        let (Some(r1), Some(r2)) = (self.root, other.root) else {
            return if self.root.is_some() { self.merge_scope(other.scope) } else { other.merge_scope(self.scope) };
        };
        let off = self.nodes.len();
        let mut nodes = self.nodes;
        nodes.extend(other.nodes.into_iter().map(|nd| match nd {
            Node::Leaf(e) => Node::Leaf(e),
            Node::Inner(a, b) => Node::Inner(a + off, b.map(|b| b + off)),
        }));
        nodes.push(Node::Inner(r1, Some(r2 + off)));
        let root = Some(nodes.len() - 1);
        let mut scope = self.scope;
        scope.union_with(&other.scope);
        BranchDecomposition { m: self.m, nodes, root, scope }
    }

    fn merge_scope(mut self, other: EdgeSet) -> Self {
        self.scope.union_with(&other);
        self
    }

    /// Composes a sequence left to right.
    pub fn compose_all<I: IntoIterator<Item = Self>>(m: usize, parts: I) -> Self {
        parts.into_iter().fold(Self::empty(m), Self::compose)
    }

    /// Number of host edges.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    /// Edge set decomposed.
    pub fn scope(&self) -> &EdgeSet {
        &self.scope
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Children of node `p`.
    pub fn children(&self, p: usize) -> impl Iterator<Item = usize> {
        let (a, b) = match self.nodes[p] {
            Node::Leaf(_) => (None, None),
            Node::Inner(a, b) => (Some(a), b),
        };
        a.into_iter().chain(b)
    }

    /// Nodes in preorder (root first, left before right).
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack: Vec<usize> = self.root.into_iter().collect();
        while let Some(p) = stack.pop() {
            out.push(p);
            if let Node::Inner(a, b) = self.nodes[p] {
                if let Some(b) = b {
                    stack.push(b);
                }
                stack.push(a);
            }
        }
        out
    }

    /// Leaf edges in preorder.
    pub fn leaf_edges(&self) -> Vec<usize> {
        self.preorder()
            .into_iter()
            .filter_map(|p| match self.nodes[p] {
                Node::Leaf(e) => Some(e),
                Node::Inner(..) => None,
            })
            .collect()
    }

    /// Every internal node has two children.
    pub fn is_full(&self) -> bool {
        self.nodes.iter().all(|nd| !matches!(nd, Node::Inner(_, None)))
    }

    /// No two leaves map to the same edge.
    pub fn is_injective(&self) -> bool {
        let mut seen = EdgeSet::with_capacity(self.m);
        for e in self.leaf_edges() {
            if seen.put(e) {
                return false;
            }
        }
        true
    }

    /// Middle set of every node, indexed by node id.
    pub fn middle_sets<const W: usize>(&self, h: &Hypergraph<W>) -> Vec<VertexSet<W>> {
        assert_eq!(h.m(), self.m, "host hypergraph edge count mismatch");
        let mut mids = vec![Bits::EMPTY; self.nodes.len()];
        let order = self.preorder();
        if order.is_empty() {
            return mids;
        }
        // Subtree of order[i] is order[i..end[i]].
        let mut pos = vec![0usize; self.nodes.len()];
        for (i, &p) in order.iter().enumerate() {
            pos[p] = i;
        }
        let mut end = vec![0usize; self.nodes.len()];
        for &p in order.iter().rev() {
            end[p] = self.children(p).map(|c| end[c]).max().unwrap_or(pos[p] + 1);
        }
        let mut total = vec![0u32; self.m];
        for &p in &order {
            if let Node::Leaf(e) = self.nodes[p] {
                total[e] += 1;
            }
        }
        let mut below = vec![0u32; self.m];
        for &p in &order {
            below.iter_mut().for_each(|c| *c = 0);
            let mut lower = Bits::EMPTY;
            for &q in &order[pos[p]..end[p]] {
                if let Node::Leaf(e) = self.nodes[q] {
                    below[e] += 1;
                    lower |= h.edge(e);
                }
            }
            let mut upper = Bits::EMPTY;
            for e in 0..self.m {
                if !self.scope.contains(e) || below[e] < total[e] {
                    upper |= h.edge(e);
                }
            }
            mids[p] = lower & upper;
        }
        mids
    }

    /// `mid(p) = V(L(p)) ∩ V(U(p))`.
    pub fn middle_set<const W: usize>(&self, h: &Hypergraph<W>, p: usize) -> VertexSet<W> {
        self.middle_sets(h)[p]
    }

    /// Maximum order over all nodes (0 for the empty decomposition).
    pub fn width<const W: usize>(&self, h: &Hypergraph<W>) -> usize {
        self.middle_sets(h).iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Keeps the first leaf (in preorder) of each edge, drops the others and
    /// contracts internal nodes left with a single child. Injective inputs are
    /// returned unchanged.
    pub fn make_injective(&self) -> Self {
        if self.is_injective() {
            return self.clone();
        }
        let mut seen = EdgeSet::with_capacity(self.m);
        let mut nodes = Vec::with_capacity(self.nodes.len());
        let root = self.root.and_then(|r| self.rebuild(r, &mut seen, &mut nodes));
        BranchDecomposition { m: self.m, nodes, root, scope: self.scope.clone() }
    }

    fn rebuild(&self, p: usize, seen: &mut EdgeSet, out: &mut Vec<Node>) -> Option<usize> {
        match self.nodes[p] {
            Node::Leaf(e) => {
                if seen.put(e) {
                    None
                } else {
                    out.push(Node::Leaf(e));
                    Some(out.len() - 1)
                }
            }
            Node::Inner(a, b) => {
                let a = self.rebuild(a, seen, out);
                let b = b.and_then(|b| self.rebuild(b, seen, out));
                match (a, b) {
                    (Some(a), Some(b)) => {
                        out.push(Node::Inner(a, Some(b)));
                        Some(out.len() - 1)
                    }
                    (x, None) | (None, x) => x,
                }
            }
        }
    }

    /// Renames edges through `map` (old index to new index) over a host with
    /// `m` edges.
    pub fn relabel_edges(&self, m: usize, map: &[usize]) -> Self {
        let nodes = self
            .nodes
            .iter()
            .map(|nd| match *nd {
                Node::Leaf(e) => Node::Leaf(map[e]),
                other => other,
            })
            .collect();
        let mut scope = EdgeSet::with_capacity(m);
        for e in self.scope.ones() {
            scope.insert(map[e]);
        }
        BranchDecomposition { m, nodes, root: self.root, scope }
    }

    /// Replaces every leaf `e` by `f(e)`, a decomposition over a host with
    /// `m` edges. Empty replacements drop the leaf.
    pub fn substitute_leaves(&self, m: usize, mut f: impl FnMut(usize) -> Self) -> Self {
        match self.root {
            Some(r) => self.substitute_at(r, &mut f),
            None => Self::empty(m),
        }
    }

    fn substitute_at(&self, p: usize, f: &mut impl FnMut(usize) -> Self) -> Self {
        match self.nodes[p] {
            Node::Leaf(e) => f(e),
            Node::Inner(a, None) => self.substitute_at(a, f),
            Node::Inner(a, Some(b)) => self.substitute_at(a, f).compose(self.substitute_at(b, f)),
        }
    }

    /// Subdivides the edge above the first leaf of `existing` and hangs a new
    /// leaf for `new` there. Returns `false` when `existing` has no leaf.
    pub fn attach_sibling_leaf(&mut self, existing: usize, new: usize) -> bool {
        let Some(p) = self.preorder().into_iter().find(|&p| self.nodes[p] == Node::Leaf(existing)) else {
            return false;
        };
        self.nodes.push(Node::Leaf(existing));
        let moved = self.nodes.len() - 1;
        self.nodes.push(Node::Leaf(new));
        let fresh = self.nodes.len() - 1;
        self.nodes[p] = Node::Inner(moved, Some(fresh));
        self.scope.insert(new);
        true
    }

    /// Checks the tree structure, surjectivity onto the scope, that the host
    /// has `m` edges, and that the width is at most `claimed`. Returns the
    /// width.
    pub fn validate<const W: usize>(&self, h: &Hypergraph<W>, claimed: usize) -> Result<usize, InvalidDecomposition> {
        if h.m() != self.m || self.scope.len() < self.m {
            return Err(InvalidDecomposition::EdgeCountMismatch { found: self.m, expected: h.m() });
        }
        let Some(root) = self.root else {
            if let Some(e) = self.scope.ones().next() {
                let _ = e;
                return Err(InvalidDecomposition::MissingRoot);
            }
            return Ok(0);
        };
        let k = self.nodes.len();
        if root >= k {
            return Err(InvalidDecomposition::DanglingChild(root));
        }
        let mut visited = vec![false; k];
        let mut stack = vec![root];
        while let Some(p) = stack.pop() {
            if visited[p] {
                return Err(InvalidDecomposition::NotATree(p));
            }
            visited[p] = true;
            match self.nodes[p] {
                Node::Leaf(e) => {
                    if e >= self.m || !self.scope.contains(e) {
                        return Err(InvalidDecomposition::EdgeOutsideScope { node: p, edge: e });
                    }
                }
                Node::Inner(a, b) => {
                    for c in std::iter::once(a).chain(b) {
                        if c >= k {
                            return Err(InvalidDecomposition::DanglingChild(p));
                        }
                        stack.push(c);
                    }
                }
            }
        }
        if let Some(p) = visited.iter().position(|&v| !v) {
            return Err(InvalidDecomposition::Unreachable(p));
        }
        let mut covered = EdgeSet::with_capacity(self.m);
        for e in self.leaf_edges() {
            covered.insert(e);
        }
        if let Some(e) = self.scope.difference(&covered).next() {
            return Err(InvalidDecomposition::NotSurjective(e));
        }
        let width = self.width(h);
        if width > claimed {
            return Err(InvalidDecomposition::WidthExceeded { width, claimed });
        }
        Ok(width)
    }

    /// `validate` as a predicate.
    pub fn is_valid<const W: usize>(&self, h: &Hypergraph<W>, claimed: usize) -> bool {
        self.validate(h, claimed).is_ok()
    }
}
