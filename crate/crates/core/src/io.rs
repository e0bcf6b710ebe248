//! Text formats: `.gr` graphs, `.hgr` hypergraphs and decomposition files.
//!
//! Vertex ids are 1-based in files and 0-based in memory. Decomposition
//! files list nodes in preorder as `<id> <parent|0> <edge|0>` after a header
//! `s bw <width> <nodes> <n> <m>`; a nonzero edge marks a leaf.

use std::collections::HashSet;

use crate::bits::{Bits, EdgeSet};
use crate::decomposition::{BranchDecomposition, Node};
use crate::error::{BwError, ParseError, Result};
use crate::graph::Hypergraph;

/// Parsed instance before it is bound to a bit width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub n: usize,
    /// 0-based vertex lists in file order.
    pub edges: Vec<Vec<usize>>,
    /// Text of the first comment line, if any.
    pub comment: Option<String>,
}

impl Instance {
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Builds a hypergraph with `64 * W` bit vertex sets.
    pub fn to_hypergraph<const W: usize>(&self) -> Result<Hypergraph<W>> {
        Hypergraph::from_edge_lists(self.n, &self.edges)
    }

    /// True iff every edge has two vertices.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }
}

/// Supported instance formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Gr,
    Hgr,
}

impl Format {
    /// Guess from a file name: `.hgr` is a hypergraph, anything else a graph.
    pub fn from_path(path: &std::path::Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("hgr") => Format::Hgr,
            _ => Format::Gr,
        }
    }
}

/// Parses text in the given format.
pub fn parse(text: &str, format: Format) -> Result<Instance, ParseError> {
    match format {
        Format::Gr => parse_gr(text),
        Format::Hgr => parse_hgr(text),
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    comment: Option<String>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), comment: None }
    }

    /// Next non-blank, non-comment line with its 1-based number.
    fn next_data(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if t == "c" || t.starts_with("c ") || t.starts_with("c\t") {
                if self.comment.is_none() {
                    self.comment = Some(t[1..].trim().to_string());
                }
                continue;
            }
            return Some((i + 1, t));
        }
        None
    }
}

fn parse_header(lines: &mut Lines<'_>, tag: &str) -> Result<(usize, usize), ParseError> {
    let (ln, line) = lines.next_data().ok_or_else(|| ParseError::new(0, format!("missing header `p {tag} <n> <m>`")))?;
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "p" || parts[1] != tag {
        return Err(ParseError::new(ln, format!("expected header `p {tag} <n> <m>`, found `{line}`")));
    }
    let n = parts[2].parse().map_err(|_| ParseError::new(ln, format!("bad vertex count `{}`", parts[2])))?;
    let m = parts[3].parse().map_err(|_| ParseError::new(ln, format!("bad edge count `{}`", parts[3])))?;
    Ok((n, m))
}

fn parse_vertex(tok: &str, n: usize, ln: usize) -> Result<usize, ParseError> {
    let v: usize = tok.parse().map_err(|_| ParseError::new(ln, format!("bad vertex id `{tok}`")))?;
    if v == 0 || v > n {
        return Err(ParseError::new(ln, format!("vertex {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

/// PACE `.gr`: header `p tw <n> <m>` and `m` lines `<u> <v>`. Repeated edges
/// are collapsed; self-loops are rejected.
pub fn parse_gr(text: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines::new(text);
    let (n, m) = parse_header(&mut lines, "tw")?;
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut count = 0;
    while let Some((ln, line)) = lines.next_data() {
        count += 1;
        if count > m {
            return Err(ParseError::new(ln, format!("more than {m} edges")));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(ParseError::new(ln, format!("expected `<u> <v>`, found `{line}`")));
        }
        let u = parse_vertex(toks[0], n, ln)?;
        let v = parse_vertex(toks[1], n, ln)?;
        if u == v {
            return Err(ParseError::new(ln, format!("self-loop on vertex {}", u + 1)));
        }
        if seen.insert((u.min(v), u.max(v))) {
            edges.push(vec![u.min(v), u.max(v)]);
        }
    }
    if count != m {
        return Err(ParseError::new(0, format!("header announces {m} edges, found {count}")));
    }
    Ok(Instance { n, edges, comment: lines.comment })
}

/// `.hgr`: header `p hbw <n> <m>` and `m` lines each listing the distinct
/// vertices of one hyperedge.
pub fn parse_hgr(text: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines::new(text);
    let (n, m) = parse_header(&mut lines, "hbw")?;
    let mut edges = Vec::with_capacity(m);
    while let Some((ln, line)) = lines.next_data() {
        if edges.len() == m {
            return Err(ParseError::new(ln, format!("more than {m} hyperedges")));
        }
        let mut e = Vec::new();
        for tok in line.split_whitespace() {
            let v = parse_vertex(tok, n, ln)?;
            if e.contains(&v) {
                return Err(ParseError::new(ln, format!("vertex {} repeated in one hyperedge", v + 1)));
            }
            e.push(v);
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(ParseError::new(0, format!("header announces {m} hyperedges, found {}", edges.len())));
    }
    Ok(Instance { n, edges, comment: lines.comment })
}

/// `.gr` text for a graph. Panics if some edge does not have two vertices.
pub fn write_gr<const W: usize>(h: &Hypergraph<W>) -> String {
    let mut out = format!("p tw {} {}\n", h.n(), h.m());
    for e in h.edges() {
        let v: Vec<usize> = e.iter().collect();
        assert_eq!(v.len(), 2, "write_gr needs a graph");
        out.push_str(&format!("{} {}\n", v[0] + 1, v[1] + 1));
    }
    out
}

/// `.hgr` text.
pub fn write_hgr<const W: usize>(h: &Hypergraph<W>) -> String {
    let mut out = format!("p hbw {} {}\n", h.n(), h.m());
    for e in h.edges() {
        let v: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&v.join(" "));
        out.push('\n');
    }
    out
}

/// Serializes a decomposition of `E(H)`; the header carries its width.
pub fn write_decomposition<const W: usize>(t: &BranchDecomposition, h: &Hypergraph<W>) -> String {
    let order = t.preorder();
    let mut id = vec![0usize; t.num_nodes()];
    for (i, &p) in order.iter().enumerate() {
        id[p] = i + 1;
    }
    let mut parent = vec![0usize; t.num_nodes()];
    for &p in &order {
        for c in t.children(p) {
            parent[c] = id[p];
        }
    }
    let mut out = format!("s bw {} {} {} {}\n", t.width(h), order.len(), h.n(), h.m());
    for &p in &order {
        let edge = match t.nodes()[p] {
            Node::Leaf(e) => e + 1,
            Node::Inner(..) => 0,
        };
        out.push_str(&format!("{} {} {}\n", id[p], parent[p], edge));
    }
    out
}

/// Contents of a decomposition file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionFile {
    pub width: usize,
    pub n: usize,
    pub m: usize,
    pub tree: BranchDecomposition,
}

/// Reads a decomposition file. The scope is all `m` edges; surjectivity and
/// width are left to [`BranchDecomposition::validate`].
pub fn read_decomposition(text: &str) -> Result<DecompositionFile, ParseError> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next_data().ok_or_else(|| ParseError::new(0, "missing header `s bw ...`"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 6 || parts[0] != "s" || parts[1] != "bw" {
        return Err(ParseError::new(ln, format!("expected `s bw <width> <nodes> <n> <m>`, found `{header}`")));
    }
    let num =
        |i: usize| -> Result<usize, ParseError> { parts[i].parse().map_err(|_| ParseError::new(ln, format!("bad number `{}`", parts[i]))) };
    let (width, count, n, m) = (num(2)?, num(3)?, num(4)?, num(5)?);
    let mut records = Vec::with_capacity(count);
    while let Some((ln, line)) = lines.next_data() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(ParseError::new(ln, format!("expected `<id> <parent> <edge>`, found `{line}`")));
        }
        let mut vals = [0usize; 3];
        for (slot, tok) in vals.iter_mut().zip(&toks) {
            *slot = tok.parse().map_err(|_| ParseError::new(ln, format!("bad number `{tok}`")))?;
        }
        records.push((ln, vals));
    }
    if records.len() != count {
        return Err(ParseError::new(0, format!("header announces {count} nodes, found {}", records.len())));
    }
    let mut index = vec![usize::MAX; count + 1];
    for (i, &(ln, [id, _, _])) in records.iter().enumerate() {
        if id == 0 || id > count || index[id] != usize::MAX {
            return Err(ParseError::new(ln, format!("node id {id} is out of range or repeated")));
        }
        index[id] = i;
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut root = None;
    for (i, &(ln, [_, parent, edge])) in records.iter().enumerate() {
        if edge > m {
            return Err(ParseError::new(ln, format!("edge {edge} out of range 1..={m}")));
        }
        if parent == 0 {
            if root.replace(i).is_some() {
                return Err(ParseError::new(ln, "more than one root"));
            }
        } else {
            if parent > count {
                return Err(ParseError::new(ln, format!("parent {parent} does not exist")));
            }
            children[index[parent]].push(i);
        }
    }
    if count > 0 && root.is_none() {
        return Err(ParseError::new(0, "no root node"));
    }
    let mut nodes = Vec::with_capacity(count);
    for (i, &(ln, [_, _, edge])) in records.iter().enumerate() {
        let node = match (edge, children[i].as_slice()) {
            (0, [a]) => Node::Inner(*a, None),
            (0, [a, b]) => Node::Inner(*a, Some(*b)),
            (0, []) => return Err(ParseError::new(ln, "internal node without children")),
            (0, _) => return Err(ParseError::new(ln, "node with more than two children")),
            (e, []) => Node::Leaf(e - 1),
            (_, _) => return Err(ParseError::new(ln, "leaf with children")),
        };
        nodes.push(node);
    }
    let mut scope = EdgeSet::with_capacity(m);
    scope.insert_range(..);
    Ok(DecompositionFile { width, n, m, tree: BranchDecomposition::from_parts(m, nodes, root, scope) })
}

/// Re-parses an emitted decomposition and checks it against `h` and `k`.
/// Returns the recomputed width.
pub fn check_decomposition_text<const W: usize>(text: &str, h: &Hypergraph<W>, k: usize) -> Result<usize> {
    let file = read_decomposition(text)?;
    if file.n != h.n() || file.m != h.m() {
        return Err(BwError::Invariant(format!("decomposition is for n={} m={}, instance has n={} m={}", file.n, file.m, h.n(), h.m())));
    }
    let width = file.tree.validate(h, k).map_err(|e| BwError::Invariant(e.to_string()))?;
    if width != file.width {
        return Err(BwError::Invariant(format!("header width {} differs from recomputed width {width}", file.width)));
    }
    Ok(width)
}

/// Builds a vertex set from 1-based labels, for tests and the C ABI.
pub fn vertex_set_from_labels<const W: usize>(labels: &[usize]) -> Bits<W> {
    labels.iter().map(|&v| v - 1).collect()
}
