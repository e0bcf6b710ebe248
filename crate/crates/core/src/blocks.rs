//! Blocks, block derivations and mid-triple decisions for graphs.
//!
//! A block is a vertex set `B` whose core `κ(B)` is nonempty and connected
//! with `N[κ(B)] = B`. A block derivation of `B` is a family of blocks inside
//! `B` with pairwise disjoint cores; its separator is `S = B ∖ ⋃ κ(A)`.
//! A mid-triple `(M1, M2, M3)` of subsets of `S` has all pairwise unions equal
//! to `S`, `∂(B) ⊆ M3`, and each `∂(A)` inside `M1` or `M2`.
//!
//! All functions here take graphs with at most 64 vertices.

use crate::bits::{submasks, Bits, VertexSet};
use crate::error::{BwError, Result};
use crate::graph::Hypergraph;

/// Vertex set of a graph with at most 64 vertices.
pub type Set = VertexSet<1>;

#[inline]
pub(crate) fn raw(x: Set) -> u64 {
    x.0[0]
}

#[inline]
pub(crate) fn wrap(x: u64) -> Set {
    Bits([x])
}

#[inline]
pub(crate) fn pop(x: u64) -> usize {
    x.count_ones() as usize
}

/// Adjacency masks of a simple graph.
#[derive(Debug, Clone)]
pub(crate) struct G64 {
    pub n: usize,
    pub adj: Vec<u64>,
    pub edges: Vec<u64>,
    pub leaf_order: Vec<usize>,
}

impl G64 {
    pub fn new(h: &Hypergraph<1>, alg: &'static str) -> Result<Self> {
        if let Some(e) = h.edges().iter().find(|e| e.len() != 2) {
            return Err(BwError::NotAGraph { alg, size: e.len() });
        }
        Ok(G64 {
            n: h.n(),
            adj: (0..h.n()).map(|v| raw(h.neighbors(v))).collect(),
            edges: h.edges().iter().map(|&e| raw(e)).collect(),
            leaf_order: (0..h.m()).map(|i| h.leaf_order(i)).collect(),
        })
    }

    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Open neighborhood `N(X)`.
    #[inline]
    pub fn nb(&self, x: u64) -> u64 {
        let mut out = 0;
        let mut rest = x;
        while rest != 0 {
            out |= self.adj[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out & !x
    }

    #[inline]
    pub fn boundary(&self, x: u64) -> u64 {
        let mut b = 0;
        let mut rest = x;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adj[v] & !x != 0 {
                b |= 1 << v;
            }
        }
        b
    }

    #[inline]
    pub fn core(&self, x: u64) -> u64 {
        x & !self.boundary(x)
    }

    /// Component of `v` in `G[X]`.
    pub fn comp_of(&self, v: usize, x: u64) -> u64 {
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let next = self.nb(frontier) & x & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Components of `G[X]` ordered by smallest vertex.
    pub fn components(&self, x: u64) -> Vec<u64> {
        let mut rest = x;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.comp_of(rest.trailing_zeros() as usize, rest);
            rest &= !c;
            out.push(c);
        }
        out
    }

    pub fn is_block(&self, x: u64) -> bool {
        let k = self.core(x);
        k != 0 && self.comp_of(k.trailing_zeros() as usize, k) == k && (k | self.nb(k)) == x
    }

    pub fn edges_within(&self, x: u64) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i] & !x == 0).collect()
    }

    pub fn count_edges_within(&self, x: u64, cap: usize) -> (usize, Option<usize>) {
        let mut count = 0;
        let mut first = None;
        for (i, &e) in self.edges.iter().enumerate() {
            if e & !x == 0 {
                count += 1;
                first.get_or_insert(i);
                if count >= cap {
                    break;
                }
            }
        }
        (count, first)
    }

    /// Calls `f(C, N(C))` for every connected `C` with `anchor ∈ C ⊆ allowed`,
    /// `|C| ≤ max_size`, `|N(C)| ≤ limit.total` and `|N(C) ∖ free| ≤
    /// limit.fresh`. Each set is reported once. `f` returns `false` to stop;
    /// the result is `false` if stopped.
    pub fn for_each_connected<F>(&self, anchor: usize, allowed: u64, free: u64, limit: NbLimit, f: &mut F) -> bool
    where
        F: FnMut(u64, u64) -> bool,
    {
        self.connected_rec(1 << anchor, 0, allowed, free, limit, f)
    }

    fn connected_rec<F>(&self, c: u64, excluded: u64, allowed: u64, free: u64, limit: NbLimit, f: &mut F) -> bool
    where
        F: FnMut(u64, u64) -> bool,
    {
        let nc = self.nb(c);
        // Excluded vertices and neighbors outside `allowed` stay in N(C).
        let fixed = nc & !allowed;
        if pop(fixed) + pop(excluded) > limit.total || pop(fixed & !free) + pop(excluded) > limit.fresh {
            return true;
        }
        let frontier = nc & allowed & !excluded;
        if frontier == 0 || pop(c) == limit.size {
            return if pop(nc) <= limit.total && pop(nc & !free) <= limit.fresh { f(c, nc) } else { true };
        }
        let u = 1u64 << frontier.trailing_zeros();
        self.connected_rec(c | u, excluded, allowed, free, limit, f) && self.connected_rec(c, excluded | u, allowed, free, limit, f)
    }
}

/// Bounds for [`G64::for_each_connected`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct NbLimit {
    /// Largest `|C|`.
    pub size: usize,
    /// Largest `|N(C)|`.
    pub total: usize,
    /// Largest `|N(C) ∖ free|`.
    pub fresh: usize,
}

impl NbLimit {
    pub fn neighborhood(size: usize, total: usize) -> Self {
        NbLimit { size, total, fresh: total }
    }
}

/// Every connected `C` with `|C| = c` and `|N(C)| = b`, each once, ordered by
/// smallest vertex and then by discovery.
pub fn enumerate_connected_sets(g: &Hypergraph<1>, c: usize, b: usize) -> Result<Vec<Set>> {
    let g = G64::new(g, "connected-set enumeration")?;
    let mut out = Vec::new();
    if c == 0 {
        return Ok(out);
    }
    for v in 0..g.n {
        let allowed = g.full() & !((2u64 << v) - 1);
        g.for_each_connected(v, allowed, 0, NbLimit::neighborhood(c, b), &mut |set, nc| {
            if pop(set) == c && pop(nc) == b {
                out.push(wrap(set));
            }
            true
        });
    }
    Ok(out)
}

/// Every block `B` with `|∂(B)| ≤ k`, sorted by core size then by bits.
pub fn list_blocks(g: &Hypergraph<1>, k: usize) -> Result<Vec<Set>> {
    let g = G64::new(g, "block listing")?;
    Ok(list_blocks_raw(&g, k).into_iter().map(wrap).collect())
}

pub(crate) fn list_blocks_raw(g: &G64, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for v in 0..g.n {
        let allowed = g.full() & !((2u64 << v) - 1);
        g.for_each_connected(v, allowed, 0, NbLimit::neighborhood(g.n, k), &mut |c, nc| {
            if g.core(c | nc) == c {
                out.push(c | nc);
            }
            true
        });
    }
    out.sort_by_key(|&b| (pop(g.core(b)), b));
    out
}

/// A block `B` with parts whose cores are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockDerivation {
    /// The block `B`.
    pub block: Set,
    /// Member blocks, each inside `B`.
    pub parts: Vec<Set>,
    /// `K`: union of the part cores.
    pub cores: Set,
    /// `S = B ∖ K`.
    pub separator: Set,
}

impl BlockDerivation {
    /// Builds a derivation from a block and parts, computing `K` and `S`.
    pub fn new(g: &Hypergraph<1>, block: Set, parts: Vec<Set>) -> Self {
        let cores = parts.iter().fold(Set::EMPTY, |acc, &a| acc | g.core(a));
        BlockDerivation { block, separator: block - cores, parts, cores }
    }

    /// Structural invariants: every member is a block inside `B`, cores are
    /// pairwise disjoint, and `K`, `S` match.
    pub fn is_valid(&self, g: &Hypergraph<1>) -> bool {
        let mut seen = Set::EMPTY;
        for &a in &self.parts {
            let k = g.core(a);
            if !g.is_block(a) || !a.is_subset(&self.block) || k.intersects(&seen) {
                return false;
            }
            seen |= k;
        }
        g.is_block(self.block) && seen == self.cores && self.separator == self.block - self.cores
    }
}

/// The unique derivation with `K(D) = K` and `S(D) = S`, if any: `B = K ∪ S`
/// and the parts are the closures of the components of `G[K]`.
pub fn derivation_from_ks(g: &Hypergraph<1>, k: Set, s: Set) -> Result<Option<BlockDerivation>> {
    if k.intersects(&s) {
        return Err(BwError::InvalidInput("K and S must be disjoint".into()));
    }
    let g64 = G64::new(g, "derivation")?;
    Ok(derivation_from_ks_raw(&g64, raw(k), raw(s)).map(|(b, parts)| BlockDerivation {
        block: wrap(b),
        parts: parts.into_iter().map(wrap).collect(),
        cores: k,
        separator: s,
    }))
}

pub(crate) fn derivation_from_ks_raw(g: &G64, k: u64, s: u64) -> Option<(u64, Vec<u64>)> {
    let b = k | s;
    if !g.is_block(b) {
        return None;
    }
    let mut parts = Vec::new();
    for c in g.components(k) {
        let nc = g.nb(c);
        if nc & !s != 0 || g.core(c | nc) != c {
            return None;
        }
        parts.push(c | nc);
    }
    Some((b, parts))
}

/// All block derivations of `G`, one per valid `(K, S)` pair. Visits `3^n`
/// pairs lazily.
pub fn enumerate_derivations(g: &Hypergraph<1>) -> Result<impl Iterator<Item = BlockDerivation> + '_> {
    let g64 = G64::new(g, "derivation enumeration")?;
    let full = g64.full();
    Ok((0..=full).flat_map(move |k| {
        let g64 = g64.clone();
        submasks(full & !k).filter_map(move |s| {
            derivation_from_ks_raw(&g64, k, s).map(|(b, parts)| BlockDerivation {
                block: wrap(b),
                parts: parts.into_iter().map(wrap).collect(),
                cores: wrap(k),
                separator: wrap(s),
            })
        })
    }))
}

/// `(M1, M2, M3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MidTriple {
    pub m1: Set,
    pub m2: Set,
    pub m3: Set,
}

impl MidTriple {
    pub fn order(&self) -> usize {
        self.m1.len().max(self.m2.len()).max(self.m3.len())
    }
}

/// Checks the mid-triple conditions for `d`.
pub fn is_mid_triple(g: &Hypergraph<1>, d: &BlockDerivation, t: &MidTriple) -> bool {
    let s = d.separator;
    let all_in = t.m1.is_subset(&s) && t.m2.is_subset(&s) && t.m3.is_subset(&s);
    let unions = (t.m1 | t.m2) == s && (t.m2 | t.m3) == s && (t.m3 | t.m1) == s;
    let parts_ok = d.parts.iter().all(|&a| {
        let bd = g.vertex_boundary(a);
        bd.is_subset(&t.m1) || bd.is_subset(&t.m2)
    });
    all_in && unions && g.vertex_boundary(d.block).is_subset(&t.m3) && parts_ok
}

/// Decision data of a derivation: separator, `∂(B)` and each `∂(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct OrderInput {
    pub s: u64,
    pub db: u64,
    pub parts: Vec<u64>,
}

impl OrderInput {
    pub fn of(g: &Hypergraph<1>, d: &BlockDerivation) -> Self {
        OrderInput {
            s: raw(d.separator),
            db: raw(g.vertex_boundary(d.block)),
            parts: d.parts.iter().map(|&a| raw(g.vertex_boundary(a))).collect(),
        }
    }
}

fn is_subbicover(s1: u64, s2: u64, s3: u64) -> bool {
    s1 & s2 & s3 == 0
}

fn bicover_conditions(size_s: usize, k: usize, s: [u64; 3]) -> bool {
    if 2 * size_s > 3 * k {
        return false;
    }
    s.iter().all(|&x| pop(x) <= k) && [(0, 1), (1, 2), (0, 2)].iter().all(|&(i, j)| pop(s[i] & s[j]) + size_s <= 2 * k)
}

/// Whether some bicover of a set of size `size_s` with order at most `k`
/// extends the subbicover `(s1, s2, s3)`. Returns `false` when
/// `|S| > 3k/2`, where no bicover of order `k` exists.
pub fn bicover_extendable(size_s: usize, k: usize, s1: Set, s2: Set, s3: Set) -> Result<bool> {
    let (s1, s2, s3) = (raw(s1), raw(s2), raw(s3));
    if !is_subbicover(s1, s2, s3) {
        return Err(BwError::InvalidInput("an element lies in all three seed sets".into()));
    }
    Ok(bicover_conditions(size_s, k, [s1, s2, s3]))
}

/// A bicover of `s` of order at most `k` extending `seeds`, built one
/// element at a time with [`bicover_extendable`] as the feasibility test.
pub(crate) fn extend_bicover(s: u64, k: usize, seeds: [u64; 3]) -> Option<[u64; 3]> {
    let size = pop(s);
    if !is_subbicover(seeds[0], seeds[1], seeds[2]) || !bicover_conditions(size, k, seeds) {
        return None;
    }
    let mut r = seeds;
    let mut rest = s;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest &= rest - 1;
        let inside: Vec<usize> = (0..3).filter(|&i| r[i] & bit != 0).collect();
        if inside.len() >= 2 {
            continue;
        }
        let options: &[(usize, usize)] = &[(0, 1), (1, 2), (0, 2)];
        let next = options.iter().filter(|&&(a, b)| inside.iter().all(|i| *i == a || *i == b)).find_map(|&(a, b)| {
            let mut t = r;
            t[a] |= bit;
            t[b] |= bit;
            bicover_conditions(size, k, t).then_some(t)
        })?;
        r = next;
    }
    Some(r)
}

/// Mid-triple from a part assignment, or `None` if no mid-triple of order at
/// most `k` conforms to it. Bit `i` of `assignment` puts part `i` in `𝔅2`.
pub(crate) fn triple_via_bipartition(inp: &OrderInput, k: usize, assignment: u64) -> Option<[u64; 3]> {
    let mut d1 = 0;
    let mut d2 = 0;
    for (i, &bd) in inp.parts.iter().enumerate() {
        if assignment >> i & 1 == 1 {
            d2 |= bd;
        } else {
            d1 |= bd;
        }
    }
    let d3 = inp.db;
    let i = d1 & d2 & d3;
    let ki = k.checked_sub(pop(i))?;
    let r = extend_bicover(inp.s & !i, ki, [d1 & !i, d2 & !i, d3 & !i])?;
    Some([r[0] | i, r[1] | i, r[2] | i])
}

/// Whether a mid-triple of order at most `k` conforms to the bipartition
/// given by `assignment` (bit `i` set puts part `i` in the second class).
pub fn order_leq_via_bipartition(g: &Hypergraph<1>, d: &BlockDerivation, k: usize, assignment: u64) -> bool {
    triple_via_bipartition(&OrderInput::of(g, d), k, assignment).is_some()
}

/// Bellman subset-sum table: `reach[t]` iff some subset of `values` sums to
/// `t`, for `t ≤ target`.
fn subset_sum_table(values: &[usize], target: usize) -> Vec<Vec<bool>> {
    let mut rows = Vec::with_capacity(values.len() + 1);
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    rows.push(reach.clone());
    for &v in values {
        for t in (v..=target).rev() {
            if reach[t - v] {
                reach[t] = true;
            }
        }
        rows.push(reach.clone());
    }
    rows
}

/// Whether some subsequence of `values` sums to `target`.
pub fn subset_sum_reachable(values: &[usize], target: usize) -> bool {
    subset_sum_witness(values, target).is_some()
}

/// Indices of a subsequence summing to `target`.
pub fn subset_sum_witness(values: &[usize], target: usize) -> Option<Vec<usize>> {
    let rows = subset_sum_table(values, target);
    if !rows[values.len()][target] {
        return None;
    }
    let mut chosen = Vec::new();
    let mut t = target;
    for i in (0..values.len()).rev() {
        if !rows[i][t] {
            chosen.push(i);
            t -= values[i];
        }
    }
    chosen.reverse();
    Some(chosen)
}

/// k-full mid-triple with `M1 ∩ M2 = I`, or `None`.
pub(crate) fn triple_via_kfull(inp: &OrderInput, k: usize, i: u64) -> Option<[u64; 3]> {
    let s = inp.s;
    let rest = s & !i;
    // Smallest M3 is (S ∖ I) ∪ (∂B ∩ I).
    let m3 = rest | (inp.db & i);
    if pop(m3) > k {
        return None;
    }
    // Colour classes: vertices joined by a common part boundary share a side.
    let verts: Vec<usize> = (0..64).filter(|&v| rest >> v & 1 == 1).collect();
    let mut class: Vec<u64> = verts.iter().map(|&v| 1u64 << v).collect();
    for &bd in &inp.parts {
        let span = bd & rest;
        if span == 0 {
            continue;
        }
        let mut merged = span;
        let mut kept = Vec::with_capacity(class.len());
        for c in class {
            if c & span != 0 {
                merged |= c;
            } else {
                kept.push(c);
            }
        }
        kept.push(merged);
        class = kept;
    }
    let target = k.checked_sub(pop(i))?;
    let sizes: Vec<usize> = class.iter().map(|&c| pop(c)).collect();
    let pick = subset_sum_witness(&sizes, target)?;
    let side1 = pick.iter().fold(0, |acc, &j| acc | class[j]);
    let m1 = i | side1;
    let m2 = i | (rest & !side1);
    debug_assert!(pop(m1) == k && pop(m2) == k);
    Some([m1, m2, m3])
}

/// Whether a k-full mid-triple of order `k` with `M1 ∩ M2 = I` exists.
/// Requires `|S| ≥ k`, `I ⊆ S` and `|I| = 2k − |S|`.
pub fn order_leq_via_kfull(g: &Hypergraph<1>, d: &BlockDerivation, k: usize, i: Set) -> Result<bool> {
    let s = d.separator;
    if s.len() < k || !i.is_subset(&s) || i.len() + s.len() != 2 * k {
        return Err(BwError::InvalidInput(format!(
            "k-full decision needs |S| >= k, I ⊆ S and |I| = 2k - |S| (|S| = {}, |I| = {}, k = {k})",
            s.len(),
            i.len()
        )));
    }
    Ok(triple_via_kfull(&OrderInput::of(g, d), k, raw(i)).is_some())
}

/// How the order of a derivation is decided once `k < |S| ≤ 3k/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderStrategy {
    /// The cheaper of the bipartition and k-full routes.
    #[default]
    Auto,
    /// All bipartitions of the parts.
    Bipartition,
    /// All sets `I` of size `2k − |S|`.
    KFull,
    /// Depth-first assignment of parts with boundary-size pruning.
    Backtrack,
}

fn binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Sets of exactly `r` elements of `s`, in increasing bit order of the
/// lowest differing element.
pub(crate) fn subsets_of_size(s: u64, r: usize) -> impl Iterator<Item = u64> {
    let elems: Vec<u64> = (0..64).filter(|&v| s >> v & 1 == 1).map(|v| 1u64 << v).collect();
    let n = elems.len();
    let mut idx: Option<Vec<usize>> = (r <= n).then(|| (0..r).collect());
    std::iter::from_fn(move || {
        let cur = idx.as_mut()?;
        let out = cur.iter().fold(0, |acc, &j| acc | elems[j]);
        // Advance to the next combination.
        let mut pos = r;
        loop {
            if pos == 0 {
                idx = None;
                break;
            }
            pos -= 1;
            if cur[pos] < n - r + pos {
                cur[pos] += 1;
                for j in pos + 1..r {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

fn backtrack(inp: &OrderInput, k: usize, order: &[usize], depth: usize, d: [u64; 2], assignment: u64) -> Option<[u64; 3]> {
    if depth == order.len() {
        return triple_via_bipartition(inp, k, assignment);
    }
    let p = order[depth];
    let bd = inp.parts[p];
    for side in 0..2 {
        // The first part is fixed to side 0 because M1 and M2 are symmetric.
        if depth == 0 && side == 1 {
            break;
        }
        let mut nd = d;
        nd[side] |= bd;
        if pop(nd[side]) > k {
            continue;
        }
        let na = if side == 1 { assignment | 1 << p } else { assignment };
        if let Some(t) = backtrack(inp, k, order, depth + 1, nd, na) {
            return Some(t);
        }
    }
    None
}

/// A mid-triple of order at most `k`, or `None`.
pub(crate) fn find_triple(inp: &OrderInput, k: usize, strategy: OrderStrategy) -> Option<[u64; 3]> {
    let s = pop(inp.s);
    if s <= k {
        return Some([inp.s, 0, inp.s]);
    }
    if 2 * s > 3 * k {
        return None;
    }
    let p = inp.parts.len();
    let strategy = match strategy {
        OrderStrategy::Auto => {
            let bip = if p == 0 { 1.0 } else { 2f64.powi(p as i32 - 1) };
            if bip <= binomial(s, 2 * k - s) {
                OrderStrategy::Bipartition
            } else {
                OrderStrategy::KFull
            }
        }
        other => other,
    };
    match strategy {
        OrderStrategy::Bipartition => {
            let count: u64 = if p == 0 { 1 } else { 1u64 << (p - 1) };
            (0..count).find_map(|a| triple_via_bipartition(inp, k, a << 1))
        }
        OrderStrategy::KFull => subsets_of_size(inp.s, 2 * k - s).find_map(|i| triple_via_kfull(inp, k, i)),
        OrderStrategy::Backtrack => {
            let mut order: Vec<usize> = (0..p).collect();
            order.sort_by_key(|&i| std::cmp::Reverse(pop(inp.parts[i])));
            if p == 0 {
                return triple_via_bipartition(inp, k, 0);
            }
            backtrack(inp, k, &order, 0, [0, 0], 0)
        }
        OrderStrategy::Auto => unreachable!("resolved above"),
    }
}

/// Whether the order of `d` is at most `k`.
pub fn derivation_order_leq(g: &Hypergraph<1>, d: &BlockDerivation, k: usize) -> bool {
    derivation_order_leq_with(g, d, k, OrderStrategy::Auto)
}

/// [`derivation_order_leq`] with an explicit strategy.
pub fn derivation_order_leq_with(g: &Hypergraph<1>, d: &BlockDerivation, k: usize, strategy: OrderStrategy) -> bool {
    find_triple(&OrderInput::of(g, d), k, strategy).is_some()
}

/// A mid-triple of `d` of order at most `k`, if one exists.
pub fn find_mid_triple(g: &Hypergraph<1>, d: &BlockDerivation, k: usize) -> Option<MidTriple> {
    find_triple(&OrderInput::of(g, d), k, OrderStrategy::Auto).map(|[a, b, c]| MidTriple { m1: wrap(a), m2: wrap(b), m3: wrap(c) })
}

/// Smallest order over all mid-triples, by trying every assignment of each
/// separator vertex to at least two of the three sets. `None` if `d` has no
/// mid-triple at all. Cost `4^|S|`.
pub fn exhaustive_order(g: &Hypergraph<1>, d: &BlockDerivation) -> Option<usize> {
    let s: Vec<usize> = d.separator.iter().collect();
    let db = raw(g.vertex_boundary(d.block));
    let bds: Vec<u64> = d.parts.iter().map(|&a| raw(g.vertex_boundary(a))).collect();
    let mut best: Option<usize> = None;
    let total = 4usize.pow(s.len() as u32);
    for code in 0..total {
        let mut m = [0u64; 3];
        let mut c = code;
        for &v in &s {
            // 0: M1 M2, 1: M2 M3, 2: M1 M3, 3: all three.
            let sel: &[usize] = match c % 4 {
                0 => &[0, 1],
                1 => &[1, 2],
                2 => &[0, 2],
                _ => &[0, 1, 2],
            };
            for &i in sel {
                m[i] |= 1 << v;
            }
            c /= 4;
        }
        if db & !m[2] != 0 || !bds.iter().all(|&bd| bd & !m[0] == 0 || bd & !m[1] == 0) {
            continue;
        }
        let order = pop(m[0]).max(pop(m[1])).max(pop(m[2]));
        best = Some(best.map_or(order, |b| b.min(order)));
    }
    best
}

/// Every derivation of order at most `k`: those with `|S| ≤ k` from the
/// naive enumeration, then for each block `B` with `|∂(B)| ≤ k` every
/// separator `S ⊇ ∂(B)` with `k < |S| ≤ ⌊3k/2⌋` that passes
/// [`derivation_order_leq`].
pub fn enumerate_derivations_refined(g: &Hypergraph<1>, k: usize) -> Result<Vec<BlockDerivation>> {
    let mut out: Vec<BlockDerivation> = enumerate_derivations(g)?.filter(|d| d.separator.len() <= k).collect();
    let g64 = G64::new(g, "derivation enumeration")?;
    let cap = 3 * k / 2;
    for b in list_blocks_raw(&g64, k) {
        let db = g64.boundary(b);
        let free = b & !db;
        for extra in submasks(free) {
            let s = db | extra;
            if pop(s) <= k || pop(s) > cap {
                continue;
            }
            let Some((_, parts)) = derivation_from_ks_raw(&g64, b & !s, s) else {
                continue;
            };
            let d =
                BlockDerivation { block: wrap(b), parts: parts.into_iter().map(wrap).collect(), cores: wrap(b & !s), separator: wrap(s) };
            if derivation_order_leq(g, &d, k) {
                out.push(d);
            }
        }
    }
    Ok(out)
}
