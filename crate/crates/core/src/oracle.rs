//! Reference branchwidth by dynamic programming over edge subsets.
//!
//! `W({e}) = |e ∩ V(E ∖ {e})|` and for larger `F`,
//! `W(F) = min max(W(F1), W(F2), |∂(F)|)` over bipartitions of `F`.
//! Cost is `3^|F|`, so the edge count is capped.

use crate::bits::{Bits, EdgeSet};
use crate::decomposition::BranchDecomposition;
use crate::error::{BwError, Result};
use crate::graph::Hypergraph;

/// Largest edge set accepted by the oracle.
pub const ORACLE_EDGE_LIMIT: usize = 16;

/// Widths `W(F')` for every subset `F'` of a fixed edge set `F`.
#[derive(Debug, Clone)]
pub struct OracleTable {
    edges: Vec<usize>,
    width: Vec<u8>,
}

impl OracleTable {
    /// Fills the table for all subsets of `f`.
    pub fn build<const W: usize>(h: &Hypergraph<W>, f: &EdgeSet) -> Result<Self> {
        let edges: Vec<usize> = f.ones().collect();
        let p = edges.len();
        if p > ORACLE_EDGE_LIMIT {
            return Err(BwError::TooLarge { what: "oracle edge set", size: p, limit: ORACLE_EDGE_LIMIT });
        }
        let mut outside = Bits::<W>::EMPTY;
        for (i, e) in h.edges().iter().enumerate() {
            if !f.contains(i) {
                outside |= *e;
            }
        }
        let full = (1usize << p) - 1;
        let mut supp = vec![Bits::<W>::EMPTY; 1 << p];
        for mask in 1..=full {
            let low = mask.trailing_zeros() as usize;
            supp[mask] = supp[mask & (mask - 1)] | h.edge(edges[low]);
        }
        let mut width = vec![0u8; 1 << p];
        for mask in 1..=full {
            let bd = (supp[mask] & (outside | supp[full ^ mask])).len() as u8;
            if mask.count_ones() == 1 {
                width[mask] = bd;
                continue;
            }
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            let mut best = u8::MAX;
            // F1 = low ∪ sub with sub ⊊ rest, F2 = rest ∖ sub.
            let mut sub = 0usize;
            loop {
                let f1 = low | sub;
                let f2 = mask ^ f1;
                if f2 != 0 {
                    best = best.min(width[f1].max(width[f2]));
                }
                if sub == rest {
                    break;
                }
                sub = ((sub | !rest).wrapping_add(1)) & rest;
            }
            width[mask] = best.max(bd);
        }
        Ok(OracleTable { edges, width })
    }

    /// Edge indices of the base set, in increasing order.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// `W` of the subset given as a mask over [`Self::edges`].
    pub fn width_of_mask(&self, mask: usize) -> usize {
        self.width[mask] as usize
    }

    /// `W` of the whole base set.
    pub fn width(&self) -> usize {
        self.width[self.width.len() - 1] as usize
    }

    /// Decomposition of the base set over a host with `m` edges whose width
    /// equals [`Self::width`].
    pub fn decomposition(&self, m: usize) -> BranchDecomposition {
        let full = self.width.len() - 1;
        if full == 0 {
            return BranchDecomposition::empty(m);
        }
        self.rebuild(m, full)
    }

    fn rebuild(&self, m: usize, mask: usize) -> BranchDecomposition {
        if mask.count_ones() == 1 {
            return BranchDecomposition::leaf(m, self.edges[mask.trailing_zeros() as usize]);
        }
        let target = self.width[mask];
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = 0usize;
        loop {
            let f1 = low | sub;
            let f2 = mask ^ f1;
            if f2 != 0 && self.width[f1].max(self.width[f2]) <= target {
                return self.rebuild(m, f1).compose(self.rebuild(m, f2));
            }
            sub = ((sub | !rest).wrapping_add(1)) & rest;
        }
    }
}

/// `W(F)` relative to `H`. The empty set has width 0.
pub fn oracle_bw<const W: usize>(h: &Hypergraph<W>, f: &EdgeSet) -> Result<usize> {
    Ok(OracleTable::build(h, f)?.width())
}

/// Branchwidth of `H`.
pub fn oracle_branchwidth<const W: usize>(h: &Hypergraph<W>) -> Result<usize> {
    oracle_bw(h, &h.all_edges())
}

/// `bw(H) ≤ k`.
pub fn oracle_decide<const W: usize>(h: &Hypergraph<W>, k: usize) -> Result<bool> {
    Ok(oracle_branchwidth(h)? <= k)
}

#[cfg(test)]
mod tests {
    use super::*;

    type H = Hypergraph<1>;

    fn edges_of(n: usize, pairs: &[(usize, usize)]) -> H {
        H::from_edge_lists(n, &pairs.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_graph_values() {
        let k3 = edges_of(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(oracle_branchwidth(&k3).unwrap(), 2);
        let p4 = edges_of(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(oracle_branchwidth(&p4).unwrap(), 2);
        let k4 = edges_of(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(oracle_branchwidth(&k4).unwrap(), 3);
        let star = edges_of(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(oracle_branchwidth(&star).unwrap(), 1);
    }

    #[test]
    fn decide_examples() {
        let petersen = edges_of(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        );
        assert!(oracle_decide(&petersen, 4).unwrap());
        assert!(!oracle_decide(&petersen, 3).unwrap());
        let single = edges_of(2, &[(0, 1)]);
        assert!(oracle_decide(&single, 0).unwrap());
        assert!(oracle_decide(&petersen, 10).unwrap());
    }

    #[test]
    fn subset_widths_are_relative_to_host() {
        let k3 = edges_of(3, &[(0, 1), (1, 2), (0, 2)]);
        let mut f = EdgeSet::with_capacity(3);
        f.insert(0);
        assert_eq!(oracle_bw(&k3, &f).unwrap(), 2);
        assert_eq!(oracle_bw(&k3, &EdgeSet::with_capacity(3)).unwrap(), 0);
    }

    #[test]
    fn rejects_large_sets() {
        let pairs: Vec<(usize, usize)> = (0..17).map(|i| (i, i + 1)).collect();
        let path = edges_of(18, &pairs);
        assert!(matches!(oracle_branchwidth(&path), Err(BwError::TooLarge { .. })));
    }
}
