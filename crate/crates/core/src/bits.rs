//! Fixed-width bit sets used as vertex sets and DP keys.
//!
//! `Bits<W>` stores `64 * W` bits inline, so it is `Copy`, hashable and cheap
//! to compare. `W = 1` is the fast path for graphs with at most 64 vertices.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Sub, SubAssign};

/// Inline bit set over `0..64 * W`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits<const W: usize>(pub [u64; W]);

/// Vertex set over vertex indices.
pub type VertexSet<const W: usize> = Bits<W>;

impl<const W: usize> Default for Bits<W> {
    fn default() -> Self {
        Self::EMPTY
    }
}

impl<const W: usize> Bits<W> {
    /// Number of representable elements.
    pub const CAPACITY: usize = 64 * W;
    /// The empty set.
    pub const EMPTY: Self = Bits([0; W]);

    /// The empty set.
    #[inline]
    pub const fn empty() -> Self {
        Self::EMPTY
    }

    /// `{i}`.
    #[inline]
    pub fn singleton(i: usize) -> Self {
        let mut s = Self::EMPTY;
        s.insert(i);
        s
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "universe {n} exceeds capacity");
        let mut s = Self::EMPTY;
        for (w, word) in s.0.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    /// Builds a set from indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = Self::EMPTY;
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Set from the low 64 bits of `mask`.
    #[inline]
    pub fn from_u64(mask: u64) -> Self {
        let mut s = Self::EMPTY;
        s.0[0] = mask;
        s
    }

    /// Low 64 bits. Panics in debug builds if higher bits are set.
    #[inline]
    pub fn to_u64(&self) -> u64 {
        debug_assert!(self.0[1..].iter().all(|&w| w == 0));
        self.0[0]
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < Self::CAPACITY && self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    /// Smallest element.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Elements in increasing order.
    #[inline]
    pub fn iter(&self) -> BitsIter<W> {
        BitsIter { words: self.0, idx: 0 }
    }

    /// Complement within `{0, .., n-1}`.
    #[inline]
    pub fn complement(&self, n: usize) -> Self {
        Self::full(n) - *self
    }
}

impl<const W: usize> BitOr for Bits<W> {
    type Output = Self;
    #[inline]
    fn bitor(mut self, rhs: Self) -> Self {
        self |= rhs;
        self
    }
}

impl<const W: usize> BitOrAssign for Bits<W> {
    #[inline]
    fn bitor_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a |= b;
        }
    }
}

impl<const W: usize> BitAnd for Bits<W> {
    type Output = Self;
    #[inline]
    fn bitand(mut self, rhs: Self) -> Self {
        self &= rhs;
        self
    }
}

impl<const W: usize> BitAndAssign for Bits<W> {
    #[inline]
    fn bitand_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a &= b;
        }
    }
}

impl<const W: usize> Sub for Bits<W> {
    type Output = Self;
    #[inline]
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<const W: usize> SubAssign for Bits<W> {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a &= !b;
        }
    }
}

impl<const W: usize> BitXor for Bits<W> {
    type Output = Self;
    #[inline]
    fn bitxor(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a ^= b;
        }
        self
    }
}

impl<const W: usize> FromIterator<usize> for Bits<W> {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

impl<const W: usize> fmt::Debug for Bits<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the elements of a [`Bits`].
pub struct BitsIter<const W: usize> {
    words: [u64; W],
    idx: usize,
}

impl<const W: usize> Iterator for BitsIter<W> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.idx < W {
            let w = self.words[self.idx];
            if w != 0 {
                self.words[self.idx] = w & (w - 1);
                return Some(self.idx * 64 + w.trailing_zeros() as usize);
            }
            self.idx += 1;
        }
        None
    }
}

impl<const W: usize> IntoIterator for Bits<W> {
    type Item = usize;
    type IntoIter = BitsIter<W>;
    fn into_iter(self) -> BitsIter<W> {
        self.iter()
    }
}

/// Edge set over edge indices.
pub type EdgeSet = fixedbitset::FixedBitSet;

/// Iterates all subsets of `mask` in increasing numeric order, including
/// the empty set and `mask` itself.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut cur = Some(0u64);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == mask { None } else { Some(((out | !mask).wrapping_add(1)) & mask) };
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type B2 = Bits<2>;

    #[test]
    fn set_algebra_across_words() {
        let a = B2::from_indices([1, 63, 64, 100]);
        let b = B2::from_indices([63, 100, 127]);
        assert_eq!((a | b).iter().collect::<Vec<_>>(), vec![1, 63, 64, 100, 127]);
        assert_eq!((a & b).iter().collect::<Vec<_>>(), vec![63, 100]);
        assert_eq!((a - b).iter().collect::<Vec<_>>(), vec![1, 64]);
        assert_eq!((a ^ b).len(), 3);
        assert!(B2::from_indices([63, 100]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert_eq!(a.first(), Some(1));
        assert_eq!(B2::EMPTY.first(), None);
    }

    #[test]
    fn full_and_complement() {
        assert_eq!(B2::full(70).len(), 70);
        assert_eq!(B2::full(128).len(), 128);
        assert_eq!(Bits::<1>::full(0), Bits::<1>::EMPTY);
        let a = B2::from_indices([0, 69]);
        assert_eq!(a.complement(70).len(), 68);
        assert!(!a.complement(70).intersects(&a));
    }

    #[test]
    fn submask_enumeration() {
        let subs: Vec<u64> = submasks(0b1011).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(submasks(0).count(), 1);
    }
}
