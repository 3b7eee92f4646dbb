//! Subsets of the ground set stored as 64-bit masks.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

/// A subset of ground-set indices.
///
/// Ordering is canonical: by cardinality first, then by the bit pattern read
/// as an unsigned integer. Every enumeration in the crate sorts with it, which
/// keeps reports reproducible.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Flat(u64);

impl Flat {
    pub const EMPTY: Flat = Flat(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        Flat(bits)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u64;
        for i in indices {
            assert!(i < MAX_GROUND, "ground index {i} out of range");
            bits |= 1 << i;
        }
        Flat(bits)
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            Flat(u64::MAX)
        } else {
            Flat((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && self.0 >> i & 1 == 1
    }

    #[inline]
    pub const fn is_subset(self, other: Flat) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_proper_subset(self, other: Flat) -> bool {
        self.is_subset(other) && self.0 != other.0
    }

    #[inline]
    pub const fn comparable(self, other: Flat) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }

    #[inline]
    pub const fn intersects(self, other: Flat) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub const fn union(self, other: Flat) -> Flat {
        Flat(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Flat) -> Flat {
        Flat(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Flat) -> Flat {
        Flat(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, i: usize) -> Flat {
        Flat(self.0 | 1 << i)
    }

    /// Smallest ground index in the set.
    #[inline]
    pub fn min_index(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    /// Re-index onto the positions of `mask`: the k-th element of `mask`
    /// becomes index k. Elements outside `mask` are dropped.
    pub fn compress(self, mask: Flat) -> Flat {
        let mut out = 0u64;
        for (k, i) in mask.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << k;
            }
        }
        Flat(out)
    }

    /// Inverse of [`Flat::compress`].
    pub fn expand(self, mask: Flat) -> Flat {
        let mut out = 0u64;
        for (k, i) in mask.iter().enumerate() {
            if self.contains(k) {
                out |= 1 << i;
            }
        }
        Flat(out)
    }

    /// Apply an index map: element `i` goes to `map[i]`.
    pub fn map_indices(self, map: &[usize]) -> Flat {
        Flat::from_indices(self.iter().map(|i| map[i]))
    }
}

pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl Ord for Flat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Flat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Join of a slice of sets as plain unions.
pub fn union_all(sets: &[Flat]) -> Flat {
    sets.iter().fold(Flat::EMPTY, |acc, &s| acc.union(s))
}
