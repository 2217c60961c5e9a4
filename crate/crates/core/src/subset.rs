//! Subsets of a finite poset, stored as bitsets over element indices.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Structural fingerprint of a poset (labels plus order relation).
///
/// Subsets and cuts carry the fingerprint of the poset they were drawn from so
/// that set operations across unrelated posets are rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetId(pub(crate) u64);

/// A set of elements of one poset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    base: PosetId,
    bits: FixedBitSet,
}

impl Subset {
    pub(crate) fn empty_in(base: PosetId, universe: usize) -> Self {
        Subset {
            base,
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub(crate) fn full_in(base: PosetId, universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Subset { base, bits }
    }

    pub(crate) fn from_bits(base: PosetId, bits: FixedBitSet) -> Self {
        Subset { base, bits }
    }

    /// Builds a subset from the low `universe` bits of `mask`.
    pub(crate) fn from_mask(base: PosetId, universe: usize, mask: u64) -> Self {
        let mut s = Self::empty_in(base, universe);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s.bits.insert(i);
            m &= m - 1;
        }
        s
    }

    pub fn base(&self) -> PosetId {
        self.base
    }

    /// Number of elements of the owning poset.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    /// Panics if `index` is outside the owning poset.
    pub fn insert(&mut self, index: usize) {
        assert!(
            index < self.universe(),
            "element index {index} out of range"
        );
        self.bits.insert(index);
    }

    pub fn remove(&mut self, index: usize) {
        self.bits.set(index, false);
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_superset(&self, other: &Subset) -> bool {
        other.is_subset(self)
    }

    /// Checks that both subsets come from the same poset.
    pub fn same_base(&self, other: &Subset) -> Result<()> {
        if self.base == other.base && self.universe() == other.universe() {
            Ok(())
        } else {
            Err(Error::MixedBase)
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.base, other.base);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Subset {
            base: self.base,
            bits,
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.base, other.base);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subset {
            base: self.base,
            bits,
        }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.base, other.base);
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Subset {
            base: self.base,
            bits,
        }
    }

    pub(crate) fn intersect_with_bits(&mut self, other: &FixedBitSet) {
        self.bits.intersect_with(other);
    }

    pub(crate) fn union_with(&mut self, other: &Subset) {
        self.bits.union_with(&other.bits);
    }

    /// True when `self` and `other` share at least one element.
    pub fn meets(&self, other: &FixedBitSet) -> bool {
        !self.bits.is_disjoint(other)
    }

    /// All subsets of `self`, in ascending mask order over the member list.
    ///
    /// Returns `SizeCap` when `self` has more than `cap` members.
    pub fn subsets(&self, cap: usize) -> Result<Vec<Subset>> {
        let members = self.indices();
        if members.len() > cap || members.len() >= 63 {
            return Err(Error::SizeCap {
                what: "subset enumeration",
                size: members.len(),
                cap: cap.min(62),
            });
        }
        let universe = self.universe();
        let count = 1u64 << members.len();
        let out = (0..count)
            .map(|mask| {
                let mut s = Subset::empty_in(self.base, universe);
                for (bit, &m) in members.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        s.bits.insert(m);
                    }
                }
                s
            })
            .collect();
        Ok(out)
    }
}

/// Canonical order: by cardinality, then lexicographically by ascending
/// member indices. `{a} < {b} < {a,b} < {a,c}` for `a < b < c`.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
