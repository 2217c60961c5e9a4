//! Finite posets and the primitive order operators on their subsets.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::subset::{PosetId, Subset};

/// Whether a global minimum or maximum is acceptable.
///
/// The extension theory is developed for posets without extrema, so
/// construction rejects them unless told otherwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExtremaPolicy {
    #[default]
    Reject,
    Allow,
}

/// A finite partially ordered set with a dense order relation.
///
/// Elements are addressed by their index in `0..len()`. `up[i]` holds every
/// `j` with `i <= j` and `down[j]` every `i` with `i <= j`.
#[derive(Clone)]
pub struct FinitePoset {
    id: PosetId,
    labels: Vec<String>,
    by_label: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl FinitePoset {
    /// Builds a poset from labels and generating pairs `(x, y)` meaning `x <= y`.
    ///
    /// The relation is closed reflexively and transitively. Distinct elements
    /// that end up mutually related are reported as a cycle.
    pub fn new<S: AsRef<str>>(
        labels: &[S],
        pairs: &[(S, S)],
        policy: ExtremaPolicy,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let by_label = index_labels(&labels)?;
        let lookup = |s: &S| {
            by_label
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.as_ref().to_owned()))
        };
        let index_pairs = pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_index_pairs(labels, &index_pairs, policy)
    }

    /// Same as [`FinitePoset::new`] with pairs given as element indices.
    pub fn from_index_pairs(
        labels: Vec<String>,
        pairs: &[(usize, usize)],
        policy: ExtremaPolicy,
    ) -> Result<Self> {
        let n = labels.len();
        let by_label = index_labels(&labels)?;
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            up[a].insert(b);
        }
        // Warshall over bitset rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].ones().filter(|&j| j > i) {
                if up[j].contains(i) {
                    return Err(Error::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let poset = Self::from_closed(labels, by_label, up);
        if policy == ExtremaPolicy::Reject {
            poset.check_no_extrema()?;
        }
        Ok(poset)
    }

    fn from_closed(
        labels: Vec<String>,
        by_label: HashMap<String, usize>,
        up: Vec<FixedBitSet>,
    ) -> Self {
        let n = labels.len();
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        let mut h = DefaultHasher::new();
        labels.hash(&mut h);
        for row in &up {
            row.hash(&mut h);
        }
        FinitePoset {
            id: PosetId(h.finish()),
            labels,
            by_label,
            up,
            down,
        }
    }

    pub fn id(&self) -> PosetId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.by_label
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_owned()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Every strict pair `a < b`, row-major.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| {
                self.up[a]
                    .ones()
                    .filter(move |&b| b != a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn empty_subset(&self) -> Subset {
        Subset::empty_in(self.id, self.len())
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full_in(self.id, self.len())
    }

    pub fn subset_from_indices<I: IntoIterator<Item = usize>>(&self, indices: I) -> Subset {
        let mut s = self.empty_subset();
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut s = self.empty_subset();
        for l in labels {
            s.insert(self.index_of(l.as_ref())?);
        }
        Ok(s)
    }

    /// Subset with the members encoded in the low bits of `mask`.
    pub fn subset_from_mask(&self, mask: u64) -> Subset {
        Subset::from_mask(self.id, self.len(), mask)
    }

    pub fn subset_labels(&self, s: &Subset) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Every subset of the poset, in mask order. Only for small posets.
    pub fn all_subsets(&self) -> Result<impl Iterator<Item = Subset> + '_> {
        if self.len() >= 63 {
            return Err(Error::SizeCap {
                what: "power set enumeration",
                size: self.len(),
                cap: 62,
            });
        }
        Ok((0..1u64 << self.len()).map(move |m| self.subset_from_mask(m)))
    }

    pub(crate) fn check_member(&self, s: &Subset) -> Result<()> {
        if s.base() == self.id && s.universe() == self.len() {
            Ok(())
        } else {
            Err(Error::MixedBase)
        }
    }

    /// The principal ideal `<x] = { y | y <= x }`.
    pub fn principal_ideal(&self, x: usize) -> Subset {
        Subset::from_bits(self.id, self.down[x].clone())
    }

    /// The principal filter `[x> = { y | y >= x }`.
    pub fn principal_filter(&self, x: usize) -> Subset {
        Subset::from_bits(self.id, self.up[x].clone())
    }

    /// `A^u`: the common upper bounds of `A`. The empty set yields everything.
    pub fn upper_bounds(&self, a: &Subset) -> Subset {
        let mut out = self.full_subset();
        for i in a.iter() {
            out.intersect_with_bits(&self.up[i]);
        }
        out
    }

    /// `A^l`: the common lower bounds of `A`. The empty set yields everything.
    pub fn lower_bounds(&self, a: &Subset) -> Subset {
        let mut out = self.full_subset();
        for i in a.iter() {
            out.intersect_with_bits(&self.down[i]);
        }
        out
    }

    /// True iff every element of `a` lies below some element of `b`.
    pub fn is_cofinal_in(&self, b: &Subset, a: &Subset) -> Result<bool> {
        b.same_base(a)?;
        if !b.is_subset(a) {
            return Err(Error::NotASubset);
        }
        Ok(a.iter().all(|x| b.meets(&self.up[x])))
    }

    /// Any two members of `a` have a common upper bound inside `a`.
    pub fn is_directed(&self, a: &Subset) -> bool {
        let members = a.indices();
        members.iter().enumerate().all(|(k, &x)| {
            members[k..].iter().all(|&y| {
                let mut common = self.up[x].clone();
                common.intersect_with(&self.up[y]);
                a.meets(&common)
            })
        })
    }

    /// Members of `a` with nothing strictly above them in `a`.
    pub fn maximal_elements(&self, a: &Subset) -> Subset {
        let mut out = self.empty_subset();
        for x in a.iter() {
            if a.iter().all(|y| y == x || !self.leq(x, y)) {
                out.insert(x);
            }
        }
        out
    }

    /// Members of `a` with nothing strictly below them in `a`.
    pub fn minimal_elements(&self, a: &Subset) -> Subset {
        let mut out = self.empty_subset();
        for x in a.iter() {
            if a.iter().all(|y| y == x || !self.leq(y, x)) {
                out.insert(x);
            }
        }
        out
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].is_full())
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i].is_full())
    }

    pub fn has_extrema(&self) -> bool {
        self.minimum().is_some() || self.maximum().is_some()
    }

    /// Fails when the poset has a global minimum or maximum.
    pub fn check_no_extrema(&self) -> Result<()> {
        if let Some(m) = self.minimum() {
            return Err(Error::HasExtremum {
                kind: "minimum",
                element: self.labels[m].clone(),
            });
        }
        if let Some(m) = self.maximum() {
            return Err(Error::HasExtremum {
                kind: "maximum",
                element: self.labels[m].clone(),
            });
        }
        Ok(())
    }

    /// The cover pairs `x < y` with nothing strictly between them, sorted.
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for x in 0..self.len() {
            let mut above = self.up[x].clone();
            above.set(x, false);
            for y in above.ones() {
                let mut between = above.clone();
                between.intersect_with(&self.down[y]);
                between.set(y, false);
                if between.is_clear() {
                    covers.push((x, y));
                }
            }
        }
        covers
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut by_label = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if by_label.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateElement(l.clone()));
        }
    }
    Ok(by_label)
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .hasse_covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        f.debug_struct("FinitePoset")
            .field("elements", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

/// A total function between the elements of two posets.
#[derive(Clone, Copy)]
pub struct PosetMap<'a> {
    domain: &'a FinitePoset,
    codomain: &'a FinitePoset,
    table: &'a [usize],
}

impl<'a> PosetMap<'a> {
    /// `table[i]` is the image of domain element `i`.
    pub fn new(
        domain: &'a FinitePoset,
        codomain: &'a FinitePoset,
        table: &'a [usize],
    ) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::Validation(format!(
                "map not total: {} images for {} domain elements",
                table.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&y| y >= codomain.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(PosetMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn domain(&self) -> &'a FinitePoset {
        self.domain
    }

    pub fn codomain(&self) -> &'a FinitePoset {
        self.codomain
    }

    pub fn table(&self) -> &'a [usize] {
        self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// The direct image of `a`, as a subset of the codomain.
    pub fn image(&self, a: &Subset) -> Subset {
        self.codomain
            .subset_from_indices(a.iter().map(|x| self.table[x]))
    }

    /// `a <= b` implies `f(a) <= f(b)`.
    pub fn is_increasing(&self) -> bool {
        self.domain
            .strict_pairs()
            .into_iter()
            .all(|(a, b)| self.codomain.leq(self.table[a], self.table[b]))
    }

    /// Order isomorphic embedding: injective and `a <= b` iff `f(a) <= f(b)`.
    pub fn is_oie(&self) -> bool {
        let n = self.domain.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let (fa, fb) = (self.table[a], self.table[b]);
                (a == b || fa != fb) && self.domain.leq(a, b) == self.codomain.leq(fa, fb)
            })
        })
    }
}

/// Small posets used throughout the examples and tests.
pub mod fixtures {
    use super::{ExtremaPolicy, FinitePoset};

    /// `n` pairwise incomparable elements labelled `a`, `b`, ...
    pub fn antichain(n: usize) -> FinitePoset {
        let labels: Vec<String> = (0..n).map(letter).collect();
        let policy = if n < 2 {
            ExtremaPolicy::Allow
        } else {
            ExtremaPolicy::Reject
        };
        FinitePoset::from_index_pairs(labels, &[], policy).expect("antichain is a poset")
    }

    /// The chain `1 < 2 < ... < n`. Has extrema.
    pub fn chain(n: usize) -> FinitePoset {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::from_index_pairs(labels, &pairs, ExtremaPolicy::Allow)
            .expect("chain is a poset")
    }

    /// `a, b < c, d`: the smallest poset whose completion adds a new element.
    pub fn butterfly() -> FinitePoset {
        FinitePoset::new(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
            ExtremaPolicy::Reject,
        )
        .expect("butterfly is a poset")
    }

    fn letter(i: usize) -> String {
        if i < 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("e{i}")
        }
    }
}
