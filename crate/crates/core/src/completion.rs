//! Cuts and the Dedekind-MacNeille completion of a finite poset.
//!
//! A cut is a subset `A` with `A^{ul} = A`. The cuts of a poset, ordered by
//! inclusion, form the smallest complete lattice into which the poset embeds
//! order-densely. Elements embed as their principal ideals.

use std::collections::{HashMap, HashSet, VecDeque};
use std::ops::Deref;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::{ExtremaPolicy, FinitePoset};
use crate::subset::{PosetId, Subset};

/// A subset closed under `A -> A^{ul}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut(Subset);

impl Cut {
    /// Wraps `subset` if it is a cut of `poset`.
    pub fn new(poset: &FinitePoset, subset: Subset) -> Result<Cut> {
        poset.check_member(&subset)?;
        if poset.is_cut(&subset) {
            Ok(Cut(subset))
        } else {
            Err(Error::Validation(format!(
                "{{{}}} is not a cut",
                poset.subset_labels(&subset).join(",")
            )))
        }
    }

    pub fn as_subset(&self) -> &Subset {
        &self.0
    }

    pub fn into_subset(self) -> Subset {
        self.0
    }
}

impl Deref for Cut {
    type Target = Subset;

    fn deref(&self) -> &Subset {
        &self.0
    }
}

impl FinitePoset {
    /// `A^{ul}`, the smallest cut containing `a`.
    pub fn cut_closure(&self, a: &Subset) -> Cut {
        Cut(self.lower_bounds(&self.upper_bounds(a)))
    }

    pub fn is_cut(&self, a: &Subset) -> bool {
        self.cut_closure(a).0 == *a
    }

    /// The canonical embedding `x -> <x]`.
    pub fn embed(&self, x: usize) -> Cut {
        Cut(self.principal_ideal(x))
    }

    /// Least upper bound in the completion: `(union of the family)^{ul}`.
    /// The empty family gives the bottom cut `closure(empty)`.
    pub fn sup_cuts(&self, family: &[Cut]) -> Result<Cut> {
        let mut union = self.empty_subset();
        for c in family {
            self.check_member(c)?;
            union.union_with(c);
        }
        Ok(self.cut_closure(&union))
    }

    /// Greatest lower bound in the completion: the plain intersection.
    /// The empty family gives the whole poset.
    pub fn inf_cuts(&self, family: &[Cut]) -> Result<Cut> {
        let mut meet = self.full_subset();
        for c in family {
            self.check_member(c)?;
            meet.intersect_with_bits(c.bits());
        }
        debug_assert!(self.is_cut(&meet), "intersection of cuts must be a cut");
        Ok(Cut(meet))
    }

    /// Order density: `a` is both the join of the principal ideals inside it
    /// and the meet of the principal ideals containing it.
    pub fn density_check(&self, a: &Cut) -> bool {
        let below: Vec<Cut> = (0..self.len())
            .map(|x| self.embed(x))
            .filter(|i| i.is_subset(a))
            .collect();
        let above: Vec<Cut> = (0..self.len())
            .map(|x| self.embed(x))
            .filter(|i| a.is_subset(i))
            .collect();
        let join = self.sup_cuts(&below).expect("same base");
        let meet = self.inf_cuts(&above).expect("same base");
        join == *a && meet == *a
    }

    /// For a proper cut (neither empty nor everything) returns `(a, b)` with
    /// `<a] ⊆ A ⊆ <b]`.
    pub fn proper_cut_bounds(&self, a: &Cut) -> Option<(usize, usize)> {
        if a.is_empty() || a.is_full() {
            return None;
        }
        let low = (0..self.len()).find(|&x| self.principal_ideal(x).is_subset(a))?;
        let high = (0..self.len()).find(|&x| a.is_subset(&self.principal_ideal(x)))?;
        Some((low, high))
    }
}

/// How the cuts of a completion are enumerated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Test every subset of the poset with `is_cut`. Exponential in `|X|`.
    Naive,
    /// Close the principal ideals and the whole poset under intersection.
    Generated,
    /// `Generated` within the node budget, otherwise `Naive` within the size cap.
    #[default]
    Auto,
}

pub const DEFAULT_SIZE_CAP: usize = 20;
pub const DEFAULT_NODE_BUDGET: usize = 1 << 20;
pub const SIZE_CAP_ENV: &str = "POSET_SIZE_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionConfig {
    /// Largest poset for which the naive `2^|X|` scan is allowed.
    pub size_cap: usize,
    /// Largest number of cuts the generated strategy may produce.
    pub node_budget: usize,
    pub strategy: Strategy,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig {
            size_cap: DEFAULT_SIZE_CAP,
            node_budget: DEFAULT_NODE_BUDGET,
            strategy: Strategy::Auto,
        }
    }
}

impl CompletionConfig {
    /// Default configuration with the size cap taken from `POSET_SIZE_CAP`
    /// when that variable holds a number.
    pub fn from_env() -> Self {
        let mut config = Self::default();
        if let Some(cap) = std::env::var(SIZE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            config.size_cap = cap;
        }
        config
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

/// The completion `X#`: all cuts of a poset ordered by inclusion.
///
/// Cuts are listed in canonical order (cardinality, then lexicographic).
#[derive(Clone, Debug)]
pub struct CompletionLattice {
    base: PosetId,
    cuts: Vec<Cut>,
    index: HashMap<Subset, usize>,
    /// `above[i]` holds every `j` with `cuts[i] ⊆ cuts[j]`.
    above: Vec<FixedBitSet>,
    embedding: Vec<usize>,
}

/// Computes the Dedekind-MacNeille completion of `poset`.
pub fn dedekind_completion(
    poset: &FinitePoset,
    config: &CompletionConfig,
) -> Result<CompletionLattice> {
    let cuts = match config.strategy {
        Strategy::Naive => naive_cuts(poset, config.size_cap)?,
        Strategy::Generated => generated_cuts(poset, config.node_budget)?,
        Strategy::Auto => match generated_cuts(poset, config.node_budget) {
            Ok(cuts) => cuts,
            Err(Error::SizeCap { .. }) => naive_cuts(poset, config.size_cap)?,
            Err(e) => return Err(e),
        },
    };
    Ok(CompletionLattice::from_cuts(poset, cuts))
}

fn naive_cuts(poset: &FinitePoset, size_cap: usize) -> Result<Vec<Cut>> {
    if poset.len() > size_cap.min(62) {
        return Err(Error::SizeCap {
            what: "poset for naive cut enumeration",
            size: poset.len(),
            cap: size_cap.min(62),
        });
    }
    Ok(poset
        .all_subsets()?
        .filter(|s| poset.is_cut(s))
        .map(Cut)
        .collect())
}

fn generated_cuts(poset: &FinitePoset, node_budget: usize) -> Result<Vec<Cut>> {
    let ideals: Vec<Subset> = (0..poset.len()).map(|x| poset.principal_ideal(x)).collect();
    let mut seen: HashSet<Subset> = HashSet::new();
    let mut queue = VecDeque::new();
    let top = poset.full_subset();
    seen.insert(top.clone());
    queue.push_back(top);
    while let Some(current) = queue.pop_front() {
        for ideal in &ideals {
            let next = current.intersection(ideal);
            if !seen.contains(&next) {
                if seen.len() >= node_budget {
                    return Err(Error::SizeCap {
                        what: "generated cut family",
                        size: seen.len() + 1,
                        cap: node_budget,
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().map(Cut).collect())
}

impl CompletionLattice {
    fn from_cuts(poset: &FinitePoset, mut cuts: Vec<Cut>) -> Self {
        cuts.sort();
        let index: HashMap<Subset, usize> = cuts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.0.clone(), i))
            .collect();
        let n = cuts.len();
        let above = cuts
            .iter()
            .map(|c| {
                let mut row = FixedBitSet::with_capacity(n);
                for (j, d) in cuts.iter().enumerate() {
                    if c.is_subset(d) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let embedding = (0..poset.len())
            .map(|x| index[&poset.principal_ideal(x)])
            .collect();
        CompletionLattice {
            base: poset.id(),
            cuts,
            index,
            above,
            embedding,
        }
    }

    pub fn base(&self) -> PosetId {
        self.base
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn cut(&self, i: usize) -> &Cut {
        &self.cuts[i]
    }

    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `cuts[i] ⊆ cuts[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    /// Cut index of each base element's principal ideal.
    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.cuts.len() - 1
    }

    /// The completion itself as a poset whose elements are labelled by cut
    /// contents, e.g. `{a,b}`.
    pub fn as_poset(&self, base: &FinitePoset) -> FinitePoset {
        let labels = self.cuts.iter().map(|c| cut_label(base, c)).collect();
        let pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| self.above[i].ones().map(move |j| (i, j)))
            .collect();
        FinitePoset::from_index_pairs(labels, &pairs, ExtremaPolicy::Allow)
            .expect("inclusion is a partial order")
    }

    /// Cover pairs of the inclusion order, as cut indices.
    pub fn covers(&self, base: &FinitePoset) -> Vec<(usize, usize)> {
        self.as_poset(base).hasse_covers()
    }
}

/// `{a,b}` style label for a subset; the empty set prints as `{}`.
pub fn cut_label(base: &FinitePoset, s: &Subset) -> String {
    format!("{{{}}}", base.subset_labels(s).join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::{antichain, butterfly, chain};

    fn lab(p: &FinitePoset, s: &Subset) -> Vec<String> {
        p.subset_labels(s)
    }

    fn completion_labels(p: &FinitePoset, strategy: Strategy) -> Vec<String> {
        let l =
            dedekind_completion(p, &CompletionConfig::default().with_strategy(strategy)).unwrap();
        l.cuts().iter().map(|c| cut_label(p, c)).collect()
    }

    #[test]
    fn closure_examples() {
        let b = butterfly();
        assert_eq!(
            lab(&b, &b.cut_closure(&b.subset_from_labels(&["c"]).unwrap())),
            ["a", "b", "c"]
        );
        assert!(b.cut_closure(&b.empty_subset()).is_empty());
        let c = chain(3);
        assert!(c.is_cut(&c.subset_from_indices([0, 1])));
        assert!(!b.is_cut(&b.subset_from_labels(&["c"]).unwrap()));
        assert!(b.is_cut(&b.empty_subset()));
    }

    #[test]
    fn fixture_completions() {
        for strategy in [Strategy::Naive, Strategy::Generated, Strategy::Auto] {
            assert_eq!(
                completion_labels(&antichain(2), strategy),
                ["{}", "{a}", "{b}", "{a,b}"]
            );
            assert_eq!(
                completion_labels(&butterfly(), strategy),
                [
                    "{}",
                    "{a}",
                    "{b}",
                    "{a,b}",
                    "{a,b,c}",
                    "{a,b,d}",
                    "{a,b,c,d}"
                ]
            );
            // The empty set is not a cut of a one-element poset.
            assert_eq!(completion_labels(&chain(1), strategy), ["{1}"]);
            assert_eq!(
                completion_labels(&chain(3), strategy),
                ["{1}", "{1,2}", "{1,2,3}"]
            );
        }
    }

    #[test]
    fn embedding_is_principal_ideal() {
        let b = butterfly();
        let l = dedekind_completion(&b, &CompletionConfig::default()).unwrap();
        assert_eq!(lab(&b, &b.embed(3)), ["a", "b", "d"]);
        for x in 0..b.len() {
            assert_eq!(*l.cut(l.embedding()[x]), b.embed(x));
        }
        let c = chain(3);
        assert_eq!(lab(&c, &c.embed(1)), ["1", "2"]);
    }

    #[test]
    fn sup_and_inf() {
        let a = antichain(2);
        let s = a.sup_cuts(&[a.embed(0), a.embed(1)]).unwrap();
        assert!(s.is_full());
        assert_eq!(a.inf_cuts(&[a.embed(0)]).unwrap(), a.embed(0));
        assert!(a.inf_cuts(&[]).unwrap().is_full());
        assert!(a.sup_cuts(&[]).unwrap().is_empty());

        let b = butterfly();
        let abc = Cut::new(&b, b.subset_from_labels(&["a", "b", "c"]).unwrap()).unwrap();
        let abd = Cut::new(&b, b.subset_from_labels(&["a", "b", "d"]).unwrap()).unwrap();
        let meet = b.inf_cuts(&[abc, abd]).unwrap();
        assert_eq!(lab(&b, &meet), ["a", "b"]);
        assert!(b.is_cut(&meet));

        let foreign = a.embed(0);
        assert!(matches!(
            b.sup_cuts(std::slice::from_ref(&foreign)),
            Err(Error::MixedBase)
        ));
        assert!(matches!(b.inf_cuts(&[foreign]), Err(Error::MixedBase)));
    }

    #[test]
    fn density_and_bounds() {
        let b = butterfly();
        let l = dedekind_completion(&b, &CompletionConfig::default()).unwrap();
        assert!(l.cuts().iter().all(|c| b.density_check(c)));
        let ab = Cut::new(&b, b.subset_from_labels(&["a", "b"]).unwrap()).unwrap();
        let (lo, hi) = b.proper_cut_bounds(&ab).unwrap();
        assert!(b.principal_ideal(lo).is_subset(&ab) && ab.is_subset(&b.principal_ideal(hi)));
        assert_eq!((b.label(lo), b.label(hi)), ("a", "c"));
        assert!(b
            .proper_cut_bounds(&b.cut_closure(&b.empty_subset()))
            .is_none());
        assert!(b
            .proper_cut_bounds(&b.cut_closure(&b.full_subset()))
            .is_none());
    }

    #[test]
    fn cut_new_rejects_non_cuts() {
        let b = butterfly();
        assert!(Cut::new(&b, b.subset_from_labels(&["c"]).unwrap()).is_err());
    }

    #[test]
    fn size_caps() {
        let big = antichain(12);
        let tight = CompletionConfig {
            size_cap: 10,
            node_budget: 5,
            strategy: Strategy::Auto,
        };
        assert!(matches!(
            dedekind_completion(&big, &tight),
            Err(Error::SizeCap { .. })
        ));
        let naive_ok = CompletionConfig {
            size_cap: 12,
            ..tight
        };
        // Singletons plus the empty set and everything.
        assert_eq!(dedekind_completion(&big, &naive_ok).unwrap().len(), 14);
    }

    #[test]
    fn covers_of_antichain_completion_form_a_diamond() {
        let a = antichain(2);
        let l = dedekind_completion(&a, &CompletionConfig::default()).unwrap();
        assert_eq!(l.covers(&a), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
