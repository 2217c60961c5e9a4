//! Extensions of an arbitrary map `X -> Y` to maps from subsets of `X` into
//! the completion of `Y`.
//!
//! Four operators are provided, each sending `A ⊆ X` to a cut of `Y`:
//!
//! * `sharp`: the cut generated by the image, `(f(A))^{ul}`.
//! * `tilde`: the meet over `a ∈ A` of `(f([a> ∩ A))^{ul}`.
//! * `L`: as `tilde`, but `a` only ranges over `L(A)` for a cofinal selector `L`.
//! * `bar`: the meet of `(f(B))^{ul}` over every `B` cofinal in `A`.
//!
//! For `A = ∅` every operator returns the bottom cut `closure(∅)` of `Y`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::completion::Cut;
use crate::error::{Error, Result};
use crate::poset::{FinitePoset, PosetMap};
use crate::subset::Subset;

/// Largest `|A|` for which cofinal subsets are enumerated literally.
pub const DEFAULT_COFINAL_CAP: usize = 16;

/// A rule picking, for each `A`, a subset `L(A) ⊆ A` that is cofinal in `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofinalSelector {
    /// `L(A)` = the maximal elements of `A`.
    MaximalElements,
    /// `L(A) = A`.
    Identity,
    /// Explicit per-subset choices, validated when used.
    Table(HashMap<Subset, Subset>),
}

impl CofinalSelector {
    /// Evaluates the selector on `a`, checking both selector conditions.
    pub fn select(&self, poset: &FinitePoset, a: &Subset) -> Result<Subset> {
        match self {
            CofinalSelector::MaximalElements => Ok(poset.maximal_elements(a)),
            CofinalSelector::Identity => Ok(a.clone()),
            CofinalSelector::Table(table) => {
                let chosen = table.get(a).ok_or_else(|| {
                    Error::InvalidSelector(format!(
                        "no entry for {{{}}}",
                        poset.subset_labels(a).join(",")
                    ))
                })?;
                chosen.same_base(a)?;
                if !chosen.is_subset(a) {
                    return Err(Error::InvalidSelector(format!(
                        "L(A) = {{{}}} is not contained in A = {{{}}}",
                        poset.subset_labels(chosen).join(","),
                        poset.subset_labels(a).join(",")
                    )));
                }
                if !poset.is_cofinal_in(chosen, a)? {
                    return Err(Error::InvalidSelector(format!(
                        "L(A) = {{{}}} is not cofinal in A = {{{}}}",
                        poset.subset_labels(chosen).join(","),
                        poset.subset_labels(a).join(",")
                    )));
                }
                Ok(chosen.clone())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operator {
    #[serde(rename = "sharp")]
    Sharp,
    #[serde(rename = "tilde")]
    Tilde,
    #[serde(rename = "L")]
    Selector,
    #[serde(rename = "bar")]
    Bar,
}

impl Operator {
    pub const ALL: [Operator; 4] = [
        Operator::Sharp,
        Operator::Tilde,
        Operator::Selector,
        Operator::Bar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Sharp => "sharp",
            Operator::Tilde => "tilde",
            Operator::Selector => "L",
            Operator::Bar => "bar",
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sharp" => Ok(Operator::Sharp),
            "tilde" => Ok(Operator::Tilde),
            "L" | "l" => Ok(Operator::Selector),
            "bar" => Ok(Operator::Bar),
            other => Err(Error::Validation(format!(
                "unknown operator `{other}` (expected sharp, tilde, L or bar)"
            ))),
        }
    }
}

/// One operator applied to one subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionResult {
    pub operator: Operator,
    pub input: Subset,
    pub value: Cut,
}

impl FinitePoset {
    /// Every `B ⊆ A` cofinal in `A`, in canonical subset order.
    ///
    /// Tests all `2^|A|` candidates; fails with `SizeCap` above `cap`.
    pub fn cofinal_subsets(&self, a: &Subset, cap: usize) -> Result<Vec<Subset>> {
        self.check_member(a)?;
        let mut out = Vec::new();
        for b in a.subsets(cap)? {
            if self.is_cofinal_in(&b, a)? {
                out.push(b);
            }
        }
        out.sort();
        Ok(out)
    }
}

impl PosetMap<'_> {
    /// `(f(A))^{ul}` in the codomain.
    pub fn sharp_extension(&self, a: &Subset) -> Cut {
        self.codomain().cut_closure(&self.image(a))
    }

    /// Meet over `a ∈ A` of `(f([a> ∩ A))^{ul}`.
    pub fn tilde_extension(&self, a: &Subset) -> Cut {
        self.trace_meet(a.iter(), a)
    }

    /// Meet over `a ∈ L(A)` of `(f([a> ∩ A))^{ul}`.
    pub fn selector_extension(&self, selector: &CofinalSelector, a: &Subset) -> Result<Cut> {
        let chosen = selector.select(self.domain(), a)?;
        Ok(self.trace_meet(chosen.iter(), a))
    }

    /// Meet of `(f(B))^{ul}` over all `B` cofinal in `A`.
    ///
    /// In a finite poset every cofinal `B ⊆ A` contains the maximal elements of
    /// `A`, which are cofinal themselves. Since `B -> (f(B))^{ul}` is monotone,
    /// the meet is attained at `B = Max(A)`.
    pub fn bar_extension(&self, a: &Subset) -> Cut {
        let top = self.domain().maximal_elements(a);
        self.sharp_extension(&top)
    }

    /// [`PosetMap::bar_extension`] computed from its definition by enumerating
    /// every cofinal subset of `A`.
    pub fn bar_extension_by_enumeration(&self, a: &Subset, cap: usize) -> Result<Cut> {
        let codomain = self.codomain();
        let mut meet = codomain.full_subset();
        for b in self.domain().cofinal_subsets(a, cap)? {
            meet.intersect_with_bits(self.sharp_extension(&b).bits());
        }
        Cut::new(codomain, meet)
    }

    /// Applies one operator. `selector` is required for `L` and ignored otherwise.
    pub fn extend(
        &self,
        operator: Operator,
        selector: Option<&CofinalSelector>,
        a: &Subset,
    ) -> Result<ExtensionResult> {
        self.domain().check_member(a)?;
        let value = match operator {
            Operator::Sharp => self.sharp_extension(a),
            Operator::Tilde => self.tilde_extension(a),
            Operator::Selector => {
                let selector = selector.ok_or_else(|| {
                    Error::InvalidSelector("operator L needs a cofinal selector".into())
                })?;
                self.selector_extension(selector, a)?
            }
            Operator::Bar => self.bar_extension(a),
        };
        Ok(ExtensionResult {
            operator,
            input: a.clone(),
            value,
        })
    }

    /// Whether `bar(A) ∪ tilde(A) ∪ L(A) ⊆ sharp(A)`.
    pub fn extensions_within_sharp(&self, selector: &CofinalSelector, a: &Subset) -> Result<bool> {
        let sharp = self.sharp_extension(a);
        let union = self
            .bar_extension(a)
            .union(&self.tilde_extension(a))
            .union(self.selector_extension(selector, a)?.as_subset());
        Ok(union.is_subset(&sharp))
    }

    fn trace_meet(&self, indices: impl Iterator<Item = usize>, a: &Subset) -> Cut {
        let domain = self.domain();
        let codomain = self.codomain();
        if a.is_empty() {
            return codomain.cut_closure(&codomain.empty_subset());
        }
        let mut meet = codomain.full_subset();
        for x in indices {
            let trace = domain.principal_filter(x).intersection(a);
            meet.intersect_with_bits(self.sharp_extension(&trace).bits());
        }
        Cut::new(codomain, meet).expect("intersection of cuts is a cut")
    }
}
