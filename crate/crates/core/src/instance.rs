//! JSON instance documents: named posets, maps, subsets and cofinal selectors.
//!
//! ```json
//! {
//!   "posets": [{"name": "X", "elements": ["a", "b", "c", "d"],
//!               "relation": [["a", "c"], ["b", "c"]], "relation_kind": "covers"}],
//!   "maps": [{"name": "phi", "domain": "X", "codomain": "X", "pairs": [["a", "a"], ...]}],
//!   "subsets": [{"name": "A", "poset": "X", "members": ["a", "b"]}],
//!   "selectors": [{"name": "L", "kind": "MaximalElements"}]
//! }
//! ```
//!
//! `covers` relations are closed reflexively and transitively on load; `full`
//! relations must already be transitively closed.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::CofinalSelector;
use crate::poset::{ExtremaPolicy, FinitePoset, PosetMap};
use crate::subset::Subset;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    #[serde(default)]
    pub posets: Vec<PosetDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subsets: Vec<SubsetDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub selectors: Vec<SelectorDoc>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    #[default]
    Covers,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub name: String,
    pub elements: Vec<String>,
    #[serde(default)]
    pub relation: Vec<(String, String)>,
    #[serde(default)]
    pub relation_kind: RelationKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub pairs: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsetDoc {
    pub name: String,
    pub poset: String,
    pub members: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SelectorKind {
    MaximalElements,
    Identity,
    ExplicitTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectorDoc {
    pub name: String,
    pub kind: SelectorKind,
    /// Poset the table entries refer to; required for `ExplicitTable`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub subset: Vec<String>,
    pub selects: Vec<String>,
}

/// A map stored by value, resolved against the posets of a document.
#[derive(Clone, Debug)]
pub struct MapTable {
    pub domain: String,
    pub codomain: String,
    pub table: Vec<usize>,
}

/// A validated document with every cross-reference resolved.
#[derive(Clone, Debug, Default)]
pub struct Resolved {
    posets: Vec<(String, FinitePoset)>,
    maps: Vec<(String, MapTable)>,
    subsets: Vec<(String, String, Subset)>,
    selectors: Vec<(String, CofinalSelector)>,
}

impl InstanceDocument {
    /// Parses and validates a document.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: InstanceDocument =
            serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
                path: e.path().to_string(),
                message: e.inner().to_string(),
            })?;
        doc.resolve()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Adds `poset` under `name`, listing either its covers or its full strict order.
    pub fn push_poset(&mut self, name: &str, poset: &FinitePoset, kind: RelationKind) {
        let pairs = match kind {
            RelationKind::Covers => poset.hasse_covers(),
            RelationKind::Full => poset.strict_pairs(),
        };
        self.posets.push(PosetDoc {
            name: name.to_owned(),
            elements: poset.labels().to_vec(),
            relation: pairs
                .into_iter()
                .map(|(a, b)| (poset.label(a).to_owned(), poset.label(b).to_owned()))
                .collect(),
            relation_kind: kind,
        });
    }

    pub fn push_map(&mut self, name: &str, map: &PosetMap<'_>, domain: &str, codomain: &str) {
        let (x, y) = (map.domain(), map.codomain());
        self.maps.push(MapDoc {
            name: name.to_owned(),
            domain: domain.to_owned(),
            codomain: codomain.to_owned(),
            pairs: (0..x.len())
                .map(|i| (x.label(i).to_owned(), y.label(map.apply(i)).to_owned()))
                .collect(),
        });
    }

    pub fn push_subset(
        &mut self,
        name: &str,
        poset_name: &str,
        poset: &FinitePoset,
        subset: &Subset,
    ) {
        self.subsets.push(SubsetDoc {
            name: name.to_owned(),
            poset: poset_name.to_owned(),
            members: poset.subset_labels(subset),
        });
    }

    pub fn push_selector(
        &mut self,
        name: &str,
        poset_name: &str,
        poset: &FinitePoset,
        selector: &CofinalSelector,
    ) {
        let doc = match selector {
            CofinalSelector::MaximalElements => SelectorDoc {
                name: name.to_owned(),
                kind: SelectorKind::MaximalElements,
                poset: None,
                table: None,
            },
            CofinalSelector::Identity => SelectorDoc {
                name: name.to_owned(),
                kind: SelectorKind::Identity,
                poset: None,
                table: None,
            },
            CofinalSelector::Table(table) => {
                let mut entries: Vec<(&Subset, &Subset)> = table.iter().collect();
                entries.sort();
                SelectorDoc {
                    name: name.to_owned(),
                    kind: SelectorKind::ExplicitTable,
                    poset: Some(poset_name.to_owned()),
                    table: Some(
                        entries
                            .into_iter()
                            .map(|(a, l)| TableEntry {
                                subset: poset.subset_labels(a),
                                selects: poset.subset_labels(l),
                            })
                            .collect(),
                    ),
                }
            }
        };
        self.selectors.push(doc);
    }

    /// Builds every poset, map, subset and selector, checking all invariants.
    pub fn resolve(&self) -> Result<Resolved> {
        let mut out = Resolved::default();
        for p in &self.posets {
            ensure_fresh(out.posets.iter().map(|(n, _)| n), &p.name, "poset")?;
            let poset = FinitePoset::new(&p.elements, &p.relation, ExtremaPolicy::Allow)
                .map_err(|e| Error::Validation(format!("poset `{}`: {e}", p.name)))?;
            if p.relation_kind == RelationKind::Full {
                let given: std::collections::HashSet<(&str, &str)> = p
                    .relation
                    .iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| (a.as_str(), b.as_str()))
                    .collect();
                if given.len() != poset.strict_pairs().len() {
                    return Err(Error::Validation(format!(
                        "poset `{}`: relation_kind is \"full\" but the relation is not transitively closed",
                        p.name
                    )));
                }
            }
            out.posets.push((p.name.clone(), poset));
        }
        for m in &self.maps {
            ensure_fresh(out.maps.iter().map(|(n, _)| n), &m.name, "map")?;
            let x = out.poset(&m.domain)?;
            let y = out.poset(&m.codomain)?;
            let mut table: Vec<Option<usize>> = vec![None; x.len()];
            for (a, b) in &m.pairs {
                let i = x
                    .index_of(a)
                    .map_err(|e| Error::Validation(format!("map `{}`: {e}", m.name)))?;
                let j = y
                    .index_of(b)
                    .map_err(|e| Error::Validation(format!("map `{}`: {e}", m.name)))?;
                if table[i].replace(j).is_some() {
                    return Err(Error::Validation(format!(
                        "map `{}` is not a function: `{a}` has two images",
                        m.name
                    )));
                }
            }
            if let Some(missing) = table.iter().position(Option::is_none) {
                return Err(Error::Validation(format!(
                    "map not total: `{}` has no image for `{}`",
                    m.name,
                    x.label(missing)
                )));
            }
            let table = table.into_iter().map(Option::unwrap).collect();
            out.maps.push((
                m.name.clone(),
                MapTable {
                    domain: m.domain.clone(),
                    codomain: m.codomain.clone(),
                    table,
                },
            ));
        }
        for s in &self.subsets {
            ensure_fresh(out.subsets.iter().map(|(n, _, _)| n), &s.name, "subset")?;
            let poset = out.poset(&s.poset)?;
            let subset = poset
                .subset_from_labels(&s.members)
                .map_err(|e| Error::Validation(format!("subset `{}`: {e}", s.name)))?;
            out.subsets.push((s.name.clone(), s.poset.clone(), subset));
        }
        for sel in &self.selectors {
            ensure_fresh(out.selectors.iter().map(|(n, _)| n), &sel.name, "selector")?;
            let selector = match sel.kind {
                SelectorKind::MaximalElements => CofinalSelector::MaximalElements,
                SelectorKind::Identity => CofinalSelector::Identity,
                SelectorKind::ExplicitTable => {
                    let poset_name = sel.poset.as_deref().ok_or_else(|| {
                        Error::Validation(format!(
                            "selector `{}`: ExplicitTable needs `poset`",
                            sel.name
                        ))
                    })?;
                    let poset = out.poset(poset_name)?;
                    let mut table = HashMap::new();
                    for entry in sel.table.as_deref().unwrap_or_default() {
                        let a = poset.subset_from_labels(&entry.subset).map_err(|e| {
                            Error::Validation(format!("selector `{}`: {e}", sel.name))
                        })?;
                        let l = poset.subset_from_labels(&entry.selects).map_err(|e| {
                            Error::Validation(format!("selector `{}`: {e}", sel.name))
                        })?;
                        table.insert(a, l);
                    }
                    CofinalSelector::Table(table)
                }
            };
            out.selectors.push((sel.name.clone(), selector));
        }
        Ok(out)
    }
}

fn ensure_fresh<'a>(
    mut existing: impl Iterator<Item = &'a String>,
    name: &str,
    what: &str,
) -> Result<()> {
    if existing.any(|n| n == name) {
        Err(Error::Validation(format!("duplicate {what} name `{name}`")))
    } else {
        Ok(())
    }
}

impl Resolved {
    pub fn poset(&self, name: &str) -> Result<&FinitePoset> {
        self.posets
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::Validation(format!("unknown poset `{name}`")))
    }

    pub fn poset_names(&self) -> impl Iterator<Item = &str> {
        self.posets.iter().map(|(n, _)| n.as_str())
    }

    pub fn map_table(&self, name: &str) -> Result<&MapTable> {
        self.maps
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Validation(format!("unknown map `{name}`")))
    }

    pub fn map_names(&self) -> impl Iterator<Item = &str> {
        self.maps.iter().map(|(n, _)| n.as_str())
    }

    pub fn map(&self, name: &str) -> Result<PosetMap<'_>> {
        let m = self.map_table(name)?;
        PosetMap::new(self.poset(&m.domain)?, self.poset(&m.codomain)?, &m.table)
    }

    /// The subset together with the name of its poset.
    pub fn subset(&self, name: &str) -> Result<(&str, &Subset)> {
        self.subsets
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, p, s)| (p.as_str(), s))
            .ok_or_else(|| Error::Validation(format!("unknown subset `{name}`")))
    }

    pub fn subset_names(&self) -> impl Iterator<Item = &str> {
        self.subsets.iter().map(|(n, _, _)| n.as_str())
    }

    pub fn selector(&self, name: &str) -> Result<&CofinalSelector> {
        self.selectors
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::Validation(format!("unknown selector `{name}`")))
    }
}
