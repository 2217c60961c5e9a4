//! Seeded random posets, maps and instances.
//!
//! Posets come from random DAGs (each forward edge of a random linear order
//! kept independently) followed by reflexive-transitive closure.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::completion::{dedekind_completion, CompletionConfig, CompletionLattice};
use crate::error::{Error, Result};
use crate::instance::{InstanceDocument, RelationKind, Resolved};
use crate::poset::{ExtremaPolicy, FinitePoset, PosetMap};

/// Attempts made before generation gives up.
pub const GENERATION_RETRIES: usize = 256;

/// Search nodes allowed when looking for an order embedding.
const OIE_SEARCH_BUDGET: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Arbitrary,
    Increasing,
    Oie,
}

impl MapKind {
    /// Every map of kind `self` is also of kind `required`.
    pub fn implies(self, required: MapKind) -> bool {
        self >= required
    }

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Arbitrary => "arbitrary",
            MapKind::Increasing => "increasing",
            MapKind::Oie => "oie",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arbitrary" => Ok(MapKind::Arbitrary),
            "increasing" => Ok(MapKind::Increasing),
            "oie" => Ok(MapKind::Oie),
            other => Err(Error::Validation(format!(
                "unknown map kind `{other}` (expected arbitrary, increasing or oie)"
            ))),
        }
    }
}

/// Everything needed to regenerate one random instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub x_size: usize,
    pub y_size: usize,
    pub edge_probability: f64,
    pub map_kind: MapKind,
    pub seed: u64,
    pub allow_extrema: bool,
}

/// A pair of posets with a map between them.
#[derive(Debug)]
pub struct Instance {
    pub seed: u64,
    pub x: FinitePoset,
    pub y: FinitePoset,
    pub table: Vec<usize>,
    x_completion: OnceLock<CompletionLattice>,
}

impl Instance {
    pub fn new(x: FinitePoset, y: FinitePoset, table: Vec<usize>, seed: u64) -> Result<Self> {
        PosetMap::new(&x, &y, &table)?;
        Ok(Instance {
            seed,
            x,
            y,
            table,
            x_completion: OnceLock::new(),
        })
    }

    pub fn map(&self) -> PosetMap<'_> {
        PosetMap::new(&self.x, &self.y, &self.table).expect("validated on construction")
    }

    pub fn x_completion(&self) -> &CompletionLattice {
        self.x_completion.get_or_init(|| {
            dedekind_completion(&self.x, &CompletionConfig::default())
                .expect("harness posets are small")
        })
    }

    /// Encodes the instance as posets `X`, `Y` and map `phi`.
    pub fn to_document(&self) -> InstanceDocument {
        let mut doc = InstanceDocument::default();
        doc.push_poset("X", &self.x, RelationKind::Covers);
        doc.push_poset("Y", &self.y, RelationKind::Covers);
        doc.push_map("phi", &self.map(), "X", "Y");
        doc
    }

    /// Inverse of [`Instance::to_document`].
    pub fn from_resolved(doc: &Resolved) -> Result<Self> {
        let m = doc.map_table("phi")?;
        if m.domain != "X" || m.codomain != "Y" {
            return Err(Error::Validation(
                "map `phi` must go from `X` to `Y`".into(),
            ));
        }
        Self::new(
            doc.poset("X")?.clone(),
            doc.poset("Y")?.clone(),
            m.table.clone(),
            0,
        )
    }
}

/// A random poset on `size` elements labelled `{prefix}0`, `{prefix}1`, ...
///
/// Unless `allow_extrema`, draws are repeated until the poset has neither a
/// minimum nor a maximum.
pub fn random_poset<R: Rng>(
    size: usize,
    edge_probability: f64,
    allow_extrema: bool,
    prefix: &str,
    rng: &mut R,
) -> Result<FinitePoset> {
    if size == 0 {
        return Err(Error::Validation("posets need at least one element".into()));
    }
    let p = edge_probability.clamp(0.0, 1.0);
    let labels: Vec<String> = (0..size).map(|i| format!("{prefix}{i}")).collect();
    for _ in 0..GENERATION_RETRIES {
        let mut order: Vec<usize> = (0..size).collect();
        order.shuffle(rng);
        let mut pairs = Vec::new();
        for i in 0..size {
            for j in i + 1..size {
                if rng.gen_bool(p) {
                    pairs.push((order[i], order[j]));
                }
            }
        }
        let poset = FinitePoset::from_index_pairs(labels.clone(), &pairs, ExtremaPolicy::Allow)?;
        if allow_extrema || !poset.has_extrema() {
            return Ok(poset);
        }
    }
    Err(Error::GenerationExhausted {
        attempts: GENERATION_RETRIES,
        reason: format!("no extremum-free poset on {size} elements drawn"),
    })
}

/// The domain poset `X` described by `spec`.
pub fn generate_poset(spec: &InstanceSpec) -> Result<FinitePoset> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    random_poset(
        spec.x_size,
        spec.edge_probability,
        spec.allow_extrema,
        "x",
        &mut rng,
    )
}

/// A random map `X -> Y` of the requested kind, checked before returning.
pub fn generate_map<R: Rng>(
    x: &FinitePoset,
    y: &FinitePoset,
    kind: MapKind,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let table = match kind {
        MapKind::Arbitrary => (0..x.len()).map(|_| rng.gen_range(0..y.len())).collect(),
        MapKind::Increasing => random_increasing(x, y, rng),
        MapKind::Oie => random_oie(x, y, rng).ok_or_else(|| Error::GenerationExhausted {
            attempts: OIE_SEARCH_BUDGET,
            reason: format!("no order embedding of a {}-element poset found", x.len()),
        })?,
    };
    let map = PosetMap::new(x, y, &table)?;
    let ok = match kind {
        MapKind::Arbitrary => true,
        MapKind::Increasing => map.is_increasing(),
        MapKind::Oie => map.is_oie(),
    };
    assert!(ok, "generated map is not {kind}");
    Ok(table)
}

/// Builds the instance described by `spec`. For order embeddings `Y` is
/// redrawn until one exists.
pub fn generate_instance(spec: &InstanceSpec) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let x = random_poset(
        spec.x_size,
        spec.edge_probability,
        spec.allow_extrema,
        "x",
        &mut rng,
    )?;
    if spec.map_kind == MapKind::Oie && spec.y_size < spec.x_size {
        return Err(Error::GenerationExhausted {
            attempts: 0,
            reason: "an order embedding needs |Y| >= |X|".into(),
        });
    }
    let attempts = if spec.map_kind == MapKind::Oie { 64 } else { 1 };
    let mut last = None;
    for _ in 0..attempts {
        let y = random_poset(
            spec.y_size,
            spec.edge_probability,
            spec.allow_extrema,
            "y",
            &mut rng,
        )?;
        match generate_map(&x, &y, spec.map_kind, &mut rng) {
            Ok(table) => return Instance::new(x, y, table, spec.seed),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn linear_extension(x: &FinitePoset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by_key(|&i| x.principal_ideal(i).len());
    order
}

fn random_increasing<R: Rng>(x: &FinitePoset, y: &FinitePoset, rng: &mut R) -> Vec<usize> {
    let order = linear_extension(x);
    'attempt: for _ in 0..GENERATION_RETRIES {
        let mut table = vec![0; x.len()];
        for &a in &order {
            let mut candidates = y.full_subset();
            for z in x.principal_ideal(a).iter().filter(|&z| z != a) {
                candidates = candidates.intersection(&y.principal_filter(table[z]));
            }
            let c = candidates.indices();
            if c.is_empty() {
                continue 'attempt;
            }
            table[a] = c[rng.gen_range(0..c.len())];
        }
        return table;
    }
    // Constant maps are always increasing.
    vec![rng.gen_range(0..y.len()); x.len()]
}

fn random_oie<R: Rng>(x: &FinitePoset, y: &FinitePoset, rng: &mut R) -> Option<Vec<usize>> {
    if y.len() < x.len() {
        return None;
    }
    let order = linear_extension(x);
    let mut table = vec![usize::MAX; x.len()];
    let mut used = vec![false; y.len()];
    let mut budget = OIE_SEARCH_BUDGET;
    if embed_from(0, &order, x, y, &mut table, &mut used, rng, &mut budget) {
        Some(table)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn embed_from<R: Rng>(
    pos: usize,
    order: &[usize],
    x: &FinitePoset,
    y: &FinitePoset,
    table: &mut [usize],
    used: &mut [bool],
    rng: &mut R,
    budget: &mut usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let a = order[pos];
    let mut candidates: Vec<usize> = (0..y.len())
        .filter(|&c| !used[c])
        .filter(|&c| {
            order[..pos]
                .iter()
                .all(|&z| x.leq(z, a) == y.leq(table[z], c) && x.leq(a, z) == y.leq(c, table[z]))
        })
        .collect();
    candidates.shuffle(rng);
    for c in candidates {
        table[a] = c;
        used[c] = true;
        if embed_from(pos + 1, order, x, y, table, used, rng, budget) {
            return true;
        }
        used[c] = false;
    }
    table[a] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::{antichain, butterfly};

    fn spec(x_size: usize, p: f64, allow_extrema: bool) -> InstanceSpec {
        InstanceSpec {
            x_size,
            y_size: x_size,
            edge_probability: p,
            map_kind: MapKind::Arbitrary,
            seed: 42,
            allow_extrema,
        }
    }

    #[test]
    fn one_element_poset_needs_extrema() {
        assert_eq!(generate_poset(&spec(1, 0.5, true)).unwrap().len(), 1);
        assert!(matches!(
            generate_poset(&spec(1, 0.5, false)),
            Err(Error::GenerationExhausted { .. })
        ));
    }

    #[test]
    fn two_elements_without_edges_is_an_antichain() {
        let p = generate_poset(&spec(2, 0.0, false)).unwrap();
        assert!(p.strict_pairs().is_empty());
    }

    #[test]
    fn generation_is_deterministic() {
        let s = spec(6, 0.4, false);
        assert_eq!(generate_poset(&s).unwrap(), generate_poset(&s).unwrap());
        let a = generate_instance(&s).unwrap();
        let b = generate_instance(&s).unwrap();
        assert_eq!((a.x, a.y, a.table), (b.x, b.y, b.table));
    }

    #[test]
    fn maps_have_the_requested_kind() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let one = FinitePoset::new(&["p"], &[], ExtremaPolicy::Allow).unwrap();
        let b = butterfly();
        assert_eq!(
            generate_map(&b, &one, MapKind::Arbitrary, &mut rng).unwrap(),
            vec![0; 4]
        );
        for _ in 0..20 {
            let t = generate_map(&b, &b, MapKind::Increasing, &mut rng).unwrap();
            assert!(PosetMap::new(&b, &b, &t).unwrap().is_increasing());
        }
        let ac = antichain(2);
        let t = generate_map(&ac, &b, MapKind::Oie, &mut rng).unwrap();
        assert!(PosetMap::new(&ac, &b, &t).unwrap().is_oie());
        // A 2-antichain sent to a and b: incomparable images, injective.
        let fixed = [0, 1];
        assert!(PosetMap::new(&ac, &b, &fixed).unwrap().is_oie());
        // The butterfly does not embed into a 2-antichain.
        assert!(generate_map(&b, &ac, MapKind::Oie, &mut rng).is_err());
    }
}
