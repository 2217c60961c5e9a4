//! Claim-keyed verification harness.
//!
//! Each check in [`CATALOG`] runs a probe over a seeded corpus of random
//! instances. Subjects (subsets, pairs, elements, cut families) are
//! enumerated exhaustively when `|X|` is at most `exhaustive_max` and
//! sampled otherwise. Failures are recorded as replayable instance
//! documents.

mod checks;
pub mod generate;

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::completion::Cut;
use crate::error::{Error, Result};
use crate::extensions::CofinalSelector;
use crate::instance::InstanceDocument;
use crate::subset::Subset;

pub use checks::{find_check, Check, CATALOG, LITERAL_COFINAL_CAP};
pub use generate::{
    generate_instance, generate_map, generate_poset, random_poset, Instance, InstanceSpec, MapKind,
};

/// Cut families are enumerated exhaustively up to this many cuts.
pub const EXHAUSTIVE_FAMILY_CUTS: usize = 8;

/// Harness settings. Everything is derived from `seed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub exhaustive_max: usize,
    pub instances: usize,
    /// Fixed `|X|`; random in `3..=5` when absent.
    pub x_size: Option<usize>,
    /// Fixed `|Y|`; random when absent.
    pub y_size: Option<usize>,
    /// Fixed edge probability; random in `[0.25, 0.75]` when absent.
    pub edge_probability: Option<f64>,
    /// Also generate instances whose posets have extrema (every other one).
    pub allow_extrema: bool,
    /// Forces one map kind for every check.
    pub map_kind: Option<MapKind>,
    pub subset_samples: usize,
    pub family_samples: usize,
    pub max_witnesses: usize,
    /// Adds wall-clock time to reports, which makes them non-reproducible.
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            exhaustive_max: 5,
            instances: 100,
            x_size: None,
            y_size: None,
            edge_probability: None,
            allow_extrema: false,
            map_kind: None,
            subset_samples: 64,
            family_samples: 1000,
            max_witnesses: 3,
            timings: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    /// A claim whose failures make the run fail.
    #[serde(rename = "claim")]
    Claim,
    /// The claim's conclusion tested without its hypothesis; failures are expected.
    #[serde(rename = "hypothesis-violated control")]
    Control,
    /// Something searched for and recorded without asserting either way.
    #[serde(rename = "observation")]
    Observation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// No subject met the hypothesis.
    Vacuous,
    CounterexampleFound,
    /// A control that never saw its conclusion fail.
    Inconclusive,
    Recorded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Exhaustive,
    Sampled,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub expected: String,
    pub actual: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Mismatch),
    /// The subject does not meet the check's hypothesis.
    Vacuous,
}

/// What a probe is applied to within one instance.
#[derive(Clone, Debug)]
pub enum Subject {
    Whole,
    Subset(Subset),
    Pair(Subset, Subset),
    Element(usize),
    Selected(Subset, CofinalSelector),
    Family(Vec<Cut>),
}

impl Subject {
    fn subset(&self) -> &Subset {
        match self {
            Subject::Subset(a) => a,
            other => panic!("expected a subset subject, got {other:?}"),
        }
    }

    fn pair(&self) -> (&Subset, &Subset) {
        match self {
            Subject::Pair(a, b) => (a, b),
            other => panic!("expected a pair subject, got {other:?}"),
        }
    }

    fn element(&self) -> usize {
        match self {
            Subject::Element(e) => *e,
            other => panic!("expected an element subject, got {other:?}"),
        }
    }

    fn selected(&self) -> (&Subset, &CofinalSelector) {
        match self {
            Subject::Selected(a, l) => (a, l),
            other => panic!("expected a selected subject, got {other:?}"),
        }
    }

    fn family(&self) -> &[Cut] {
        match self {
            Subject::Family(f) => f,
            other => panic!("expected a family subject, got {other:?}"),
        }
    }
}

/// How the subjects of a check are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubjectKind {
    Whole,
    Subsets,
    /// Subsets with at most this many elements.
    SmallSubsets(usize),
    /// Nested pairs `A ⊆ B`.
    SubsetPairs,
    Elements,
    /// Subsets paired with the identity, maximal-elements and a random table selector.
    Selected,
    Cuts,
    /// All ordered pairs of cuts.
    CutPairs,
    CutFamilies,
    NonemptyCutFamilies,
}

/// A failure, encoded as an instance document that reproduces it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub check_id: String,
    pub instance: InstanceDocument,
    pub expected: String,
    pub actual: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub title: String,
    pub role: Role,
    pub corpus: MapKind,
    pub tier: Tier,
    pub instances_run: usize,
    pub subjects_checked: usize,
    pub subjects_vacuous: usize,
    pub failure_count: usize,
    pub failures: Vec<Witness>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    /// True when this report should fail the run.
    pub fn is_failure(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// Instances grouped by the map kind they were drawn with.
pub struct Corpus {
    config: VerifyConfig,
    by_kind: HashMap<MapKind, Vec<Instance>>,
}

impl Corpus {
    pub fn new(config: VerifyConfig) -> Self {
        Corpus {
            config,
            by_kind: HashMap::new(),
        }
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.config
    }

    /// Generates the instances of `kind` if not done yet.
    pub fn ensure(&mut self, kind: MapKind) -> Result<&[Instance]> {
        if !self.by_kind.contains_key(&kind) {
            let instances = build_corpus(&self.config, kind)?;
            self.by_kind.insert(kind, instances);
        }
        Ok(&self.by_kind[&kind])
    }

    fn get(&self, kind: MapKind) -> &[Instance] {
        &self.by_kind[&kind]
    }
}

fn kind_salt(kind: MapKind) -> u64 {
    match kind {
        MapKind::Arbitrary => 0x9e37_79b9_7f4a_7c15,
        MapKind::Increasing => 0xbf58_476d_1ce4_e5b9,
        MapKind::Oie => 0x94d0_49bb_1331_11eb,
    }
}

/// Draws the instance specs of a corpus and builds them, redrawing any
/// spec that cannot be realised.
pub fn build_corpus(config: &VerifyConfig, kind: MapKind) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ kind_salt(kind));
    let mut out = Vec::with_capacity(config.instances);
    for i in 0..config.instances {
        let allow_extrema = config.allow_extrema && i % 2 == 1;
        let mut last = None;
        for _ in 0..generate::GENERATION_RETRIES {
            let x_size = config.x_size.unwrap_or_else(|| rng.gen_range(3..=5));
            let y_size = config.y_size.unwrap_or_else(|| match kind {
                MapKind::Oie => rng.gen_range(x_size..=x_size.max(5)),
                _ => rng.gen_range(2..=5),
            });
            let spec = InstanceSpec {
                x_size,
                y_size,
                edge_probability: config
                    .edge_probability
                    .unwrap_or_else(|| rng.gen_range(0.25..=0.75)),
                map_kind: kind,
                seed: rng.gen(),
                allow_extrema,
            };
            match generate_instance(&spec) {
                Ok(inst) => {
                    last = None;
                    out.push(inst);
                    break;
                }
                Err(e) => last = Some(e),
            }
        }
        if let Some(e) = last {
            return Err(e);
        }
    }
    Ok(out)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn random_subset(inst: &Instance, rng: &mut ChaCha8Rng) -> Subset {
    inst.x
        .subset_from_indices((0..inst.x.len()).filter(|_| rng.gen_bool(0.5)))
}

fn subsets_of(inst: &Instance, config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<Subset> {
    if inst.x.len() <= config.exhaustive_max {
        inst.x
            .all_subsets()
            .expect("exhaustive tier is small")
            .collect()
    } else {
        let mut out = vec![inst.x.empty_subset(), inst.x.full_subset()];
        out.extend((0..config.subset_samples).map(|_| random_subset(inst, rng)));
        out
    }
}

/// A random table selector valid on `a`: `Max(A)` plus random other members.
fn random_table(inst: &Instance, a: &Subset, rng: &mut ChaCha8Rng) -> CofinalSelector {
    let mut chosen = inst.x.maximal_elements(a);
    for i in a.iter() {
        if rng.gen_bool(0.5) {
            chosen.insert(i);
        }
    }
    CofinalSelector::Table(HashMap::from([(a.clone(), chosen)]))
}

fn families(
    cuts: &[Cut],
    config: &VerifyConfig,
    rng: &mut ChaCha8Rng,
    nonempty: bool,
) -> Vec<Subject> {
    let mut out = Vec::new();
    if cuts.len() <= EXHAUSTIVE_FAMILY_CUTS {
        for mask in 0u32..(1 << cuts.len()) {
            if nonempty && mask == 0 {
                continue;
            }
            let fam = (0..cuts.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cuts[i].clone())
                .collect();
            out.push(Subject::Family(fam));
        }
    } else {
        for _ in 0..config.family_samples {
            let mut fam: Vec<Cut> = cuts.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
            if nonempty && fam.is_empty() {
                fam.push(cuts[rng.gen_range(0..cuts.len())].clone());
            }
            out.push(Subject::Family(fam));
        }
    }
    out
}

/// Enumerates the subjects of `kind` within one instance.
pub fn subjects(
    inst: &Instance,
    kind: SubjectKind,
    config: &VerifyConfig,
    check_id: &str,
) -> Vec<Subject> {
    let mut rng = ChaCha8Rng::seed_from_u64(inst.seed ^ fnv1a(check_id));
    match kind {
        SubjectKind::Whole => vec![Subject::Whole],
        SubjectKind::Subsets => subsets_of(inst, config, &mut rng)
            .into_iter()
            .map(Subject::Subset)
            .collect(),
        SubjectKind::SmallSubsets(k) => subsets_of(inst, config, &mut rng)
            .into_iter()
            .filter(|a| a.len() <= k)
            .map(Subject::Subset)
            .collect(),
        SubjectKind::SubsetPairs => {
            if inst.x.len() <= config.exhaustive_max {
                let all: Vec<Subset> = subsets_of(inst, config, &mut rng);
                let mut out = Vec::new();
                for a in &all {
                    for b in all.iter().filter(|b| a.is_subset(b)) {
                        out.push(Subject::Pair(a.clone(), b.clone()));
                    }
                }
                out
            } else {
                (0..config.subset_samples)
                    .map(|_| {
                        let a = random_subset(inst, &mut rng);
                        let b = a.union(&random_subset(inst, &mut rng));
                        Subject::Pair(a, b)
                    })
                    .collect()
            }
        }
        SubjectKind::Elements => (0..inst.x.len()).map(Subject::Element).collect(),
        SubjectKind::Selected => {
            let mut out = Vec::new();
            for a in subsets_of(inst, config, &mut rng) {
                let table = random_table(inst, &a, &mut rng);
                out.push(Subject::Selected(a.clone(), CofinalSelector::Identity));
                out.push(Subject::Selected(
                    a.clone(),
                    CofinalSelector::MaximalElements,
                ));
                out.push(Subject::Selected(a, table));
            }
            out
        }
        SubjectKind::Cuts => inst
            .x_completion()
            .cuts()
            .iter()
            .map(|c| Subject::Subset(c.as_subset().clone()))
            .collect(),
        SubjectKind::CutPairs => {
            let cuts = inst.x_completion().cuts();
            let mut out = Vec::new();
            for a in cuts {
                for b in cuts {
                    out.push(Subject::Pair(a.as_subset().clone(), b.as_subset().clone()));
                }
            }
            out
        }
        SubjectKind::CutFamilies => families(inst.x_completion().cuts(), config, &mut rng, false),
        SubjectKind::NonemptyCutFamilies => {
            families(inst.x_completion().cuts(), config, &mut rng, true)
        }
    }
}

/// Encodes `inst` and `subject` as a document: posets `X`, `Y`, map `phi`,
/// subsets `A`, `B`, `x` or `E0`, `E1`, ... and selector `L`.
pub fn encode_witness(inst: &Instance, subject: &Subject) -> InstanceDocument {
    let mut doc = inst.to_document();
    let x = &inst.x;
    match subject {
        Subject::Whole => {}
        Subject::Subset(a) => doc.push_subset("A", "X", x, a),
        Subject::Pair(a, b) => {
            doc.push_subset("A", "X", x, a);
            doc.push_subset("B", "X", x, b);
        }
        Subject::Element(e) => doc.push_subset("x", "X", x, &x.subset_from_indices([*e])),
        Subject::Selected(a, l) => {
            doc.push_subset("A", "X", x, a);
            doc.push_selector("L", "X", x, l);
        }
        Subject::Family(f) => {
            for (i, c) in f.iter().enumerate() {
                doc.push_subset(&format!("E{i}"), "X", x, c);
            }
        }
    }
    doc
}

/// Rebuilds the instance and subject stored in a witness document.
pub fn decode_witness(doc: &InstanceDocument, kind: SubjectKind) -> Result<(Instance, Subject)> {
    let resolved = doc.resolve()?;
    let inst = Instance::from_resolved(&resolved)?;
    let subset = |name: &str| -> Result<Subset> {
        let (poset, s) = resolved.subset(name)?;
        if poset != "X" {
            return Err(Error::Validation(format!(
                "subset `{name}` must belong to `X`"
            )));
        }
        Ok(s.clone())
    };
    let subject = match kind {
        SubjectKind::Whole => Subject::Whole,
        SubjectKind::Subsets | SubjectKind::SmallSubsets(_) | SubjectKind::Cuts => {
            Subject::Subset(subset("A")?)
        }
        SubjectKind::SubsetPairs | SubjectKind::CutPairs => {
            Subject::Pair(subset("A")?, subset("B")?)
        }
        SubjectKind::Elements => {
            let s = subset("x")?;
            match s.indices()[..] {
                [e] => Subject::Element(e),
                _ => return Err(Error::Validation("subset `x` must be a singleton".into())),
            }
        }
        SubjectKind::Selected => Subject::Selected(subset("A")?, resolved.selector("L")?.clone()),
        SubjectKind::CutFamilies | SubjectKind::NonemptyCutFamilies => {
            let mut fam = Vec::new();
            while let Ok(s) = subset(&format!("E{}", fam.len())) {
                fam.push(Cut::new(&inst.x, s)?);
            }
            Subject::Family(fam)
        }
    };
    Ok((inst, subject))
}

impl Witness {
    /// Re-runs the check on the encoded subject.
    pub fn replay(&self) -> Result<Outcome> {
        let check = find_check(&self.check_id)?;
        let (inst, subject) = decode_witness(&self.instance, check.subjects)?;
        Ok((check.probe)(&inst, &subject))
    }
}

/// Runs one check over `instances`, treating it as `role`.
pub fn run_check_on(
    check: &Check,
    role: Role,
    kind: MapKind,
    instances: &[Instance],
    config: &VerifyConfig,
) -> VerificationReport {
    let start = Instant::now();
    let mut checked = 0;
    let mut vacuous = 0;
    let mut failure_count = 0;
    let mut failures = Vec::new();
    let (mut small, mut large) = (false, false);
    for inst in instances {
        if inst.x.len() <= config.exhaustive_max {
            small = true;
        } else {
            large = true;
        }
        for subject in subjects(inst, check.subjects, config, check.id) {
            match (check.probe)(inst, &subject) {
                Outcome::Pass => checked += 1,
                Outcome::Vacuous => vacuous += 1,
                Outcome::Fail(m) => {
                    checked += 1;
                    failure_count += 1;
                    if failures.len() < config.max_witnesses {
                        failures.push(Witness {
                            check_id: check.id.to_owned(),
                            instance: encode_witness(inst, &subject),
                            expected: m.expected,
                            actual: m.actual,
                            detail: m.detail,
                        });
                    }
                }
            }
        }
    }
    let verdict = match role {
        Role::Claim if failure_count > 0 => Verdict::Fail,
        Role::Claim if checked == 0 => Verdict::Vacuous,
        Role::Claim => Verdict::Pass,
        Role::Control if failure_count > 0 => Verdict::CounterexampleFound,
        Role::Control => Verdict::Inconclusive,
        Role::Observation => Verdict::Recorded,
    };
    VerificationReport {
        check_id: check.id.to_owned(),
        title: check.title.to_owned(),
        role,
        corpus: kind,
        tier: match (small, large) {
            (_, false) => Tier::Exhaustive,
            (false, true) => Tier::Sampled,
            (true, true) => Tier::Mixed,
        },
        instances_run: instances.len(),
        subjects_checked: checked,
        subjects_vacuous: vacuous,
        failure_count,
        failures,
        verdict,
        elapsed_ms: config.timings.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Map kind and role used for `check` under `config`. Forcing a map kind
/// weaker than the check requires turns a claim into a control.
fn plan(check: &Check, config: &VerifyConfig) -> (MapKind, Role) {
    match config.map_kind {
        Some(k) if !k.implies(check.corpus) && check.role == Role::Claim => (k, Role::Control),
        Some(k) => (k, check.role),
        None => (check.corpus, check.role),
    }
}

/// Runs one check on its own corpus.
pub fn run_check(check_id: &str, config: &VerifyConfig) -> Result<VerificationReport> {
    Ok(run_checks(&[check_id], config)?.remove(0))
}

/// Runs the given checks (or every check for `["all"]`) in parallel.
/// Reports are ordered by check id.
pub fn run_checks(ids: &[&str], config: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    let selected: Vec<&'static Check> = if ids.is_empty() || ids == ["all"] {
        CATALOG.iter().collect()
    } else {
        ids.iter().map(|id| find_check(id)).collect::<Result<_>>()?
    };
    let mut corpus = Corpus::new(config.clone());
    let plans: Vec<(MapKind, Role)> = selected.iter().map(|c| plan(c, config)).collect();
    for (kind, _) in &plans {
        corpus.ensure(*kind)?;
    }
    for kind in [MapKind::Arbitrary, MapKind::Increasing, MapKind::Oie] {
        if let Some(insts) = corpus.by_kind.get(&kind) {
            // Completions are shared across threads; build them up front.
            insts.iter().for_each(|i| {
                i.x_completion();
            });
        }
    }
    let corpus = &corpus;
    let mut reports: Vec<VerificationReport> = std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .zip(&plans)
            .map(|(check, &(kind, role))| {
                s.spawn(move || run_check_on(check, role, kind, corpus.get(kind), corpus.config()))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check panicked"))
            .collect()
    });
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

/// Process exit code for a set of reports: 1 if any claim failed.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(VerificationReport::is_failure) {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            instances: 12,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn corpus_is_seed_deterministic() {
        let a = build_corpus(&small(), MapKind::Increasing).unwrap();
        let b = build_corpus(&small(), MapKind::Increasing).unwrap();
        assert_eq!(a.len(), 12);
        for (p, q) in a.iter().zip(&b) {
            assert_eq!((&p.x, &p.y, &p.table), (&q.x, &q.y, &q.table));
            assert!(!p.x.has_extrema() && p.map().is_increasing());
        }
    }

    #[test]
    fn exhaustive_subsets_cover_the_power_set() {
        let c = small();
        let inst = &build_corpus(&c, MapKind::Arbitrary).unwrap()[0];
        let n = inst.x.len();
        assert_eq!(subjects(inst, SubjectKind::Subsets, &c, "t").len(), 1 << n);
        assert_eq!(
            subjects(inst, SubjectKind::SubsetPairs, &c, "t").len(),
            3usize.pow(n as u32)
        );
        assert_eq!(subjects(inst, SubjectKind::Selected, &c, "t").len(), 3 << n);
    }

    #[test]
    fn unknown_check_is_an_error() {
        assert!(matches!(
            run_checks(&["NoSuchProp"], &small()),
            Err(Error::UnknownCheck(_))
        ));
    }

    #[test]
    fn controls_find_counterexamples_that_replay() {
        let r = run_check("Prop3.3-control", &small()).unwrap();
        assert_eq!(r.role, Role::Control);
        assert_eq!(r.verdict, Verdict::CounterexampleFound);
        for w in &r.failures {
            let text = serde_json::to_string(w).unwrap();
            let back: Witness = serde_json::from_str(&text).unwrap();
            assert!(matches!(back.replay().unwrap(), Outcome::Fail(_)));
        }
    }

    #[test]
    fn weaker_forced_map_kind_relabels_claims() {
        let c = VerifyConfig {
            map_kind: Some(MapKind::Arbitrary),
            ..small()
        };
        let r = run_check("Prop3.3", &c).unwrap();
        assert_eq!(r.role, Role::Control);
        assert_eq!(r.corpus, MapKind::Arbitrary);
        assert_eq!(exit_code(&[r]), 0);
    }
}
