//! The catalog of verified claims and their per-subject probes.

use crate::completion::{cut_label, dedekind_completion, CompletionConfig, Cut, Strategy};
use crate::error::{Error, Result};
use crate::extensions::{CofinalSelector, Operator};
use crate::poset::{ExtremaPolicy, FinitePoset, PosetMap};
use crate::subset::Subset;

use super::generate::{Instance, MapKind};
use super::{Mismatch, Outcome, Role, Subject, SubjectKind};

/// Largest `|A|` whose cofinal subsets are enumerated inside probes.
pub const LITERAL_COFINAL_CAP: usize = 10;

pub(crate) type Probe = fn(&Instance, &Subject) -> Outcome;

/// One registered claim.
pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    pub role: Role,
    /// Map kind the corpus is drawn with; the claim's hypothesis on the map.
    pub corpus: MapKind,
    pub subjects: SubjectKind,
    pub(crate) probe: Probe,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check")
            .field("id", &self.id)
            .field("role", &self.role)
            .finish()
    }
}

macro_rules! check {
    ($id:literal, $title:literal, $role:ident, $corpus:ident, $subjects:expr, $probe:ident) => {
        Check {
            id: $id,
            title: $title,
            role: Role::$role,
            corpus: MapKind::$corpus,
            subjects: $subjects,
            probe: $probe,
        }
    };
}

pub static CATALOG: &[Check] = &[
    // Bounds and closure in a single poset.
    check!(
        "A.11",
        "upper and lower bounds are antitone",
        Claim,
        Arbitrary,
        SubjectKind::SubsetPairs,
        antitone
    ),
    check!(
        "A.12",
        "A is contained in A^ul and A^lu",
        Claim,
        Arbitrary,
        SubjectKind::Subsets,
        expansion
    ),
    check!(
        "A.13",
        "A^ulu = A^u and A^lul = A^l",
        Claim,
        Arbitrary,
        SubjectKind::Subsets,
        tripling
    ),
    check!(
        "A.16-A.17",
        "bounds of singletons and principal sets",
        Claim,
        Arbitrary,
        SubjectKind::Elements,
        singletons
    ),
    check!(
        "A.4-A.6",
        "empty/full dichotomy for bounds (no extrema)",
        Claim,
        Arbitrary,
        SubjectKind::Subsets,
        dichotomy
    ),
    check!(
        "Hasse-roundtrip",
        "closure of the cover relation is the order",
        Claim,
        Arbitrary,
        SubjectKind::Whole,
        hasse_roundtrip
    ),
    // Completion.
    check!(
        "MacNeille-1",
        "sup and inf of every family of cuts are least/greatest bounds among cuts",
        Claim,
        Arbitrary,
        SubjectKind::CutFamilies,
        order_complete
    ),
    check!(
        "MacNeille-2",
        "embedding is an OIE preserving existing sup and inf",
        Claim,
        Arbitrary,
        SubjectKind::Subsets,
        embedding_preserves
    ),
    check!(
        "MacNeille-3",
        "every cut is the join and the meet of principal ideals",
        Claim,
        Arbitrary,
        SubjectKind::Cuts,
        density
    ),
    check!(
        "A.9",
        "the empty set and the whole poset are cuts (no extrema)",
        Claim,
        Arbitrary,
        SubjectKind::Whole,
        trivial_cuts
    ),
    check!(
        "A.18",
        "proper cuts lie between two principal ideals (no extrema)",
        Claim,
        Arbitrary,
        SubjectKind::Cuts,
        proper_bounds
    ),
    check!(
        "A.22",
        "A^ul is the join of the principal ideals of A",
        Claim,
        Arbitrary,
        SubjectKind::Subsets,
        closure_is_join
    ),
    check!(
        "Closure-operator",
        "A -> A^ul is extensive, idempotent and monotone",
        Claim,
        Arbitrary,
        SubjectKind::SubsetPairs,
        closure_operator
    ),
    check!(
        "Completion-strategies",
        "naive and generated completions agree",
        Claim,
        Arbitrary,
        SubjectKind::Whole,
        strategies_agree
    ),
    // Extensions.
    check!(
        "Prop3.1",
        "tilde equals L for every cofinal selector",
        Claim,
        Arbitrary,
        SubjectKind::Selected,
        tilde_equals_selector
    ),
    check!(
        "Prop3.2",
        "bar is contained in tilde on directed subsets",
        Claim,
        Arbitrary,
        SubjectKind::Subsets,
        bar_within_tilde_directed
    ),
    check!(
        "Prop3.2-control",
        "bar within tilde on non-directed subsets",
        Control,
        Arbitrary,
        SubjectKind::Subsets,
        bar_within_tilde_undirected
    ),
    check!(
        "Prop3.2-strictness",
        "directed subsets where bar is strictly smaller than tilde",
        Observation,
        Arbitrary,
        SubjectKind::Subsets,
        bar_strictly_within_tilde
    ),
    check!(
        "Prop3.3",
        "bar equals sharp for increasing maps",
        Claim,
        Increasing,
        SubjectKind::Subsets,
        bar_equals_sharp
    ),
    check!(
        "Prop3.3-control",
        "bar equals sharp for non-increasing maps",
        Control,
        Arbitrary,
        SubjectKind::Subsets,
        bar_equals_sharp_non_increasing
    ),
    check!(
        "Cor3.1",
        "all four operators agree for increasing maps on directed subsets",
        Claim,
        Increasing,
        SubjectKind::Selected,
        all_agree_directed
    ),
    check!(
        "2.11",
        "bar, tilde and L are contained in sharp",
        Claim,
        Arbitrary,
        SubjectKind::Selected,
        within_sharp
    ),
    check!(
        "Cut-outputs",
        "every operator output is a cut of Y",
        Claim,
        Arbitrary,
        SubjectKind::Selected,
        outputs_are_cuts
    ),
    check!(
        "PropA.1-1",
        "sharp is monotone on subsets",
        Claim,
        Arbitrary,
        SubjectKind::SubsetPairs,
        sharp_monotone
    ),
    check!(
        "Thm4.1-diag4.1",
        "all operators send {x} to <phi(x)]",
        Claim,
        Arbitrary,
        SubjectKind::Elements,
        singleton_diagram
    ),
    check!(
        "Thm4.1-diag4.2",
        "tilde, L and bar send <x] to <phi(x)]; sharp does for increasing phi",
        Claim,
        Arbitrary,
        SubjectKind::Elements,
        ideal_diagram
    ),
    check!(
        "Thm4.1-diag4.2-sharp",
        "sharp sends <x] to <phi(x)] for non-increasing phi",
        Control,
        Arbitrary,
        SubjectKind::Elements,
        ideal_diagram_sharp_non_increasing
    ),
    check!(
        "PropA.1-2",
        "sharp sends <x] to <phi(x)] for increasing maps",
        Claim,
        Increasing,
        SubjectKind::Elements,
        sharp_on_ideals
    ),
    check!(
        "PropA.1-3",
        "sharp restricted to cuts is an OIE when phi is an OIE",
        Claim,
        Oie,
        SubjectKind::CutPairs,
        sharp_is_oie
    ),
    check!(
        "LemmaA.1",
        "mu(inf E) <= inf mu(E) <= sup mu(E) <= mu(sup E) for mu = sharp on cuts",
        Claim,
        Arbitrary,
        SubjectKind::NonemptyCutFamilies,
        increasing_between_lattices
    ),
    check!(
        "Bar-optimized",
        "bar via maximal elements equals bar by cofinal enumeration",
        Claim,
        Arbitrary,
        SubjectKind::SmallSubsets(LITERAL_COFINAL_CAP),
        bar_shortcut
    ),
];

pub fn find_check(id: &str) -> Result<&'static Check> {
    CATALOG
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_owned()))
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome::Fail(Mismatch {
        expected: String::new(),
        actual: String::new(),
        detail: detail.into(),
    })
}

fn expect_eq(poset: &FinitePoset, expected: &Subset, actual: &Subset, what: &str) -> Outcome {
    if expected == actual {
        Outcome::Pass
    } else {
        Outcome::Fail(Mismatch {
            expected: cut_label(poset, expected),
            actual: cut_label(poset, actual),
            detail: what.to_owned(),
        })
    }
}

fn expect_within(poset: &FinitePoset, small: &Subset, big: &Subset, what: &str) -> Outcome {
    if small.is_subset(big) {
        Outcome::Pass
    } else {
        Outcome::Fail(Mismatch {
            expected: format!("subset of {}", cut_label(poset, big)),
            actual: cut_label(poset, small),
            detail: what.to_owned(),
        })
    }
}

/// Runs the probes in order and returns the first failure.
macro_rules! all_of {
    ($($e:expr),+ $(,)?) => {{
        let mut out = Outcome::Pass;
        $(
            if out == Outcome::Pass {
                out = $e;
            }
        )+
        out
    }};
}

/// `bar` from its definition when small enough, else via maximal elements.
fn bar(map: &PosetMap<'_>, a: &Subset) -> Cut {
    map.bar_extension_by_enumeration(a, LITERAL_COFINAL_CAP)
        .unwrap_or_else(|_| map.bar_extension(a))
}

fn apply(map: &PosetMap<'_>, op: Operator, selector: &CofinalSelector, a: &Subset) -> Result<Cut> {
    match op {
        Operator::Bar => Ok(bar(map, a)),
        _ => map.extend(op, Some(selector), a).map(|r| r.value),
    }
}

fn brute_upper_bounds(p: &FinitePoset, a: &Subset) -> Vec<usize> {
    (0..p.len())
        .filter(|&y| a.iter().all(|x| p.leq(x, y)))
        .collect()
}

fn brute_lower_bounds(p: &FinitePoset, a: &Subset) -> Vec<usize> {
    (0..p.len())
        .filter(|&y| a.iter().all(|x| p.leq(y, x)))
        .collect()
}

fn antitone(inst: &Instance, s: &Subject) -> Outcome {
    let (a, b) = s.pair();
    let x = &inst.x;
    all_of!(
        expect_within(x, &x.upper_bounds(b), &x.upper_bounds(a), "B^u within A^u"),
        expect_within(x, &x.lower_bounds(b), &x.lower_bounds(a), "B^l within A^l"),
    )
}

fn expansion(inst: &Instance, s: &Subject) -> Outcome {
    let a = s.subset();
    let x = &inst.x;
    let ul = x.lower_bounds(&x.upper_bounds(a));
    let lu = x.upper_bounds(&x.lower_bounds(a));
    all_of!(
        expect_within(x, a, &ul, "A within A^ul"),
        expect_within(x, a, &lu, "A within A^lu")
    )
}

fn tripling(inst: &Instance, s: &Subject) -> Outcome {
    let a = s.subset();
    let x = &inst.x;
    let u = x.upper_bounds(a);
    let l = x.lower_bounds(a);
    all_of!(
        expect_eq(x, &u, &x.upper_bounds(&x.lower_bounds(&u)), "A^ulu = A^u"),
        expect_eq(x, &l, &x.lower_bounds(&x.upper_bounds(&l)), "A^lul = A^l"),
    )
}

fn singletons(inst: &Instance, s: &Subject) -> Outcome {
    let e = s.element();
    let x = &inst.x;
    let single = x.subset_from_indices([e]);
    let ideal = x.principal_ideal(e);
    let filter = x.principal_filter(e);
    all_of!(
        expect_eq(x, &filter, &x.upper_bounds(&single), "{x}^u = [x>"),
        expect_eq(x, &ideal, &x.lower_bounds(&single), "{x}^l = <x]"),
        expect_eq(x, &ideal, &x.lower_bounds(&filter), "[x>^l = <x]"),
        expect_eq(x, &filter, &x.upper_bounds(&ideal), "<x]^u = [x>"),
        expect_eq(x, &ideal, &x.cut_closure(&single), "{x}^ul = <x]"),
        expect_eq(
            x,
            &filter,
            &x.upper_bounds(&x.lower_bounds(&single)),
            "{x}^lu = [x>"
        ),
    )
}

fn dichotomy(inst: &Instance, s: &Subject) -> Outcome {
    let x = &inst.x;
    if x.has_extrema() {
        return Outcome::Vacuous;
    }
    let a = s.subset();
    let u = x.upper_bounds(a);
    let l = x.lower_bounds(a);
    if u.is_full() != a.is_empty() || l.is_full() != a.is_empty() {
        return fail("A^u = X iff A^l = X iff A is empty");
    }
    if u.is_empty() != brute_upper_bounds(x, a).is_empty() {
        return fail("A^u empty iff A unbounded above");
    }
    if l.is_empty() != brute_lower_bounds(x, a).is_empty() {
        return fail("A^l empty iff A unbounded below");
    }
    Outcome::Pass
}

fn hasse_roundtrip(inst: &Instance, _: &Subject) -> Outcome {
    for p in [&inst.x, &inst.y] {
        let covers = p.hasse_covers();
        let rebuilt =
            FinitePoset::from_index_pairs(p.labels().to_vec(), &covers, ExtremaPolicy::Allow);
        if rebuilt.ok().as_ref() != Some(p) {
            return fail("closure of the covers differs from the order");
        }
        let brute: Vec<(usize, usize)> = p
            .strict_pairs()
            .into_iter()
            .filter(|&(a, b)| !(0..p.len()).any(|c| p.lt(a, c) && p.lt(c, b)))
            .collect();
        if brute != covers {
            return fail("cover relation is not the transitive reduction");
        }
    }
    Outcome::Pass
}

fn order_complete(inst: &Instance, s: &Subject) -> Outcome {
    let x = &inst.x;
    let family = s.family();
    let (Ok(sup), Ok(inf)) = (x.sup_cuts(family), x.inf_cuts(family)) else {
        return fail("family does not belong to X");
    };
    if !x.is_cut(&sup) || !x.is_cut(&inf) {
        return fail("sup or inf is not a cut");
    }
    if family
        .iter()
        .any(|f| !f.is_subset(&sup) || !inf.is_subset(f))
    {
        return fail("sup is not an upper bound or inf is not a lower bound");
    }
    for c in inst.x_completion().cuts() {
        if family.iter().all(|f| f.is_subset(c)) && !sup.is_subset(c) {
            return Outcome::Fail(Mismatch {
                expected: format!("subset of {}", cut_label(x, c)),
                actual: cut_label(x, &sup),
                detail: "sup is not the least upper bound".into(),
            });
        }
        if family.iter().all(|f| c.is_subset(f)) && !c.is_subset(&inf) {
            return Outcome::Fail(Mismatch {
                expected: format!("superset of {}", cut_label(x, c)),
                actual: cut_label(x, &inf),
                detail: "inf is not the greatest lower bound".into(),
            });
        }
    }
    Outcome::Pass
}

fn embedding_preserves(inst: &Instance, s: &Subject) -> Outcome {
    let x = &inst.x;
    let set = s.subset();
    for a in set.iter() {
        for b in set.iter() {
            let (ia, ib) = (x.embed(a), x.embed(b));
            if x.leq(a, b) != ia.is_subset(&ib) || (a != b && ia == ib) {
                return fail(format!(
                    "embedding is not an OIE at ({}, {})",
                    x.label(a),
                    x.label(b)
                ));
            }
        }
    }
    let images: Vec<Cut> = set.iter().map(|a| x.embed(a)).collect();
    let ups = brute_upper_bounds(x, set);
    if let Some(&sup) = ups.iter().find(|&&u| ups.iter().all(|&v| x.leq(u, v))) {
        let got = x.sup_cuts(&images).expect("same base");
        if let o @ Outcome::Fail(_) = expect_eq(x, &x.embed(sup), &got, "embedding preserves sup") {
            return o;
        }
    }
    let downs = brute_lower_bounds(x, set);
    if let Some(&inf) = downs.iter().find(|&&u| downs.iter().all(|&v| x.leq(v, u))) {
        let got = x.inf_cuts(&images).expect("same base");
        return expect_eq(x, &x.embed(inf), &got, "embedding preserves inf");
    }
    Outcome::Pass
}

fn density(inst: &Instance, s: &Subject) -> Outcome {
    let x = &inst.x;
    match Cut::new(x, s.subset().clone()) {
        Ok(c) if x.density_check(&c) => Outcome::Pass,
        Ok(c) => fail(format!("{} is not order-dense", cut_label(x, &c))),
        Err(_) => fail("subject is not a cut"),
    }
}

fn trivial_cuts(inst: &Instance, _: &Subject) -> Outcome {
    for p in [&inst.x, &inst.y] {
        if p.has_extrema() {
            return Outcome::Vacuous;
        }
        if !p.is_cut(&p.empty_subset()) || !p.is_cut(&p.full_subset()) {
            return fail("empty set or whole poset is not a cut");
        }
    }
    Outcome::Pass
}

fn proper_bounds(inst: &Instance, s: &Subject) -> Outcome {
    let x = &inst.x;
    if x.has_extrema() {
        return Outcome::Vacuous;
    }
    let Ok(c) = Cut::new(x, s.subset().clone()) else {
        return fail("subject is not a cut");
    };
    let proper = !c.is_empty() && !c.is_full();
    let brute = (0..x.len()).any(|a| {
        (0..x.len())
            .any(|b| x.principal_ideal(a).is_subset(&c) && c.is_subset(&x.principal_ideal(b)))
    });
    if proper != brute {
        return fail(format!(
            "proper = {proper} but bracketing ideals exist = {brute}"
        ));
    }
    match x.proper_cut_bounds(&c) {
        Some((a, b))
            if !(x.principal_ideal(a).is_subset(&c) && c.is_subset(&x.principal_ideal(b))) =>
        {
            fail("returned bounds do not bracket the cut")
        }
        found if found.is_some() != proper => {
            fail("bounds returned for a non-proper cut or missing")
        }
        _ => Outcome::Pass,
    }
}

fn closure_is_join(inst: &Instance, s: &Subject) -> Outcome {
    let x = &inst.x;
    let a = s.subset();
    let ideals: Vec<Cut> = a.iter().map(|i| x.embed(i)).collect();
    expect_eq(
        x,
        &x.sup_cuts(&ideals).expect("same base"),
        &x.cut_closure(a),
        "A^ul = sup <a]",
    )
}

fn closure_operator(inst: &Instance, s: &Subject) -> Outcome {
    let x = &inst.x;
    let (a, b) = s.pair();
    let ca = x.cut_closure(a);
    all_of!(
        expect_within(x, a, &ca, "extensive"),
        expect_eq(x, &ca, &x.cut_closure(&ca), "idempotent"),
        expect_within(x, &ca, &x.cut_closure(b), "monotone"),
    )
}

fn strategies_agree(inst: &Instance, _: &Subject) -> Outcome {
    for p in [&inst.x, &inst.y] {
        let naive = dedekind_completion(
            p,
            &CompletionConfig::default().with_strategy(Strategy::Naive),
        );
        let generated = dedekind_completion(
            p,
            &CompletionConfig::default().with_strategy(Strategy::Generated),
        );
        match (naive, generated) {
            (Ok(n), Ok(g)) if n.cuts() == g.cuts() => {}
            (Ok(n), Ok(g)) => {
                return Outcome::Fail(Mismatch {
                    expected: format!("{} cuts", n.len()),
                    actual: format!("{} cuts", g.len()),
                    detail: "naive and generated cut lists differ".into(),
                })
            }
            _ => return fail("completion failed"),
        }
    }
    Outcome::Pass
}

fn tilde_equals_selector(inst: &Instance, s: &Subject) -> Outcome {
    let (a, sel) = s.selected();
    let map = inst.map();
    match map.selector_extension(sel, a) {
        Ok(l) => expect_eq(&inst.y, &map.tilde_extension(a), &l, "tilde = L"),
        Err(e) => fail(format!("selector failed: {e}")),
    }
}

fn bar_within_tilde(inst: &Instance, a: &Subset) -> Outcome {
    let map = inst.map();
    expect_within(
        &inst.y,
        &bar(&map, a),
        &map.tilde_extension(a),
        "bar within tilde",
    )
}

fn bar_within_tilde_directed(inst: &Instance, s: &Subject) -> Outcome {
    let a = s.subset();
    if !inst.x.is_directed(a) {
        return Outcome::Vacuous;
    }
    bar_within_tilde(inst, a)
}

fn bar_within_tilde_undirected(inst: &Instance, s: &Subject) -> Outcome {
    let a = s.subset();
    if inst.x.is_directed(a) {
        return Outcome::Vacuous;
    }
    bar_within_tilde(inst, a)
}

fn bar_strictly_within_tilde(inst: &Instance, s: &Subject) -> Outcome {
    let a = s.subset();
    if !inst.x.is_directed(a) {
        return Outcome::Vacuous;
    }
    let map = inst.map();
    let (b, t) = (bar(&map, a), map.tilde_extension(a));
    if b.is_subset(&t) && b != t {
        Outcome::Fail(Mismatch {
            expected: cut_label(&inst.y, &t),
            actual: cut_label(&inst.y, &b),
            detail: "bar strictly inside tilde".into(),
        })
    } else {
        Outcome::Pass
    }
}

fn bar_equals_sharp_core(inst: &Instance, a: &Subset) -> Outcome {
    let map = inst.map();
    let sharp = map.sharp_extension(a);
    if let o @ Outcome::Fail(_) = expect_eq(&inst.y, &sharp, &bar(&map, a), "bar = sharp") {
        return o;
    }
    if let Ok(cofinal) = inst.x.cofinal_subsets(a, LITERAL_COFINAL_CAP) {
        for b in cofinal {
            if let o @ Outcome::Fail(_) = expect_eq(
                &inst.y,
                &sharp,
                &map.sharp_extension(&b),
                "(phi(A))^ul = (phi(B))^ul for cofinal B",
            ) {
                return o;
            }
        }
    }
    Outcome::Pass
}

fn bar_equals_sharp(inst: &Instance, s: &Subject) -> Outcome {
    bar_equals_sharp_core(inst, s.subset())
}

fn bar_equals_sharp_non_increasing(inst: &Instance, s: &Subject) -> Outcome {
    if inst.map().is_increasing() {
        return Outcome::Vacuous;
    }
    let map = inst.map();
    let a = s.subset();
    expect_eq(
        &inst.y,
        &map.sharp_extension(a),
        &bar(&map, a),
        "bar = sharp",
    )
}

fn all_agree_directed(inst: &Instance, s: &Subject) -> Outcome {
    let (a, sel) = s.selected();
    if !inst.x.is_directed(a) {
        return Outcome::Vacuous;
    }
    let map = inst.map();
    let sharp = map.sharp_extension(a);
    for op in [Operator::Bar, Operator::Tilde, Operator::Selector] {
        match apply(&map, op, sel, a) {
            Ok(v) => {
                if let o @ Outcome::Fail(_) =
                    expect_eq(&inst.y, &sharp, &v, &format!("{op} = sharp"))
                {
                    return o;
                }
            }
            Err(e) => return fail(format!("{op} failed: {e}")),
        }
    }
    Outcome::Pass
}

fn within_sharp(inst: &Instance, s: &Subject) -> Outcome {
    let (a, sel) = s.selected();
    let map = inst.map();
    let sharp = map.sharp_extension(a);
    for op in [Operator::Bar, Operator::Tilde, Operator::Selector] {
        match apply(&map, op, sel, a) {
            Ok(v) => {
                if let o @ Outcome::Fail(_) =
                    expect_within(&inst.y, &v, &sharp, &format!("{op} within sharp"))
                {
                    return o;
                }
            }
            Err(e) => return fail(format!("{op} failed: {e}")),
        }
    }
    match map.extensions_within_sharp(sel, a) {
        Ok(true) => Outcome::Pass,
        Ok(false) => fail("union of bar, tilde and L is not within sharp"),
        Err(e) => fail(e.to_string()),
    }
}

fn outputs_are_cuts(inst: &Instance, s: &Subject) -> Outcome {
    let (a, sel) = s.selected();
    let map = inst.map();
    let y = &inst.y;
    for op in Operator::ALL {
        match apply(&map, op, sel, a) {
            Ok(v) => {
                let closed = y.lower_bounds(&y.upper_bounds(&v));
                if let o @ Outcome::Fail(_) =
                    expect_eq(y, &closed, &v, &format!("{op} output is a cut"))
                {
                    return o;
                }
            }
            Err(e) => return fail(format!("{op} failed: {e}")),
        }
    }
    if let Ok(v) = map.bar_extension_by_enumeration(a, LITERAL_COFINAL_CAP) {
        if !y.is_cut(&v) {
            return fail("literal bar output is not a cut");
        }
    }
    Outcome::Pass
}

fn sharp_monotone(inst: &Instance, s: &Subject) -> Outcome {
    let (a, b) = s.pair();
    let map = inst.map();
    expect_within(
        &inst.y,
        &map.sharp_extension(a),
        &map.sharp_extension(b),
        "sharp(A) within sharp(B)",
    )
}

fn diagram(inst: &Instance, e: usize, input: &Subset, ops: &[Operator]) -> Outcome {
    let map = inst.map();
    let want = inst.y.principal_ideal(map.apply(e));
    for &op in ops {
        for sel in [CofinalSelector::Identity, CofinalSelector::MaximalElements] {
            if op != Operator::Selector && sel == CofinalSelector::MaximalElements {
                continue;
            }
            match apply(&map, op, &sel, input) {
                Ok(v) => {
                    if let o @ Outcome::Fail(_) = expect_eq(
                        &inst.y,
                        &want,
                        &v,
                        &format!("{op} commutes at {}", inst.x.label(e)),
                    ) {
                        return o;
                    }
                }
                Err(err) => return fail(format!("{op} failed: {err}")),
            }
        }
    }
    Outcome::Pass
}

fn singleton_diagram(inst: &Instance, s: &Subject) -> Outcome {
    let e = s.element();
    diagram(inst, e, &inst.x.subset_from_indices([e]), &Operator::ALL)
}

fn ideal_diagram(inst: &Instance, s: &Subject) -> Outcome {
    let e = s.element();
    let ideal = inst.x.principal_ideal(e);
    let ops: &[Operator] = if inst.map().is_increasing() {
        &Operator::ALL
    } else {
        &[Operator::Tilde, Operator::Selector, Operator::Bar]
    };
    diagram(inst, e, &ideal, ops)
}

fn ideal_diagram_sharp_non_increasing(inst: &Instance, s: &Subject) -> Outcome {
    if inst.map().is_increasing() {
        return Outcome::Vacuous;
    }
    let e = s.element();
    diagram(inst, e, &inst.x.principal_ideal(e), &[Operator::Sharp])
}

fn sharp_on_ideals(inst: &Instance, s: &Subject) -> Outcome {
    let e = s.element();
    diagram(inst, e, &inst.x.principal_ideal(e), &[Operator::Sharp])
}

fn sharp_is_oie(inst: &Instance, s: &Subject) -> Outcome {
    let (a, b) = s.pair();
    let map = inst.map();
    let (sa, sb) = (map.sharp_extension(a), map.sharp_extension(b));
    if a.is_subset(b) != sa.is_subset(&sb) {
        return Outcome::Fail(Mismatch {
            expected: format!("inclusion {}", a.is_subset(b)),
            actual: format!("image inclusion {}", sa.is_subset(&sb)),
            detail: format!(
                "order not reflected for {} and {}",
                cut_label(&inst.x, a),
                cut_label(&inst.x, b)
            ),
        });
    }
    if a != b && sa == sb {
        return fail("sharp is not injective on cuts");
    }
    Outcome::Pass
}

fn increasing_between_lattices(inst: &Instance, s: &Subject) -> Outcome {
    let x = &inst.x;
    let y = &inst.y;
    let family = s.family();
    if family.is_empty() {
        return Outcome::Vacuous;
    }
    let map = inst.map();
    let mu = |c: &Cut| map.sharp_extension(c);
    let images: Vec<Cut> = family.iter().map(mu).collect();
    let lo = mu(&x.inf_cuts(family).expect("same base"));
    let inf_images = y.inf_cuts(&images).expect("same base");
    let sup_images = y.sup_cuts(&images).expect("same base");
    let hi = mu(&x.sup_cuts(family).expect("same base"));
    all_of!(
        expect_within(y, &lo, &inf_images, "mu(inf E) <= inf mu(E)"),
        expect_within(y, &inf_images, &sup_images, "inf mu(E) <= sup mu(E)"),
        expect_within(y, &sup_images, &hi, "sup mu(E) <= mu(sup E)"),
    )
}

fn bar_shortcut(inst: &Instance, s: &Subject) -> Outcome {
    let a = s.subset();
    let map = inst.map();
    match map.bar_extension_by_enumeration(a, LITERAL_COFINAL_CAP) {
        Ok(literal) => expect_eq(
            &inst.y,
            &literal,
            &map.bar_extension(a),
            "bar shortcut = literal bar",
        ),
        Err(_) => Outcome::Vacuous,
    }
}
