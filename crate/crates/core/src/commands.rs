//! The `complete`, `extend`, `verify` and `render` commands, independent of
//! argument parsing. Each returns the text of its artifacts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::completion::{dedekind_completion, CompletionConfig};
use crate::dot::{completion_dot, poset_dot};
use crate::error::{Error, Result};
use crate::extensions::Operator;
use crate::instance::{InstanceDocument, Resolved};
use crate::poset::FinitePoset;
use crate::verify::{exit_code, run_checks, Outcome, VerificationReport, VerifyConfig, Witness};

/// Picks `name`, or the only entry when `name` is absent.
fn pick<'a>(
    names: impl Iterator<Item = &'a str>,
    name: Option<&'a str>,
    what: &str,
) -> Result<&'a str> {
    if let Some(n) = name {
        return Ok(n);
    }
    let all: Vec<&str> = names.collect();
    match all[..] {
        [only] => Ok(only),
        [] => Err(Error::Validation(format!("document has no {what}"))),
        _ => Err(Error::Validation(format!(
            "document has several {what}s ({}); choose one with --{what}",
            all.join(", ")
        ))),
    }
}

fn load(text: &str) -> Result<Resolved> {
    InstanceDocument::from_json(text)?.resolve()
}

fn hypothesis(poset: &FinitePoset, allow_extrema: bool) -> Result<()> {
    if allow_extrema {
        Ok(())
    } else {
        poset.check_no_extrema()
    }
}

#[derive(Clone, Debug, Default)]
pub struct CompleteOptions {
    pub poset: Option<String>,
    pub allow_extrema: bool,
    pub completion: CompletionConfig,
    pub dot: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionArtifact {
    pub cuts: Vec<Vec<String>>,
    pub order: Vec<(usize, usize)>,
    pub embedding: BTreeMap<String, usize>,
}

/// JSON of the completion and, when requested, its DOT diagram.
pub fn complete(input: &str, opts: &CompleteOptions) -> Result<(String, Option<String>)> {
    let doc = load(input)?;
    let name = pick(doc.poset_names(), opts.poset.as_deref(), "poset")?;
    let poset = doc.poset(name)?;
    hypothesis(poset, opts.allow_extrema)?;
    let lattice = dedekind_completion(poset, &opts.completion)?;
    let artifact = CompletionArtifact {
        cuts: lattice
            .cuts()
            .iter()
            .map(|c| poset.subset_labels(c))
            .collect(),
        order: lattice.covers(poset),
        embedding: (0..poset.len())
            .map(|i| (poset.label(i).to_owned(), lattice.embedding()[i]))
            .collect(),
    };
    let json = serde_json::to_string_pretty(&artifact).expect("serializable") + "\n";
    let dot = opts
        .dot
        .then(|| completion_dot(&lattice, poset, &format!("{name}#")));
    Ok((json, dot))
}

#[derive(Clone, Debug)]
pub struct ExtendOptions {
    pub operator: Operator,
    pub map: Option<String>,
    pub subset: String,
    pub selector: Option<String>,
    pub allow_extrema: bool,
    /// Computes `bar` by enumerating cofinal subsets, up to this `|A|`.
    pub literal_bar: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparisons {
    pub subset_of_sharp: bool,
    pub equal_to_sharp: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionArtifact {
    pub operator: Operator,
    pub input_subset: Vec<String>,
    pub result_cut: Vec<String>,
    pub is_cut: bool,
    pub comparisons: Comparisons,
}

pub fn extend(input: &str, opts: &ExtendOptions) -> Result<String> {
    let doc = load(input)?;
    let map_name = pick(doc.map_names(), opts.map.as_deref(), "map")?;
    let map = doc.map(map_name)?;
    let (x, y) = (map.domain(), map.codomain());
    hypothesis(x, opts.allow_extrema)?;
    hypothesis(y, opts.allow_extrema)?;
    let (_, a) = doc.subset(&opts.subset)?;
    if a.base() != x.id() {
        return Err(Error::Validation(format!(
            "subset `{}` does not belong to the domain of `{map_name}`",
            opts.subset
        )));
    }
    let selector = match (&opts.selector, opts.operator) {
        (Some(s), _) => Some(doc.selector(s)?),
        (None, Operator::Selector) => {
            return Err(Error::InvalidSelector("operator L needs --selector".into()));
        }
        (None, _) => None,
    };
    let value = match (opts.operator, opts.literal_bar) {
        (Operator::Bar, Some(cap)) => map.bar_extension_by_enumeration(a, cap)?,
        (op, _) => map.extend(op, selector, a)?.value,
    };
    let sharp = map.sharp_extension(a);
    let artifact = ExtensionArtifact {
        operator: opts.operator,
        input_subset: x.subset_labels(a),
        result_cut: y.subset_labels(&value),
        is_cut: y.is_cut(&value),
        comparisons: Comparisons {
            subset_of_sharp: value.is_subset(&sharp),
            equal_to_sharp: value == sharp,
        },
    };
    Ok(serde_json::to_string_pretty(&artifact).expect("serializable") + "\n")
}

/// The JSON report array and the process exit code.
pub fn verify(ids: &[&str], config: &VerifyConfig) -> Result<(String, i32)> {
    let reports = run_checks(ids, config)?;
    Ok((reports_json(&reports), exit_code(&reports)))
}

pub fn reports_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("serializable") + "\n"
}

/// Replays a witness file, which may hold one witness, a list of witnesses
/// or a whole report array. Returns one line per witness and the exit code
/// (1 if any witness no longer fails).
pub fn replay(text: &str) -> Result<(String, i32)> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let parse = |v: serde_json::Value| -> Result<Vec<Witness>> {
        serde_path_to_error::deserialize(v).map_err(|e| Error::Parse {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    };
    let witnesses = match value {
        serde_json::Value::Array(items) if items.iter().all(|i| i.get("failures").is_some()) => {
            let reports: Vec<VerificationReport> =
                serde_path_to_error::deserialize(serde_json::Value::Array(items)).map_err(|e| {
                    Error::Parse {
                        path: e.path().to_string(),
                        message: e.inner().to_string(),
                    }
                })?;
            reports.into_iter().flat_map(|r| r.failures).collect()
        }
        serde_json::Value::Array(items) => parse(serde_json::Value::Array(items))?,
        single => parse(serde_json::Value::Array(vec![single]))?,
    };
    let mut out = String::new();
    let mut code = 0;
    for w in &witnesses {
        let outcome = w.replay()?;
        let verdict = match outcome {
            Outcome::Fail(_) => "fail (reproduced)",
            _ => {
                code = 1;
                "pass (not reproduced)"
            }
        };
        out.push_str(&format!("{}: {verdict}\n", w.check_id));
    }
    Ok((out, code))
}

#[derive(Clone, Debug, Default)]
pub struct RenderOptions {
    pub poset: Option<String>,
    /// Render the completion instead of the poset.
    pub completion: bool,
    pub allow_extrema: bool,
    pub completion_config: CompletionConfig,
}

/// DOT text of a poset's Hasse diagram or of its completion.
pub fn render(input: &str, opts: &RenderOptions) -> Result<String> {
    let doc = load(input)?;
    let name = pick(doc.poset_names(), opts.poset.as_deref(), "poset")?;
    let poset = doc.poset(name)?;
    if !opts.completion {
        return Ok(poset_dot(poset, name));
    }
    hypothesis(poset, opts.allow_extrema)?;
    let lattice = dedekind_completion(poset, &opts.completion_config)?;
    Ok(completion_dot(&lattice, poset, &format!("{name}#")))
}
