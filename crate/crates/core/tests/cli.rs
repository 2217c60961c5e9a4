use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

const BUTTERFLY: &str = include_str!("../examples/data/butterfly.json");

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_macneille"));
    c.env_remove("POSET_SIZE_CAP");
    c
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Identity-like instance on the butterfly with subset `A` and the given map pairs.
fn extend_doc(pairs: Value, members: Value, selectors: Value) -> String {
    json!({
        "posets": [{"name": "X", "elements": ["a", "b", "c", "d"],
                    "relation": [["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"]]}],
        "maps": [{"name": "phi", "domain": "X", "codomain": "X", "pairs": pairs}],
        "subsets": [{"name": "A", "poset": "X", "members": members}],
        "selectors": selectors
    })
    .to_string()
}

#[test]
fn antichain_completion_is_a_diamond() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "ac.json",
        r#"{"posets": [{"name": "X", "elements": ["a", "b"], "relation": [], "relation_kind": "covers"}]}"#,
    );
    let v = stdout_json(&bin().arg("complete").arg(&input).output().unwrap());
    assert_eq!(v["cuts"], json!([[], ["a"], ["b"], ["a", "b"]]));
    assert_eq!(v["order"], json!([[0, 1], [0, 2], [1, 3], [2, 3]]));
    assert_eq!(v["embedding"], json!({"a": 1, "b": 2}));
}

#[test]
fn butterfly_dot_lists_cover_edges_only() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "b.json", BUTTERFLY);
    let dot = dir.path().join("b.dot");
    let v = stdout_json(
        &bin()
            .arg("complete")
            .arg(&input)
            .arg("--dot")
            .arg(&dot)
            .output()
            .unwrap(),
    );
    assert_eq!(v["cuts"].as_array().unwrap().len(), 7);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("[label=").count(), 7);
    assert_eq!(text.matches(" -> ").count(), 8);
    assert!(text.contains("[label=\"{a,b}\"]"));
}

#[test]
fn chain_needs_allow_extrema() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "c.json",
        r#"{"posets": [{"name": "C", "elements": ["1", "2", "3"], "relation": [["1", "2"], ["2", "3"]]}]}"#,
    );
    let out = bin().arg("complete").arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("poset has minimum"));
    let v = stdout_json(
        &bin()
            .arg("complete")
            .arg(&input)
            .arg("--allow-extrema")
            .output()
            .unwrap(),
    );
    assert_eq!(v["cuts"], json!([["1"], ["1", "2"], ["1", "2", "3"]]));
}

#[test]
fn size_cap_comes_from_the_environment_unless_overridden() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "b.json", BUTTERFLY);
    let out = bin()
        .env("POSET_SIZE_CAP", "3")
        .args(["complete", "--strategy", "naive"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("exceeds the cap of 3"),
        "{}",
        stderr(&out)
    );
    let out = bin()
        .env("POSET_SIZE_CAP", "3")
        .args(["complete", "--strategy", "naive", "--size-cap", "4"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn sharp_of_a_singleton_is_the_ideal_of_its_image() {
    let dir = tempfile::tempdir().unwrap();
    let doc = extend_doc(
        json!([["a", "b"], ["b", "b"], ["c", "c"], ["d", "c"]]),
        json!(["d"]),
        json!([]),
    );
    let input = write(dir.path(), "e.json", &doc);
    let v = stdout_json(
        &bin()
            .arg("extend")
            .arg(&input)
            .args(["--operator", "sharp", "--subset", "A"])
            .output()
            .unwrap(),
    );
    assert_eq!(v["operator"], "sharp");
    assert_eq!(v["input_subset"], json!(["d"]));
    assert_eq!(v["result_cut"], json!(["a", "b", "c"]));
    assert_eq!(v["is_cut"], true);
}

#[test]
fn bar_equals_sharp_for_an_increasing_map() {
    let dir = tempfile::tempdir().unwrap();
    let doc = extend_doc(
        json!([["a", "a"], ["b", "a"], ["c", "c"], ["d", "d"]]),
        json!(["a", "b", "c"]),
        json!([]),
    );
    let input = write(dir.path(), "e.json", &doc);
    for extra in [&[][..], &["--literal-bar"][..]] {
        let v = stdout_json(
            &bin()
                .arg("extend")
                .arg(&input)
                .args(["--operator", "bar", "--subset", "A"])
                .args(extra)
                .output()
                .unwrap(),
        );
        assert_eq!(
            v["comparisons"],
            json!({"subset_of_sharp": true, "equal_to_sharp": true})
        );
    }
}

#[test]
fn selector_table_outside_the_subset_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let selectors = json!([{"name": "L", "kind": "ExplicitTable", "poset": "X",
                            "table": [{"subset": ["a", "c"], "selects": ["d"]}]}]);
    let doc = extend_doc(
        json!([["a", "a"], ["b", "b"], ["c", "c"], ["d", "d"]]),
        json!(["a", "c"]),
        selectors,
    );
    let input = write(dir.path(), "e.json", &doc);
    let out = bin()
        .arg("extend")
        .arg(&input)
        .args(["--operator", "L", "--subset", "A", "--selector", "L"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("invalid cofinal selector"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn malformed_documents_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_field = write(
        dir.path(),
        "p.json",
        r#"{"posets": [{"name": "X", "elements": "a"}]}"#,
    );
    let out = bin().arg("render").arg(&bad_field).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("posets[0].elements"),
        "{}",
        stderr(&out)
    );

    let partial = extend_doc(json!([["a", "a"]]), json!(["a"]), json!([]));
    let partial = write(dir.path(), "m.json", &partial);
    let out = bin()
        .arg("extend")
        .arg(&partial)
        .args(["--operator", "sharp", "--subset", "A"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("map not total"), "{}", stderr(&out));
}

#[test]
fn render_writes_the_hasse_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "b.json", BUTTERFLY);
    let out = bin().arg("render").arg(&input).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph \"X\" {"));
    assert_eq!(text.matches(" -> ").count(), 4);
    let out = bin()
        .arg("render")
        .arg(&input)
        .arg("--completion")
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8(out.stdout)
            .unwrap()
            .matches(" -> ")
            .count(),
        8
    );
}

#[test]
fn verify_single_check_and_unknown_check() {
    let v = stdout_json(
        &bin()
            .args(["verify", "Prop3.1", "--x-size", "4", "--instances", "10"])
            .output()
            .unwrap(),
    );
    assert_eq!(v[0]["check_id"], "Prop3.1");
    assert_eq!(v[0]["instances_run"], 10);
    assert_eq!(v[0]["verdict"], "pass");
    assert!(v[0].get("elapsed_ms").is_none());

    let out = bin().args(["verify", "NoSuchProp"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown check `NoSuchProp`"));
}

#[test]
fn forced_non_increasing_maps_make_a_control() {
    let out = bin()
        .args([
            "verify",
            "Prop3.3",
            "--map-kind",
            "arbitrary",
            "--instances",
            "30",
        ])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v[0]["role"], "hypothesis-violated control");
    assert_eq!(v[0]["verdict"], "counterexample-found");
}

#[test]
fn witnesses_replay_from_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = bin()
        .args([
            "verify",
            "Thm4.1-diag4.2-sharp",
            "--instances",
            "30",
            "--out",
        ])
        .arg(&report)
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = bin()
        .arg("verify")
        .arg("--replay")
        .arg(&report)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.is_empty());
    assert!(
        text.lines().all(|l| l.ends_with("fail (reproduced)")),
        "{text}"
    );
}
