//! Reading and writing instance documents and rendering DOT.
//!
//! Run with `cargo run --example instance_io`.

use macneille::dot::{completion_dot, poset_dot};
use macneille::instance::{InstanceDocument, RelationKind};
use macneille::{dedekind_completion, CompletionConfig};

fn main() -> macneille::Result<()> {
    let text = include_str!("data/extension.json");
    let doc = InstanceDocument::from_json(text)?;
    let resolved = doc.resolve()?;
    let x = resolved.poset("X")?;
    let phi = resolved.map("phi")?;
    let (_, a) = resolved.subset("A")?;
    println!("phi is increasing: {}", phi.is_increasing());
    println!("A = {{{}}}", x.subset_labels(a).join(","));

    // Re-encode with the full order and check the round trip.
    let mut copy = InstanceDocument::default();
    copy.push_poset("X", x, RelationKind::Full);
    let again = InstanceDocument::from_json(&copy.to_json())?;
    println!(
        "round trip preserves X: {}",
        again.resolve()?.poset("X")? == x
    );

    print!("{}", poset_dot(x, "X"));
    let lattice = dedekind_completion(x, &CompletionConfig::default())?;
    print!("{}", completion_dot(&lattice, x, "X#"));

    match InstanceDocument::from_json(r#"{"posets": [{"name": "X", "elements": ["a", "a"]}]}"#) {
        Ok(_) => unreachable!(),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
