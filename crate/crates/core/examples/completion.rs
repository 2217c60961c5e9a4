//! The Dedekind-MacNeille completion of the butterfly poset.
//!
//! Run with `cargo run --example completion`.

use macneille::completion::{cut_label, Strategy};
use macneille::poset::fixtures::butterfly;
use macneille::{dedekind_completion, CompletionConfig};

fn main() -> macneille::Result<()> {
    let x = butterfly();
    let lattice = dedekind_completion(&x, &CompletionConfig::default())?;

    println!("{} cuts:", lattice.len());
    for (i, c) in lattice.cuts().iter().enumerate() {
        println!("  {i}: {}", cut_label(&x, c));
    }

    println!("cover edges:");
    for (i, j) in lattice.covers(&x) {
        println!(
            "  {} < {}",
            cut_label(&x, lattice.cut(i)),
            cut_label(&x, lattice.cut(j))
        );
    }

    for (e, &i) in lattice.embedding().iter().enumerate() {
        println!("{} -> {}", x.label(e), cut_label(&x, lattice.cut(i)));
    }

    // {a} and {b} have no supremum in X, but their ideals do in the completion.
    let a = x.embed(x.index_of("a")?);
    let b = x.embed(x.index_of("b")?);
    let (sup, inf) = (x.sup_cuts(&[a.clone(), b.clone()])?, x.inf_cuts(&[a, b])?);
    println!("sup(<a], <b]) = {}", cut_label(&x, &sup));
    println!("inf(<a], <b]) = {}", cut_label(&x, &inf));

    let naive = dedekind_completion(
        &x,
        &CompletionConfig::default().with_strategy(Strategy::Naive),
    )?;
    println!(
        "naive and generated agree: {}",
        naive.cuts() == lattice.cuts()
    );
    Ok(())
}
