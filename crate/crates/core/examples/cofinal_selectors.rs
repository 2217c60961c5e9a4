//! Cofinal selectors and the `L` extension.
//!
//! Run with `cargo run --example cofinal_selectors`.

use std::collections::HashMap;

use macneille::completion::cut_label;
use macneille::poset::fixtures::butterfly;
use macneille::{CofinalSelector, PosetMap};

fn main() -> macneille::Result<()> {
    let x = butterfly();
    let table = [1, 0, 3, 2];
    let phi = PosetMap::new(&x, &x, &table)?;
    let a = x.subset_from_labels(&["a", "b", "c"])?;

    println!("cofinal subsets of {{a,b,c}}:");
    for b in x.cofinal_subsets(&a, 16)? {
        println!("  {{{}}}", x.subset_labels(&b).join(","));
    }

    let choose = |labels: &[&str]| -> macneille::Result<CofinalSelector> {
        Ok(CofinalSelector::Table(HashMap::from([(
            a.clone(),
            x.subset_from_labels(labels)?,
        )])))
    };
    let selectors = [
        ("identity", CofinalSelector::Identity),
        ("maximal elements", CofinalSelector::MaximalElements),
        ("table {b,c}", choose(&["b", "c"])?),
    ];
    println!("tilde = {}", cut_label(&x, &phi.tilde_extension(&a)));
    for (name, sel) in &selectors {
        let l = phi.selector_extension(sel, &a)?;
        println!("L with {name}: {}", cut_label(&x, &l));
    }

    // {a} is not cofinal in {a,b,c}: nothing in it lies above c.
    match phi.selector_extension(&choose(&["a"])?, &a) {
        Ok(_) => unreachable!(),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
