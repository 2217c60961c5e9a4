//! The four extensions of a map `X -> Y` to subsets of `X`.
//!
//! Run with `cargo run --example extensions`.

use macneille::completion::cut_label;
use macneille::poset::fixtures::butterfly;
use macneille::{CofinalSelector, Operator, PosetMap};

fn main() -> macneille::Result<()> {
    let x = butterfly();
    let y = butterfly();
    // a -> c, b -> a, c -> a, d -> d. Not increasing: a < c but c is not <= a.
    let table = [2, 0, 0, 3];
    let phi = PosetMap::new(&x, &y, &table)?;
    println!("increasing: {}", phi.is_increasing());

    for members in [
        &["a", "c"][..],
        &["a", "b"],
        &["c", "d"],
        &["a", "b", "c", "d"],
        &[],
    ] {
        let a = x.subset_from_labels(members)?;
        print!("A = {{{}}}:", members.join(","));
        for op in Operator::ALL {
            let r = phi.extend(op, Some(&CofinalSelector::MaximalElements), &a)?;
            print!("  {op} = {}", cut_label(&y, &r.value));
        }
        println!();
    }

    // On an ideal, sharp may differ from the ideal of the image when phi is not increasing.
    let c = x.index_of("c")?;
    let ideal = x.principal_ideal(c);
    println!(
        "sharp(<c]) = {}, <phi(c)] = {}",
        cut_label(&y, &phi.sharp_extension(&ideal)),
        cut_label(&y, &y.principal_ideal(phi.apply(c)))
    );

    // bar computed from its definition agrees with the maximal-element shortcut.
    let a = x.full_subset();
    let literal = phi.bar_extension_by_enumeration(&a, 16)?;
    println!(
        "bar by enumeration = {}, by maximal elements = {}",
        cut_label(&y, &literal),
        cut_label(&y, &phi.bar_extension(&a))
    );
    Ok(())
}
