//! Bounds, closures and structural predicates on a small poset.
//!
//! Run with `cargo run --example poset_basics`.

use macneille::{ExtremaPolicy, FinitePoset};

fn show(p: &FinitePoset, s: &macneille::Subset) -> String {
    format!("{{{}}}", p.subset_labels(s).join(","))
}

fn main() -> macneille::Result<()> {
    // a, b < c, d and a < e.
    let p = FinitePoset::new(
        &["a", "b", "c", "d", "e"],
        &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("a", "e")],
        ExtremaPolicy::Reject,
    )?;

    let a = p.subset_from_labels(&["a", "b"])?;
    println!("A        = {}", show(&p, &a));
    println!("A^u      = {}", show(&p, &p.upper_bounds(&a)));
    println!("A^l      = {}", show(&p, &p.lower_bounds(&a)));
    println!("A^ul     = {}", show(&p, &p.cut_closure(&a)));
    println!("A is a cut: {}", p.is_cut(&a));
    println!("directed: {}", p.is_directed(&a));

    let c = p.index_of("c")?;
    println!("<c]      = {}", show(&p, &p.principal_ideal(c)));
    println!("[c>      = {}", show(&p, &p.principal_filter(c)));

    let full = p.full_subset();
    let max = p.maximal_elements(&full);
    println!(
        "Max(X)   = {} (cofinal in X: {})",
        show(&p, &max),
        p.is_cofinal_in(&max, &full)?
    );

    let covers: Vec<String> = p
        .hasse_covers()
        .into_iter()
        .map(|(x, y)| format!("{} < {}", p.label(x), p.label(y)))
        .collect();
    println!("covers: {}", covers.join(", "));

    // A chain has both a minimum and a maximum, so it is rejected by default.
    match FinitePoset::new(&["1", "2"], &[("1", "2")], ExtremaPolicy::Reject) {
        Ok(_) => unreachable!(),
        Err(e) => println!("chain: {e}"),
    }
    Ok(())
}
