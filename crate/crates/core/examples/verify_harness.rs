//! Running verification checks from code and replaying a witness.
//!
//! Run with `cargo run --release --example verify_harness`.

use macneille::verify::{run_checks, MapKind, VerifyConfig, CATALOG};

fn main() -> macneille::Result<()> {
    println!("{} registered checks", CATALOG.len());

    let config = VerifyConfig {
        instances: 40,
        ..VerifyConfig::default()
    };
    let reports = run_checks(
        &[
            "Prop3.1",
            "Prop3.3",
            "Prop3.3-control",
            "Prop3.2-strictness",
        ],
        &config,
    )?;
    for r in &reports {
        println!(
            "{:<20} {:?} on {} maps: {} subjects, {} failures -> {:?}",
            r.check_id, r.role, r.corpus, r.subjects_checked, r.failure_count, r.verdict
        );
    }

    let control = reports
        .iter()
        .find(|r| r.check_id == "Prop3.3-control")
        .unwrap();
    if let Some(w) = control.failures.first() {
        println!(
            "\nwitness ({}): expected {}, got {}",
            w.detail, w.expected, w.actual
        );
        println!("{}", w.instance.to_json());
        println!("replays to: {:?}", w.replay()?);
    }

    // Forcing arbitrary maps onto a claim about increasing maps turns it into a control.
    let forced = VerifyConfig {
        map_kind: Some(MapKind::Arbitrary),
        ..config
    };
    let r = &run_checks(&["Prop3.3"], &forced)?[0];
    println!("\nforced: {:?} -> {:?}", r.role, r.verdict);
    Ok(())
}
