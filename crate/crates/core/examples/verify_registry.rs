//! Runs registered checks matching a glob and prints their reports.
//!
//! `cargo run --release --example verify_registry -- 'T4.*' default`

use qsc::theorem_suite::{run_registry, Profile};

fn main() {
    let mut args = std::env::args().skip(1);
    let filter = args.next().unwrap_or_else(|| "T2.*".to_string());
    let profile: Profile = args.next().as_deref().unwrap_or("quick").parse().expect("quick, default or deep");
    let reports = match run_registry(&filter, profile) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    for r in &reports {
        println!("{:<10} {:<15} checked {:>7} bound {:>8}", r.id, r.status, r.checked_count, r.bound);
        if let Some(c) = &r.first_counterexample {
            println!("           n = {}: observed {}, expected {}", c.n, c.observed, c.expected);
        }
        for leg in &r.legs {
            println!("           leg: {leg}");
        }
    }
}
