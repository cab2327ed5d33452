//! How much of `1..=N` the disjoint progressions behind each density bound
//! cover.

use qsc::theorem_suite::{density_members, DensityFamily};

fn main() {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    for family in [DensityFamily::Dens144, DensityFamily::Dens7, DensityFamily::Dens11] {
        let (members, repeats) = density_members(family, n);
        let fraction = members.len() as f64 / n as f64;
        println!(
            "{:>3} | p̄₃(i): {} indices <= {n}, fraction {fraction:.6} (asymptotic {:.6}), {repeats} overlaps",
            family.modulus(),
            members.len(),
            family.density()
        );
    }
}
