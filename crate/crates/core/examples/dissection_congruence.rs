//! `Σ p̄₃(3n)(-q)^n ≡ φ(q³)/φ(q)⁴ (mod 72)` and its two siblings, checked
//! by dissecting a `p̄₃` table.

use qsc::theorem_suite::{verify_series_identity, CongruenceIdentity, Context, Profile, SeriesIdentity};

fn main() {
    let order = 1000;
    let ctx = Context::with_trunc(Profile::Quick, 3 * order + 2);
    for r in 0..3 {
        let id = CongruenceIdentity::ThreeDissection(r);
        let out = verify_series_identity(&ctx, SeriesIdentity::Congruence(id), None, order).expect("stated modulus");
        println!(
            "p̄₃(3n+{r}) mod {:>3}: {} coefficients, {}",
            id.stated_modulus(),
            out.checked,
            if out.passed() { "all agree" } else { "mismatch" }
        );
    }
}
