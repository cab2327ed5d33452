//! Checks every named theta identity coefficientwise to a chosen order.
//!
//! `cargo run --example theta_identities -- 2000`

use qsc::theta_lab::{identity_sides, IdentityId};

fn main() {
    let order: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let mut ids = IdentityId::FIXED.to_vec();
    for p in IdentityId::FROBENIUS_PRIMES {
        ids.push(IdentityId::EulerPochhammer(p));
        ids.push(IdentityId::PhiFrobenius(p));
    }
    for id in ids {
        let (lhs, rhs) = identity_sides(id, id.required_ring(), order).expect("valid identity");
        let verdict = match lhs.first_mismatch(&rhs).expect("same ring") {
            None => "holds".to_string(),
            Some(n) => format!("differs at q^{n}"),
        };
        println!("{:<24} to q^{order}: {verdict}", id.name());
    }
}
