//! `p̄_k(n)` and `r_k(n)` from series, against brute-force counts and the
//! closed-form residue classifiers.

use qsc::counting::{self, Residue};
use qsc::Ring;

fn main() -> Result<(), counting::CountingError> {
    let p3 = counting::overpartition_series(3, Ring::Exact, 20)?;
    let oracle = counting::overpartition_oracle_table(3, 20)?;
    for n in 0..=20 {
        assert_eq!(p3.values().coeff(n).unwrap(), oracle[n]);
    }
    println!("p̄₃(0..=20) = {:?}", oracle);

    let r3 = counting::rk_series(3, Ring::Exact, 30)?;
    let lattice = counting::rk_oracle_table(3, 30)?;
    println!("r₃(0..=30)  = {:?}", lattice);
    assert!((0..=30).all(|n| r3.values().coeff(n).unwrap() == lattice[n].into()));

    // p̄_k(n) mod 2^m(k) is determined by whether n is a square or twice one.
    for k in 1..=4u32 {
        let m = 1u64 << counting::mod2m_exponent(k);
        let t = counting::overpartition_series(k, Ring::Modular(m), 50)?;
        let agree = (1..=50u64).all(|n| {
            let Residue { residue, .. } = counting::mod2m_predicted(k, n).unwrap();
            t.values().residue_at(n as usize, m).unwrap() == residue
        });
        println!("k = {k}: p̄_k(n) mod {m} matches the classifier for n <= 50: {agree}");
    }
    Ok(())
}
