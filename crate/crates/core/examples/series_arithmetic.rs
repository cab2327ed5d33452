//! Truncated series over Z and Z/M: products, inversion and dissection.

use qsc::{Ring, Series};

fn main() -> Result<(), qsc::SeriesError> {
    let t = 20;
    // 1 - q - q², inverted: the Fibonacci numbers.
    let a = Series::new(Ring::Exact, &[(0, 1), (1, -1), (2, -1)], t)?;
    let fib = a.invert()?;
    println!("1/(1-q-q²) = {:?}", (0..=10).map(|n| fib.coeff(n).unwrap()).collect::<Vec<_>>());

    // The same series mod 7, squared on the transform path and by schoolbook.
    let m = fib.reduce_mod(7)?;
    let fast = m.mul_fast(&m)?.expect("small coefficients");
    assert_eq!(fast, m.mul_schoolbook(&m)?);
    println!("(1/(1-q-q²))² mod 7 = {:?}", fast.residues().unwrap());

    // Even-index coefficients, then substitute q -> q³ and flip odd signs.
    let even = fib.dissect(2, 0)?;
    let spread = even.inflate(3, t)?.alternate_sign();
    println!("F(2n) = {:?}", (0..=even.trunc()).map(|n| even.coeff(n).unwrap()).collect::<Vec<_>>());
    println!("nonzero terms after inflation: {}", spread.nonzero_count());
    Ok(())
}
