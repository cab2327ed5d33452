//! Named series: Ramanujan's theta functions, Pochhammer products, the
//! eta-quotient `B`, and both sides of the theta identities used in the
//! congruence proofs.
//!
//! Every builder takes the coefficient ring and the truncation order `T`
//! explicitly. Sub-expressions in `q^k` are built at order `T` and inflated
//! back to `T`.

use std::fmt;

use thiserror::Error;

use crate::ring_series::{Ring, Series, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("identity {id} needs ring {needed}, got {given}")]
    InadequateRing { id: IdentityId, needed: Ring, given: Ring },
    #[error("identity {0} needs a prime parameter")]
    NotPrime(IdentityId),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

/// `φ(q) = Σ_{n∈Z} q^{n²}`.
pub fn phi_series(ring: Ring, trunc: usize) -> Series {
    let mut terms = vec![(0usize, 1i64)];
    terms.extend(squares_up_to(trunc).map(|s| (s, 2)));
    Series::new(ring, &terms, trunc).expect("exponents in range")
}

/// `φ(-q)`, obtained from `φ(q)` by `q -> -q`.
pub fn phi_neg_series(ring: Ring, trunc: usize) -> Series {
    phi_series(ring, trunc).alternate_sign()
}

/// `ψ(q) = Σ_{n≥0} q^{n(n+1)/2}`.
pub fn psi_series(ring: Ring, trunc: usize) -> Series {
    let terms: Vec<(usize, i64)> = (0..)
        .map(|n: usize| n * (n + 1) / 2)
        .take_while(|&t| t <= trunc)
        .map(|t| (t, 1))
        .collect();
    Series::new(ring, &terms, trunc).expect("exponents in range")
}

/// `S(q) = Σ_{n≥1} q^{n²}`, so that `φ(q) = 1 + 2 S(q)`.
pub fn s_series(ring: Ring, trunc: usize) -> Series {
    let terms: Vec<(usize, i64)> = squares_up_to(trunc).map(|s| (s, 1)).collect();
    Series::new(ring, &terms, trunc).expect("exponents in range")
}

fn squares_up_to(trunc: usize) -> impl Iterator<Item = usize> {
    (1..).map(|n: usize| n * n).take_while(move |&s| s <= trunc)
}

/// `(q^k; q^k)_∞` truncated at `T`, expanded with the pentagonal-number
/// series `Σ_j (-1)^j q^{k j(3j-1)/2}`.
pub fn pochhammer_series(k: usize, ring: Ring, trunc: usize) -> Series {
    assert!(k >= 1, "Pochhammer step must be positive");
    let mut terms = vec![(0usize, 1i64)];
    for j in 1usize.. {
        let sign = if j % 2 == 1 { -1 } else { 1 };
        let lo = k * (j * (3 * j - 1) / 2);
        if lo > trunc {
            break;
        }
        terms.push((lo, sign));
        let hi = k * (j * (3 * j + 1) / 2);
        if hi <= trunc {
            terms.push((hi, sign));
        }
    }
    Series::new(ring, &terms, trunc).expect("pentagonal exponents are distinct")
}

/// `B(q) = (q;q)_∞ (q⁶;q⁶)²_∞ / ((q²;q²)_∞ (q³;q³)_∞)`.
pub fn b_series(ring: Ring, trunc: usize) -> Result<Series, SeriesError> {
    let p = |k| pochhammer_series(k, ring, trunc);
    let num = p(1).mul(&p(6).pow(2))?;
    let den = p(2).mul(&p(3))?;
    num.mul(&den.invert()?)
}

/// The named identities, each with a left and a right side that agree
/// coefficientwise in the stated ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// `φ(q) = φ(q⁴) + 2q ψ(q⁸)`
    Phi4Dissect,
    /// `φ(q)² = φ(q²)² + 4q ψ(q⁴)²`
    PhiSq4Dissect,
    /// `φ(q) φ(-q) = φ(-q²)²`
    PhiPhiNeg,
    /// `ψ(q)² = φ(q) ψ(q²)`
    PsiSq,
    /// `φ(q)⁴ - φ(-q)⁴ = 16q ψ(q²)⁴`
    Phi4Diff,
    /// `1/φ(-q) = (a³ + 2q a² b + 4q² a b² + 8q³ b³) / φ(-q⁴)⁴`, `a = φ(q⁴)`, `b = ψ(q⁸)`
    InvPhiNeg4,
    /// `φ(q) = φ(q⁹) + 2q B(-q³)`
    Phi9Dissect,
    /// `φ(q³)³ + 8q B(-q)³ = φ(q)⁴ / φ(q³)`
    Phi3CubeId,
    /// `1/φ(q) = φ(q⁹)/φ(q³)⁴ · (φ(q⁹)² - 2q φ(q⁹) B(-q³) + 4q² B(-q³)²)`
    InvPhi9,
    /// `s³ + q³ t³ = φ(q³)⁴ / φ(q⁹)`, `s = φ(q⁹)`, `t = 2B(-q³)`
    Stone,
    /// `1/φ(q) = φ(q⁹)/φ(q³)⁴ · (s² - q s t + q² t²)`
    Sttwo,
    /// `(q;q)_∞^p ≡ (q^p;q^p)_∞ (mod p)`
    EulerPochhammer(u64),
    /// `φ(q)^p ≡ φ(q^p) (mod p)`
    PhiFrobenius(u64),
}

impl IdentityId {
    /// The eleven parameter-free identities.
    pub const FIXED: [IdentityId; 11] = [
        IdentityId::Phi4Dissect,
        IdentityId::PhiSq4Dissect,
        IdentityId::PhiPhiNeg,
        IdentityId::PsiSq,
        IdentityId::Phi4Diff,
        IdentityId::InvPhiNeg4,
        IdentityId::Phi9Dissect,
        IdentityId::Phi3CubeId,
        IdentityId::InvPhi9,
        IdentityId::Stone,
        IdentityId::Sttwo,
    ];

    /// Primes for which the Frobenius-type identities are checked.
    pub const FROBENIUS_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

    /// Ring in which the identity holds.
    pub fn required_ring(&self) -> Ring {
        match self {
            IdentityId::EulerPochhammer(p) | IdentityId::PhiFrobenius(p) => Ring::Modular(*p),
            _ => Ring::Exact,
        }
    }

    pub fn name(&self) -> String {
        let base = match self {
            IdentityId::Phi4Dissect => "PHI_4DISSECT",
            IdentityId::PhiSq4Dissect => "PHI_SQ_4DISSECT",
            IdentityId::PhiPhiNeg => "PHI_PHI_NEG",
            IdentityId::PsiSq => "PSI_SQ",
            IdentityId::Phi4Diff => "PHI4_DIFF",
            IdentityId::InvPhiNeg4 => "INV_PHI_NEG_4",
            IdentityId::Phi9Dissect => "PHI_9DISSECT",
            IdentityId::Phi3CubeId => "PHI3_CUBE_ID",
            IdentityId::InvPhi9 => "INV_PHI_9",
            IdentityId::Stone => "STONE",
            IdentityId::Sttwo => "STTWO",
            IdentityId::EulerPochhammer(p) => return format!("EULER_POCHHAMMER_P({p})"),
            IdentityId::PhiFrobenius(p) => return format!("PHI_FROBENIUS_P({p})"),
        };
        base.to_string()
    }

    /// Parse names such as `PHI4_DIFF` or `PHI_FROBENIUS_P(7)`.
    pub fn parse(s: &str) -> Result<IdentityId, ThetaError> {
        if let Some(fixed) = IdentityId::FIXED.iter().find(|id| id.name() == s) {
            return Ok(*fixed);
        }
        let param = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.parse::<u64>().ok())
        };
        if let Some(p) = param("EULER_POCHHAMMER_P") {
            return Ok(IdentityId::EulerPochhammer(p));
        }
        if let Some(p) = param("PHI_FROBENIUS_P") {
            return Ok(IdentityId::PhiFrobenius(p));
        }
        Err(ThetaError::UnknownIdentity(s.to_string()))
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Shorthand for the building blocks at a fixed ring and order.
struct Blocks {
    ring: Ring,
    trunc: usize,
}

impl Blocks {
    fn phi(&self) -> Series {
        phi_series(self.ring, self.trunc)
    }

    fn psi(&self) -> Series {
        psi_series(self.ring, self.trunc)
    }

    /// `f(q^k)`
    fn at(&self, f: &Series, k: usize) -> Result<Series, SeriesError> {
        f.inflate(k, self.trunc)
    }

    /// `c q^k f`
    fn term(&self, c: i64, k: usize, f: &Series) -> Series {
        f.shift(k).scale(c)
    }

    fn b(&self) -> Result<Series, SeriesError> {
        b_series(self.ring, self.trunc)
    }
}

/// Both sides of the identity `id`, built in `ring` at order `trunc`.
pub fn identity_sides(id: IdentityId, ring: Ring, trunc: usize) -> Result<(Series, Series), ThetaError> {
    let needed = id.required_ring();
    if let IdentityId::EulerPochhammer(p) | IdentityId::PhiFrobenius(p) = id {
        if !crate::ring_series::modarith::is_prime(p) {
            return Err(ThetaError::NotPrime(id));
        }
    }
    // Exact identities also hold in every quotient ring.
    if needed != ring && needed != Ring::Exact {
        return Err(ThetaError::InadequateRing { id, needed, given: ring });
    }
    let k = Blocks { ring, trunc };
    let phi = k.phi();
    let psi = k.psi();
    let phi_neg = phi.alternate_sign();
    let sides = match id {
        IdentityId::Phi4Dissect => {
            let rhs = k.at(&phi, 4)?.add(&k.term(2, 1, &k.at(&psi, 8)?))?;
            (phi, rhs)
        }
        IdentityId::PhiSq4Dissect => {
            let rhs = k.at(&phi, 2)?.pow(2).add(&k.term(4, 1, &k.at(&psi, 4)?.pow(2)))?;
            (phi.pow(2), rhs)
        }
        IdentityId::PhiPhiNeg => (phi.mul(&phi_neg)?, k.at(&phi_neg, 2)?.pow(2)),
        IdentityId::PsiSq => (psi.pow(2), phi.mul(&k.at(&psi, 2)?)?),
        IdentityId::Phi4Diff => {
            let lhs = phi.pow(4).sub(&phi_neg.pow(4))?;
            (lhs, k.term(16, 1, &k.at(&psi, 2)?.pow(4)))
        }
        IdentityId::InvPhiNeg4 => {
            let a = k.at(&phi, 4)?;
            let b = k.at(&psi, 8)?;
            let poly = a
                .pow(3)
                .add(&k.term(2, 1, &a.pow(2).mul(&b)?))?
                .add(&k.term(4, 2, &a.mul(&b.pow(2))?))?
                .add(&k.term(8, 3, &b.pow(3)))?;
            let den = k.at(&phi_neg, 4)?.pow(4);
            (phi_neg.invert()?, poly.mul(&den.invert()?)?)
        }
        IdentityId::Phi9Dissect => {
            let b_neg_q3 = k.at(&k.b()?.alternate_sign(), 3)?;
            (phi.clone(), k.at(&phi, 9)?.add(&k.term(2, 1, &b_neg_q3))?)
        }
        IdentityId::Phi3CubeId => {
            let phi3 = k.at(&phi, 3)?;
            let lhs = phi3.pow(3).add(&k.term(8, 1, &k.b()?.alternate_sign().pow(3)))?;
            (lhs, phi.pow(4).mul(&phi3.invert()?)?)
        }
        IdentityId::InvPhi9 => {
            let s = k.at(&phi, 9)?;
            let bq = k.at(&k.b()?.alternate_sign(), 3)?;
            let inner = s
                .pow(2)
                .sub(&k.term(2, 1, &s.mul(&bq)?))?
                .add(&k.term(4, 2, &bq.pow(2)))?;
            let pre = s.mul(&k.at(&phi, 3)?.pow(4).invert()?)?;
            (phi.invert()?, pre.mul(&inner)?)
        }
        IdentityId::Stone => {
            let (s, t) = st_pair(&k, &phi)?;
            let lhs = s.pow(3).add(&t.pow(3).shift(3))?;
            (lhs, k.at(&phi, 3)?.pow(4).mul(&s.invert()?)?)
        }
        IdentityId::Sttwo => {
            let (s, t) = st_pair(&k, &phi)?;
            let inner = s.pow(2).sub(&s.mul(&t)?.shift(1))?.add(&t.pow(2).shift(2))?;
            let pre = s.mul(&k.at(&phi, 3)?.pow(4).invert()?)?;
            (phi.invert()?, pre.mul(&inner)?)
        }
        IdentityId::EulerPochhammer(p) => {
            let lhs = pochhammer_series(1, ring, trunc).pow(p);
            (lhs, pochhammer_series(p as usize, ring, trunc))
        }
        IdentityId::PhiFrobenius(p) => (phi.pow(p), k.at(&phi, p as usize)?),
    };
    Ok(sides)
}

/// `s = φ(q⁹)`, `t = 2 B(-q³)`.
fn st_pair(k: &Blocks, phi: &Series) -> Result<(Series, Series), SeriesError> {
    let s = k.at(phi, 9)?;
    let t = k.at(&k.b()?.alternate_sign(), 3)?.scale(2);
    Ok((s, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn coeffs(s: &Series) -> Vec<i64> {
        (0..=s.trunc()).map(|n| i64::try_from(s.coeff(n).unwrap()).unwrap()).collect()
    }

    fn support(s: &Series) -> Vec<usize> {
        (0..=s.trunc()).filter(|&n| s.coeff(n).unwrap() != BigInt::from(0)).collect()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(coeffs(&phi_series(Ring::Exact, 9)), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
        assert_eq!(coeffs(&phi_series(Ring::Exact, 0)), vec![1]);
        // r2(25) by enumerating signed pairs i^2 + j^2 = 25
        let mut r2_25 = 0;
        for i in -5i64..=5 {
            for j in -5i64..=5 {
                if i * i + j * j == 25 {
                    r2_25 += 1;
                }
            }
        }
        let sq = phi_series(Ring::Exact, 25).pow(2);
        assert_eq!(sq.coeff(25).unwrap(), BigInt::from(r2_25));
        assert_eq!(r2_25, 12);
    }

    #[test]
    fn phi_neg_matches_sign_flip() {
        let s = phi_neg_series(Ring::Exact, 20);
        assert_eq!(s.coeff(1).unwrap(), BigInt::from(-2));
        assert_eq!(s.coeff(4).unwrap(), BigInt::from(2));
        // product form (-q;-q)^2 / (q^2;q^2) with (-q;-q) = prod (1 - (-q)^n)
        let num = pochhammer_series(1, Ring::Exact, 200).alternate_sign().pow(2);
        let den = pochhammer_series(2, Ring::Exact, 200);
        let product_form = num.mul(&den.invert().unwrap()).unwrap();
        assert!(product_form.series_equal(&phi_series(Ring::Exact, 200)).unwrap());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(support(&psi_series(Ring::Exact, 10)), vec![0, 1, 3, 6, 10]);
        assert_eq!(psi_series(Ring::Exact, 10).coeff(2).unwrap(), BigInt::from(0));
        let (l, r) = identity_sides(IdentityId::PsiSq, Ring::Exact, 300).unwrap();
        assert!(l.series_equal(&r).unwrap());
        // product form (q^2;q^2)^2 / (q;q)
        let pf = pochhammer_series(2, Ring::Exact, 200)
            .pow(2)
            .mul(&pochhammer_series(1, Ring::Exact, 200).invert().unwrap())
            .unwrap();
        assert!(pf.series_equal(&psi_series(Ring::Exact, 200)).unwrap());
    }

    #[test]
    fn s_examples() {
        assert_eq!(support(&s_series(Ring::Exact, 5)), vec![1, 4]);
        let one = Series::one(Ring::Exact, 500);
        let rebuilt = one.add(&s_series(Ring::Exact, 500).scale(2)).unwrap();
        assert_eq!(rebuilt, phi_series(Ring::Exact, 500));
        assert_eq!(s_series(Ring::Exact, 10).pow(2).coeff(2).unwrap(), BigInt::from(1));
    }

    /// Multiply out `prod_{n: kn <= T} (1 - q^{kn})` factor by factor.
    fn direct_pochhammer(k: usize, trunc: usize) -> Vec<i64> {
        let mut c = vec![0i64; trunc + 1];
        c[0] = 1;
        let mut step = k;
        while step <= trunc {
            for n in (step..=trunc).rev() {
                c[n] -= c[n - step];
            }
            step += k;
        }
        c
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(coeffs(&pochhammer_series(1, Ring::Exact, 8)), vec![1, -1, -1, 0, 0, 1, 0, 1, 0]);
        assert_eq!(direct_pochhammer(1, 8), vec![1, -1, -1, 0, 0, 1, 0, 1, 0]);
        assert_eq!(coeffs(&pochhammer_series(3, Ring::Exact, 2)), vec![1, 0, 0]);
        for k in [1usize, 2, 3, 6, 7] {
            assert_eq!(coeffs(&pochhammer_series(k, Ring::Exact, 400)), direct_pochhammer(k, 400), "k = {k}");
        }
        let (l, r) = identity_sides(IdentityId::EulerPochhammer(5), Ring::Modular(5), 300).unwrap();
        assert!(l.series_equal(&r).unwrap());
    }

    #[test]
    fn b_series_examples() {
        let b = b_series(Ring::Exact, 600).unwrap();
        assert_eq!(b.coeff(0).unwrap(), BigInt::from(1));
        let (l, r) = identity_sides(IdentityId::Phi9Dissect, Ring::Exact, 600).unwrap();
        assert_eq!(l.first_mismatch(&r).unwrap(), None);
        let (l, r) = identity_sides(IdentityId::Phi3CubeId, Ring::Exact, 400).unwrap();
        assert_eq!(l.first_mismatch(&r).unwrap(), None);
        // exact integer coefficients, and reduction commutes with construction
        let m = b_series(Ring::Modular(288), 600).unwrap();
        assert_eq!(b.reduce_mod(288).unwrap(), m);
    }

    #[test]
    fn identity_examples() {
        for id in [IdentityId::Phi4Diff, IdentityId::InvPhiNeg4, IdentityId::Sttwo] {
            let (l, r) = identity_sides(id, Ring::Exact, 300).unwrap();
            assert_eq!(l.first_mismatch(&r).unwrap(), None, "{id}");
        }
    }

    #[test]
    fn all_identities_hold_to_500() {
        for id in IdentityId::FIXED {
            let (l, r) = identity_sides(id, Ring::Exact, 500).unwrap();
            assert_eq!(l.trunc(), 500);
            assert_eq!(l.first_mismatch(&r).unwrap(), None, "{id}");
        }
        for p in IdentityId::FROBENIUS_PRIMES {
            for id in [IdentityId::EulerPochhammer(p), IdentityId::PhiFrobenius(p)] {
                let (l, r) = identity_sides(id, Ring::Modular(p), 500).unwrap();
                assert_eq!(l.first_mismatch(&r).unwrap(), None, "{id}");
            }
        }
    }

    #[test]
    fn frobenius_identities_fail_over_the_integers_and_for_composites() {
        assert!(matches!(
            identity_sides(IdentityId::PhiFrobenius(7), Ring::Exact, 50),
            Err(ThetaError::InadequateRing { .. })
        ));
        assert!(matches!(
            identity_sides(IdentityId::PhiFrobenius(9), Ring::Modular(9), 50),
            Err(ThetaError::NotPrime(_))
        ));
    }

    #[test]
    fn builders_are_ring_agnostic() {
        for m in [7u64, 16, 288] {
            assert_eq!(phi_series(Ring::Exact, 300).reduce_mod(m).unwrap(), phi_series(Ring::Modular(m), 300));
            assert_eq!(psi_series(Ring::Exact, 300).reduce_mod(m).unwrap(), psi_series(Ring::Modular(m), 300));
            assert_eq!(
                pochhammer_series(2, Ring::Exact, 300).reduce_mod(m).unwrap(),
                pochhammer_series(2, Ring::Modular(m), 300)
            );
        }
    }

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::FIXED.into_iter().chain([IdentityId::PhiFrobenius(11), IdentityId::EulerPochhammer(3)]) {
            assert_eq!(IdentityId::parse(&id.name()).unwrap(), id);
        }
        assert!(IdentityId::parse("NOPE").is_err());
    }

    #[test]
    fn inflated_psi_support() {
        let s = psi_series(Ring::Exact, 40).inflate(8, 40).unwrap();
        assert_eq!(support(&s), vec![0, 8, 24]);
    }
}
