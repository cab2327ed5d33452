//! Truncated dense power series over the integers or over `Z/M`.
//!
//! A [`Series`] with truncation order `T` stores exactly the coefficients of
//! `q^0 ..= q^T`. Binary operations return a series truncated to the smaller
//! of the two orders, so every coefficient a series reports is exact.

pub mod modarith;
pub mod ntt;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use modarith::{gcd, inv_mod, reduce_signed};

/// Largest modulus accepted by [`Ring::modular`]; residue products must fit a `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// Below this length products and inverses use the quadratic kernels.
const FAST_THRESHOLD: usize = 96;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("exponent {exponent} exceeds truncation order {trunc}")]
    OutOfRange { exponent: usize, trunc: usize },
    #[error("duplicate exponent {0}")]
    DuplicateExponent(usize),
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("constant term {constant} is not a unit in {ring} (gcd {gcd})")]
    NonUnit { constant: BigInt, ring: Ring, gcd: BigInt },
    #[error("residue class {r} is not below the dissection modulus {m}")]
    BadDissection { m: usize, r: usize },
    #[error("modulus {0} outside 2..={MAX_MODULUS}")]
    BadModulus(u64),
    #[error("cannot reduce {from} to {to}")]
    IncompatibleReduction { from: Ring, to: Ring },
    #[error("inflating a series of order {trunc} by {factor} cannot determine coefficients up to {requested}")]
    InsufficientPrecision { trunc: usize, factor: usize, requested: usize },
    #[error("scale factor must be positive")]
    ZeroScale,
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// Coefficient ring: arbitrary-precision integers or residues modulo `M >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Exact,
    Modular(u64),
}

impl Ring {
    pub fn modular(m: u64) -> Result<Ring> {
        if (2..=MAX_MODULUS).contains(&m) {
            Ok(Ring::Modular(m))
        } else {
            Err(SeriesError::BadModulus(m))
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Ring::Exact => None,
            Ring::Modular(m) => Some(*m),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Exact => write!(f, "Z"),
            Ring::Modular(m) => write!(f, "Z/{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coeffs {
    Exact(Vec<BigInt>),
    Modular(u64, Vec<u64>),
}

/// A power series truncated after `q^trunc`. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Coeffs,
}

impl Series {
    /// Build a series from sparse `(exponent, value)` terms.
    pub fn new(ring: Ring, terms: &[(usize, i64)], trunc: usize) -> Result<Series> {
        let mut seen = vec![false; trunc + 1];
        for &(e, _) in terms {
            if e > trunc {
                return Err(SeriesError::OutOfRange { exponent: e, trunc });
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(SeriesError::DuplicateExponent(e));
            }
        }
        let mut s = Series::zero(ring, trunc);
        match &mut s.coeffs {
            Coeffs::Exact(v) => terms.iter().for_each(|&(e, c)| v[e] = BigInt::from(c)),
            Coeffs::Modular(m, v) => terms.iter().for_each(|&(e, c)| v[e] = reduce_signed(c, *m)),
        }
        Ok(s)
    }

    pub fn zero(ring: Ring, trunc: usize) -> Series {
        let coeffs = match ring {
            Ring::Exact => Coeffs::Exact(vec![BigInt::zero(); trunc + 1]),
            Ring::Modular(m) => Coeffs::Modular(m, vec![0; trunc + 1]),
        };
        Series { coeffs }
    }

    pub fn one(ring: Ring, trunc: usize) -> Series {
        let mut s = Series::zero(ring, trunc);
        match &mut s.coeffs {
            Coeffs::Exact(v) => v[0] = BigInt::one(),
            Coeffs::Modular(m, v) => v[0] = 1 % *m,
        }
        s
    }

    pub fn from_exact(coeffs: Vec<BigInt>) -> Series {
        assert!(!coeffs.is_empty(), "a series keeps at least the constant term");
        Series { coeffs: Coeffs::Exact(coeffs) }
    }

    /// Residues are reduced into `0..m`.
    pub fn from_residues(modulus: u64, mut coeffs: Vec<u64>) -> Result<Series> {
        Ring::modular(modulus)?;
        assert!(!coeffs.is_empty(), "a series keeps at least the constant term");
        coeffs.iter_mut().for_each(|c| *c %= modulus);
        Ok(Series { coeffs: Coeffs::Modular(modulus, coeffs) })
    }

    /// Series with coefficients `f(0), ..., f(trunc)`.
    pub fn from_fn(ring: Ring, trunc: usize, f: impl Fn(usize) -> i64) -> Series {
        match ring {
            Ring::Exact => Series::from_exact((0..=trunc).map(|n| BigInt::from(f(n))).collect()),
            Ring::Modular(m) => Series {
                coeffs: Coeffs::Modular(m, (0..=trunc).map(|n| reduce_signed(f(n), m)).collect()),
            },
        }
    }

    pub fn ring(&self) -> Ring {
        match &self.coeffs {
            Coeffs::Exact(_) => Ring::Exact,
            Coeffs::Modular(m, _) => Ring::Modular(*m),
        }
    }

    pub fn trunc(&self) -> usize {
        self.len() - 1
    }

    fn len(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(v) => v.len(),
            Coeffs::Modular(_, v) => v.len(),
        }
    }

    /// Residue slice for modular series.
    pub fn residues(&self) -> Option<&[u64]> {
        match &self.coeffs {
            Coeffs::Modular(_, v) => Some(v),
            Coeffs::Exact(_) => None,
        }
    }

    pub fn exact_coeffs(&self) -> Option<&[BigInt]> {
        match &self.coeffs {
            Coeffs::Exact(v) => Some(v),
            Coeffs::Modular(..) => None,
        }
    }

    /// Coefficient of `q^n`; residues are returned in `0..M`.
    pub fn coeff(&self, n: usize) -> Result<BigInt> {
        if n > self.trunc() {
            return Err(SeriesError::OutOfRange { exponent: n, trunc: self.trunc() });
        }
        Ok(match &self.coeffs {
            Coeffs::Exact(v) => v[n].clone(),
            Coeffs::Modular(_, v) => BigInt::from(v[n]),
        })
    }

    /// Coefficient of `q^n` reduced into `0..m`, whatever the ring.
    /// For a modular series `m` must divide its modulus.
    pub fn residue_at(&self, n: usize, m: u64) -> Result<u64> {
        if n > self.trunc() {
            return Err(SeriesError::OutOfRange { exponent: n, trunc: self.trunc() });
        }
        match &self.coeffs {
            Coeffs::Exact(v) => Ok(big_mod(&v[n], m)),
            Coeffs::Modular(modulus, v) => {
                if modulus % m != 0 {
                    return Err(SeriesError::IncompatibleReduction {
                        from: self.ring(),
                        to: Ring::Modular(m),
                    });
                }
                Ok(v[n] % m)
            }
        }
    }

    pub fn nonzero_count(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(v) => v.iter().filter(|c| !c.is_zero()).count(),
            Coeffs::Modular(_, v) => v.iter().filter(|&&c| c != 0).count(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_count() == 0
    }

    fn check_ring(&self, other: &Series) -> Result<()> {
        if self.ring() != other.ring() {
            return Err(SeriesError::RingMismatch(self.ring(), other.ring()));
        }
        Ok(())
    }

    /// Keep coefficients up to `q^trunc` (no-op when `trunc` is not smaller).
    pub fn truncate(&self, trunc: usize) -> Series {
        let keep = trunc.min(self.trunc()) + 1;
        let coeffs = match &self.coeffs {
            Coeffs::Exact(v) => Coeffs::Exact(v[..keep].to_vec()),
            Coeffs::Modular(m, v) => Coeffs::Modular(*m, v[..keep].to_vec()),
        };
        Series { coeffs }
    }

    fn zip_with(
        &self,
        other: &Series,
        fe: impl Fn(&BigInt, &BigInt) -> BigInt,
        fm: impl Fn(u64, u64, u64) -> u64,
    ) -> Result<Series> {
        self.check_ring(other)?;
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                Coeffs::Exact(a.iter().zip(b).map(|(x, y)| fe(x, y)).collect())
            }
            (Coeffs::Modular(m, a), Coeffs::Modular(_, b)) => {
                Coeffs::Modular(*m, a.iter().zip(b).map(|(&x, &y)| fm(x, y, *m)).collect())
            }
            _ => unreachable!("rings already checked"),
        };
        Ok(Series { coeffs })
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.zip_with(other, |x, y| x + y, |x, y, m| (x + y) % m)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.zip_with(other, |x, y| x - y, |x, y, m| (x + m - y) % m)
    }

    pub fn neg(&self) -> Series {
        let coeffs = match &self.coeffs {
            Coeffs::Exact(v) => Coeffs::Exact(v.iter().map(|x| -x).collect()),
            Coeffs::Modular(m, v) => Coeffs::Modular(*m, v.iter().map(|&x| (m - x) % m).collect()),
        };
        Series { coeffs }
    }

    /// Multiply every coefficient by the integer `c`.
    pub fn scale(&self, c: i64) -> Series {
        let coeffs = match &self.coeffs {
            Coeffs::Exact(v) => Coeffs::Exact(v.iter().map(|x| x * c).collect()),
            Coeffs::Modular(m, v) => {
                let c = reduce_signed(c, *m);
                Coeffs::Modular(*m, v.iter().map(|&x| x * c % m).collect())
            }
        };
        Series { coeffs }
    }

    /// Multiply by `q^k`, keeping the truncation order.
    pub fn shift(&self, k: usize) -> Series {
        let mut out = Series::zero(self.ring(), self.trunc());
        let len = self.len();
        if k < len {
            match (&mut out.coeffs, &self.coeffs) {
                (Coeffs::Exact(dst), Coeffs::Exact(src)) => dst[k..].clone_from_slice(&src[..len - k]),
                (Coeffs::Modular(_, dst), Coeffs::Modular(_, src)) => {
                    dst[k..].copy_from_slice(&src[..len - k])
                }
                _ => unreachable!(),
            }
        }
        out
    }

    /// Cauchy product truncated to the smaller order. Long operands go
    /// through the multi-prime transform; the result always equals
    /// [`Series::mul_schoolbook`].
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let len = self.len().min(other.len());
        let sparse = self.nonzero_count().min(other.nonzero_count());
        if len <= FAST_THRESHOLD || sparse <= sparse_cutoff(len) {
            return self.mul_schoolbook(other);
        }
        match self.mul_fast(other)? {
            Some(s) => Ok(s),
            None => self.mul_schoolbook(other),
        }
    }

    /// Quadratic convolution that skips zero coefficients of the sparser operand.
    pub fn mul_schoolbook(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let len = self.len().min(other.len());
        let (sparse, dense) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let coeffs = match (&sparse.coeffs, &dense.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                let mut out = vec![BigInt::zero(); len];
                for (i, ai) in a.iter().enumerate().take(len) {
                    if ai.is_zero() {
                        continue;
                    }
                    for (o, bj) in out[i..].iter_mut().zip(b) {
                        if !bj.is_zero() {
                            *o += ai * bj;
                        }
                    }
                }
                Coeffs::Exact(out)
            }
            (Coeffs::Modular(m, a), Coeffs::Modular(_, b)) => {
                let m = *m;
                let mut acc = vec![0u128; len];
                for (i, &ai) in a.iter().enumerate().take(len) {
                    if ai == 0 {
                        continue;
                    }
                    for (o, &bj) in acc[i..].iter_mut().zip(b) {
                        *o += (ai * bj) as u128;
                    }
                }
                Coeffs::Modular(m, acc.into_iter().map(|x| (x % m as u128) as u64).collect())
            }
            _ => unreachable!(),
        };
        Ok(Series { coeffs })
    }

    /// Transform-based product; `Ok(None)` if coefficient sizes exceed the
    /// available prime tables.
    pub fn mul_fast(&self, other: &Series) -> Result<Option<Series>> {
        self.check_ring(other)?;
        let len = self.len().min(other.len());
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                ntt::convolve_signed(a, b, len).map(|v| Series { coeffs: Coeffs::Exact(v) })
            }
            (Coeffs::Modular(m, a), Coeffs::Modular(_, b)) => ntt::convolve_residues(a, b, *m, len)
                .map(|v| Series { coeffs: Coeffs::Modular(*m, v) }),
            _ => unreachable!(),
        })
    }

    /// `self^e` by repeated squaring; `pow(0)` is the constant one.
    pub fn pow(&self, mut e: u64) -> Series {
        let mut acc = Series::one(self.ring(), self.trunc());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    fn unit_inverse_of_constant(&self) -> Result<UnitInverse> {
        match &self.coeffs {
            Coeffs::Exact(v) => {
                let c = &v[0];
                if c.abs().is_one() {
                    Ok(UnitInverse::Exact(c.clone()))
                } else {
                    Err(SeriesError::NonUnit { constant: c.clone(), ring: Ring::Exact, gcd: c.abs() })
                }
            }
            Coeffs::Modular(m, v) => inv_mod(v[0], *m).map(UnitInverse::Modular).ok_or_else(|| {
                SeriesError::NonUnit {
                    constant: BigInt::from(v[0]),
                    ring: Ring::Modular(*m),
                    gcd: BigInt::from(gcd(v[0], *m)),
                }
            }),
        }
    }

    /// Multiplicative inverse to the same order. The constant term must be a
    /// unit (`±1` over the integers, coprime to `M` modulo `M`).
    pub fn invert(&self) -> Result<Series> {
        let len = self.len();
        if len <= FAST_THRESHOLD || self.nonzero_count() <= sparse_cutoff(len) {
            self.invert_recurrence()
        } else {
            self.invert_newton()
        }
    }

    /// Inverse through `c_n = -a_0^{-1} * sum_{j=1..n} a_j c_{n-j}`, visiting
    /// only the nonzero `a_j`.
    pub fn invert_recurrence(&self) -> Result<Series> {
        let unit = self.unit_inverse_of_constant()?;
        let len = self.len();
        let coeffs = match (&self.coeffs, unit) {
            (Coeffs::Exact(a), UnitInverse::Exact(u)) => {
                let support: Vec<(usize, &BigInt)> =
                    a.iter().enumerate().skip(1).filter(|(_, x)| !x.is_zero()).collect();
                let mut c: Vec<BigInt> = Vec::with_capacity(len);
                c.push(u.clone());
                for n in 1..len {
                    let mut s = BigInt::zero();
                    for &(j, aj) in support.iter().take_while(|(j, _)| *j <= n) {
                        s += aj * &c[n - j];
                    }
                    // u = ±1 so -u * s == -(s * u)
                    c.push(-(s * &u));
                }
                Coeffs::Exact(c)
            }
            (Coeffs::Modular(m, a), UnitInverse::Modular(u)) => {
                let m = *m;
                let support: Vec<(usize, u64)> =
                    a.iter().copied().enumerate().skip(1).filter(|&(_, x)| x != 0).collect();
                let mut c = Vec::with_capacity(len);
                c.push(u);
                for n in 1..len {
                    let mut s = 0u128;
                    for &(j, aj) in support.iter().take_while(|(j, _)| *j <= n) {
                        s += (aj * c[n - j]) as u128;
                    }
                    let s = (s % m as u128) as u64;
                    c.push((m - s) % m * u % m);
                }
                Coeffs::Modular(m, c)
            }
            _ => unreachable!(),
        };
        Ok(Series { coeffs })
    }

    /// Inverse through Newton doubling `c <- c + c (1 - a c)` over fast products.
    pub fn invert_newton(&self) -> Result<Series> {
        let unit = self.unit_inverse_of_constant()?;
        let ring = self.ring();
        let target = self.trunc();
        let mut c = match unit {
            UnitInverse::Exact(u) => Series::from_exact(vec![u]),
            UnitInverse::Modular(u) => Series { coeffs: Coeffs::Modular(ring.modulus().unwrap(), vec![u]) },
        };
        let mut prec = 1usize;
        while prec < target + 1 {
            prec = (2 * prec).min(target + 1);
            let a = self.truncate(prec - 1);
            let c_ext = c.extend(prec - 1);
            let ac = a.mul(&c_ext)?;
            let err = Series::one(ring, prec - 1).sub(&ac)?;
            c = c_ext.add(&c_ext.mul(&err)?)?;
        }
        Ok(c)
    }

    /// Zero-pad to a larger truncation order (internal: only valid where the
    /// padded coefficients are about to be recomputed).
    fn extend(&self, trunc: usize) -> Series {
        let mut out = Series::zero(self.ring(), trunc);
        match (&mut out.coeffs, &self.coeffs) {
            (Coeffs::Exact(d), Coeffs::Exact(s)) => d[..s.len()].clone_from_slice(s),
            (Coeffs::Modular(_, d), Coeffs::Modular(_, s)) => d[..s.len()].copy_from_slice(s),
            _ => unreachable!(),
        }
        out
    }

    /// Subseries `b_n = a_{m n + r}`, truncated at `floor((T - r) / m)`.
    pub fn dissect(&self, m: usize, r: usize) -> Result<Series> {
        if m == 0 || r >= m {
            return Err(SeriesError::BadDissection { m, r });
        }
        if r > self.trunc() {
            return Err(SeriesError::OutOfRange { exponent: r, trunc: self.trunc() });
        }
        let coeffs = match &self.coeffs {
            Coeffs::Exact(v) => Coeffs::Exact(v.iter().skip(r).step_by(m).cloned().collect()),
            Coeffs::Modular(md, v) => Coeffs::Modular(*md, v.iter().skip(r).step_by(m).copied().collect()),
        };
        Ok(Series { coeffs })
    }

    /// Substitute `q -> q^k` and truncate at `new_trunc`. Fails when
    /// `new_trunc` reaches past the first coefficient this series cannot know,
    /// i.e. `new_trunc >= k (T + 1)`.
    pub fn inflate(&self, k: usize, new_trunc: usize) -> Result<Series> {
        if k == 0 {
            return Err(SeriesError::ZeroScale);
        }
        if new_trunc >= k * (self.trunc() + 1) {
            return Err(SeriesError::InsufficientPrecision {
                trunc: self.trunc(),
                factor: k,
                requested: new_trunc,
            });
        }
        let mut out = Series::zero(self.ring(), new_trunc);
        let terms = new_trunc / k + 1;
        match (&mut out.coeffs, &self.coeffs) {
            (Coeffs::Exact(d), Coeffs::Exact(s)) => {
                for i in 0..terms {
                    d[i * k] = s[i].clone();
                }
            }
            (Coeffs::Modular(_, d), Coeffs::Modular(_, s)) => {
                for i in 0..terms {
                    d[i * k] = s[i];
                }
            }
            _ => unreachable!(),
        }
        Ok(out)
    }

    /// Substitute `q -> -q`.
    pub fn alternate_sign(&self) -> Series {
        let coeffs = match &self.coeffs {
            Coeffs::Exact(v) => Coeffs::Exact(
                v.iter().enumerate().map(|(n, x)| if n % 2 == 1 { -x } else { x.clone() }).collect(),
            ),
            Coeffs::Modular(m, v) => Coeffs::Modular(
                *m,
                v.iter().enumerate().map(|(n, &x)| if n % 2 == 1 { (m - x) % m } else { x }).collect(),
            ),
        };
        Series { coeffs }
    }

    /// Coefficientwise reduction modulo `m`. Accepts exact series, and modular
    /// series whose modulus is a multiple of `m`.
    pub fn reduce_mod(&self, m: u64) -> Result<Series> {
        let ring = Ring::modular(m)?;
        let coeffs = match &self.coeffs {
            Coeffs::Exact(v) => v.iter().map(|x| big_mod(x, m)).collect(),
            Coeffs::Modular(old, v) => {
                if old % m != 0 {
                    return Err(SeriesError::IncompatibleReduction { from: self.ring(), to: ring });
                }
                v.iter().map(|x| x % m).collect()
            }
        };
        Ok(Series { coeffs: Coeffs::Modular(m, coeffs) })
    }

    /// First exponent (up to the smaller order) where the two series differ.
    pub fn first_mismatch(&self, other: &Series) -> Result<Option<usize>> {
        self.check_ring(other)?;
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => a.iter().zip(b).position(|(x, y)| x != y),
            (Coeffs::Modular(_, a), Coeffs::Modular(_, b)) => a.iter().zip(b).position(|(x, y)| x != y),
            _ => unreachable!(),
        })
    }

    /// Coefficientwise equality up to the smaller truncation order.
    pub fn series_equal(&self, other: &Series) -> Result<bool> {
        Ok(self.first_mismatch(other)?.is_none())
    }

    /// Coefficient `n` of `self * other` by a direct length-`n` sum, for
    /// spot-checking products computed on the fast path.
    pub fn product_coeff(&self, other: &Series, n: usize) -> Result<BigInt> {
        self.check_ring(other)?;
        let trunc = self.trunc().min(other.trunc());
        if n > trunc {
            return Err(SeriesError::OutOfRange { exponent: n, trunc });
        }
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => (0..=n).map(|i| &a[i] * &b[n - i]).sum(),
            (Coeffs::Modular(m, a), Coeffs::Modular(_, b)) => {
                let s: u128 = (0..=n).map(|i| (a[i] * b[n - i]) as u128).sum();
                BigInt::from((s % *m as u128) as u64)
            }
            _ => unreachable!(),
        })
    }
}

enum UnitInverse {
    Exact(BigInt),
    Modular(u64),
}

/// Operands with at most this many nonzero terms multiply faster by the sparse
/// quadratic kernel than through transforms.
fn sparse_cutoff(len: usize) -> usize {
    let log = usize::BITS - len.leading_zeros();
    8 * log as usize
}

fn big_mod(x: &BigInt, m: u64) -> u64 {
    if let Some(v) = x.to_i64() {
        return reduce_signed(v, m);
    }
    x.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for n in 0..=self.trunc() {
            let c = self.coeff(n).unwrap();
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}q")?,
                _ => write!(f, "{c}q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{}) over {}", self.trunc() + 1, self.ring())
    }
}
