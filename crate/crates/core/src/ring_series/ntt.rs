//! Number-theoretic-transform convolution over several word-size primes,
//! recombined by Garner's mixed-radix CRT into residues modulo an arbitrary
//! modulus or into signed big integers.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::modarith::{inv_mod, is_prime, pow_mod, prime_factors};

/// Largest transform length supported, as a power of two.
pub const MAX_LOG_SIZE: u32 = 25;
const MAX_PRIMES_PER_SIZE: usize = 64;

/// A prime `p < 2^31` with `2^log_size | p - 1`, in Montgomery form (`R = 2^32`).
#[derive(Clone, Debug)]
pub struct NttPrime {
    pub p: u32,
    neg_inv: u32,
    r2: u32,
    root: u32,
}

impl NttPrime {
    fn new(p: u32) -> Self {
        // Newton iteration for p^{-1} mod 2^32.
        let mut inv = 1u32;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r2 = ((1u128 << 64) % p as u128) as u32;
        let factors = prime_factors(p as u64 - 1);
        let root = (2..p as u64)
            .find(|&g| factors.iter().all(|&f| pow_mod(g, (p as u64 - 1) / f, p as u64) != 1))
            .expect("prime has a primitive root") as u32;
        NttPrime { p, neg_inv: inv.wrapping_neg(), r2, root }
    }

    #[inline(always)]
    fn reduce(&self, t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(self.neg_inv);
        let u = ((t + m as u64 * self.p as u64) >> 32) as u32;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    fn to_mont(&self, x: u32) -> u32 {
        self.mul(x, self.r2)
    }

    #[inline(always)]
    fn from_mont(&self, x: u32) -> u32 {
        self.reduce(x as u64)
    }

    fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let mut acc = self.to_mont(1);
        let mut b = self.to_mont(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        self.from_mont(acc)
    }

    /// In-place transform of Montgomery-form values; `a.len()` must be a power of two.
    fn transform(&self, a: &mut [u32], inverse: bool) {
        let n = a.len();
        if n <= 1 {
            return;
        }
        let log_n = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - log_n);
            if i < j {
                a.swap(i, j);
            }
        }
        let mut w = self.pow(self.root, (self.p as u64 - 1) / n as u64);
        if inverse {
            w = self.pow(w, self.p as u64 - 2);
        }
        let w = self.to_mont(w);
        let half_n = n / 2;
        let mut roots = Vec::with_capacity(half_n);
        let mut cur = self.to_mont(1);
        for _ in 0..half_n {
            roots.push(cur);
            cur = self.mul(cur, w);
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let step = n / len;
            for chunk in a.chunks_exact_mut(len) {
                let (lo, hi) = chunk.split_at_mut(half);
                for j in 0..half {
                    let u = lo[j];
                    let v = self.mul(hi[j], roots[j * step]);
                    lo[j] = self.add(u, v);
                    hi[j] = self.sub(u, v);
                }
            }
            len <<= 1;
        }
        if inverse {
            let n_inv = self.to_mont(self.pow(n as u32 % self.p, self.p as u64 - 2));
            for x in a.iter_mut() {
                *x = self.mul(*x, n_inv);
            }
        }
    }

    /// Cyclic-free product of two residue vectors (plain form), truncated to `out_len`.
    fn convolve(&self, a: &[u32], b: &[u32], out_len: usize) -> Vec<u32> {
        let size = (a.len() + b.len() - 1).next_power_of_two();
        let mut fa = vec![0u32; size];
        let mut fb = vec![0u32; size];
        for (dst, &x) in fa.iter_mut().zip(a) {
            *dst = self.to_mont(x);
        }
        for (dst, &x) in fb.iter_mut().zip(b) {
            *dst = self.to_mont(x);
        }
        self.transform(&mut fa, false);
        self.transform(&mut fb, false);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = self.mul(*x, *y);
        }
        self.transform(&mut fa, true);
        fa.truncate(out_len);
        fa.iter_mut().for_each(|x| *x = self.from_mont(*x));
        fa
    }
}

/// Primes in `(2^30, 2^31)` whose multiplicative group supports transforms of
/// length `2^log_size`, largest first.
pub fn primes_for(log_size: u32) -> &'static [NttPrime] {
    static TABLES: [OnceLock<Vec<NttPrime>>; MAX_LOG_SIZE as usize + 1] =
        [const { OnceLock::new() }; MAX_LOG_SIZE as usize + 1];
    let log_size = log_size.max(1).min(MAX_LOG_SIZE);
    TABLES[log_size as usize].get_or_init(|| {
        let step = 1u64 << log_size;
        let mut c = ((1u64 << 31) - 2) / step;
        let mut out = Vec::new();
        while out.len() < MAX_PRIMES_PER_SIZE {
            let p = c * step + 1;
            if p <= 1 << 30 {
                break;
            }
            if is_prime(p) {
                out.push(NttPrime::new(p as u32));
            }
            c -= 1;
        }
        out
    })
}

fn transform_log(len_a: usize, len_b: usize) -> Option<u32> {
    let size = (len_a + len_b - 1).next_power_of_two();
    let log = size.trailing_zeros();
    (log <= MAX_LOG_SIZE).then_some(log)
}

/// Mixed-radix digits of the CRT lift of `residues` (one per prime).
struct Garner {
    primes: Vec<u64>,
    // inv[i][j] = p_j^{-1} mod p_i for j < i
    inv: Vec<Vec<u64>>,
}

impl Garner {
    fn new(primes: &[NttPrime]) -> Self {
        let primes: Vec<u64> = primes.iter().map(|p| p.p as u64).collect();
        let inv = (0..primes.len())
            .map(|i| (0..i).map(|j| inv_mod(primes[j] % primes[i], primes[i]).unwrap()).collect())
            .collect();
        Garner { primes, inv }
    }

    fn digits(&self, residues: &[u32], out: &mut [u64]) {
        for i in 0..self.primes.len() {
            let p = self.primes[i];
            let mut t = residues[i] as u64;
            for j in 0..i {
                t = (t + p - out[j] % p) % p * self.inv[i][j] % p;
            }
            out[i] = t;
        }
    }
}

fn run_products(primes: &[NttPrime], a: &[Vec<u32>], b: &[Vec<u32>], out_len: usize) -> Vec<Vec<u32>> {
    primes
        .par_iter()
        .enumerate()
        .map(|(i, prime)| prime.convolve(&a[i], &b[i], out_len))
        .collect()
}

fn choose_primes(log: u32, needed_bits: f64) -> Option<&'static [NttPrime]> {
    let available = primes_for(log);
    let mut bits = 0.0;
    for (i, p) in available.iter().enumerate() {
        bits += (p.p as f64).log2();
        if bits > needed_bits {
            return Some(&available[..=i]);
        }
    }
    None
}

/// Product of residue vectors modulo `modulus` (`modulus < 2^32`), truncated to
/// `out_len` coefficients. `None` when no prime set covers the coefficient bound.
pub fn convolve_residues(a: &[u64], b: &[u64], modulus: u64, out_len: usize) -> Option<Vec<u64>> {
    let a = &a[..a.len().min(out_len)];
    let b = &b[..b.len().min(out_len)];
    if a.is_empty() || b.is_empty() {
        return Some(vec![0; out_len]);
    }
    let log = transform_log(a.len(), b.len())?;
    let m1 = (modulus - 1) as f64;
    let needed = (a.len().min(b.len()) as f64).log2() + 2.0 * m1.max(1.0).log2() + 1.0;
    let primes = choose_primes(log, needed)?;
    let ra: Vec<Vec<u32>> = primes
        .iter()
        .map(|p| a.iter().map(|&x| (x % p.p as u64) as u32).collect())
        .collect();
    let rb: Vec<Vec<u32>> = primes
        .iter()
        .map(|p| b.iter().map(|&x| (x % p.p as u64) as u32).collect())
        .collect();
    let prods = run_products(primes, &ra, &rb, out_len);
    let garner = Garner::new(primes);
    // radix weights prod_{j<i} p_j mod modulus
    let mut weights = Vec::with_capacity(primes.len());
    let mut w = 1 % modulus;
    for p in primes {
        weights.push(w);
        w = (w as u128 * p.p as u128 % modulus as u128) as u64;
    }
    let k = primes.len();
    let produced = prods[0].len();
    let out: Vec<u64> = (0..produced)
        .into_par_iter()
        .map_init(
            || (vec![0u32; k], vec![0u64; k]),
            |(res, digits), n| {
                for i in 0..k {
                    res[i] = prods[i][n];
                }
                garner.digits(res, digits);
                let mut acc = 0u128;
                for i in 0..k {
                    acc += digits[i] as u128 * weights[i] as u128;
                }
                (acc % modulus as u128) as u64
            },
        )
        .collect();
    let mut out = out;
    out.resize(out_len, 0);
    Some(out)
}

fn residue_of(x: &BigInt, p: u32) -> u32 {
    if let Some(v) = x.to_i64() {
        return (v as i128).rem_euclid(p as i128) as u32;
    }
    let r = (x % BigInt::from(p)).to_i64().unwrap();
    r.rem_euclid(p as i64) as u32
}

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|x| x.bits()).max().unwrap_or(0)
}

/// Exact product of integer vectors truncated to `out_len` coefficients.
/// `None` when the coefficient size exceeds what the prime tables can recover.
pub fn convolve_signed(a: &[BigInt], b: &[BigInt], out_len: usize) -> Option<Vec<BigInt>> {
    let a = &a[..a.len().min(out_len)];
    let b = &b[..b.len().min(out_len)];
    if a.is_empty() || b.is_empty() {
        return Some(vec![BigInt::zero(); out_len]);
    }
    let log = transform_log(a.len(), b.len())?;
    let needed = (max_bits(a) + max_bits(b)) as f64 + (a.len().min(b.len()) as f64).log2() + 2.0;
    let primes = choose_primes(log, needed)?;
    let ra: Vec<Vec<u32>> = primes
        .par_iter()
        .map(|p| a.iter().map(|x| residue_of(x, p.p)).collect())
        .collect();
    let rb: Vec<Vec<u32>> = primes
        .par_iter()
        .map(|p| b.iter().map(|x| residue_of(x, p.p)).collect())
        .collect();
    let prods = run_products(primes, &ra, &rb, out_len);
    let garner = Garner::new(primes);
    let k = primes.len();
    let full: BigUint = primes.iter().map(|p| BigUint::from(p.p)).product();
    let half = &full >> 1u32;
    let full = BigInt::from_biguint(Sign::Plus, full);
    let produced = prods[0].len();
    let mut out: Vec<BigInt> = (0..produced)
        .into_par_iter()
        .map_init(
            || (vec![0u32; k], vec![0u64; k]),
            |(res, digits), n| {
                for i in 0..k {
                    res[i] = prods[i][n];
                }
                garner.digits(res, digits);
                let mut acc = BigUint::from(digits[k - 1]);
                for i in (0..k - 1).rev() {
                    acc = acc * primes[i].p + digits[i];
                }
                if acc > half {
                    BigInt::from_biguint(Sign::Plus, acc) - &full
                } else {
                    BigInt::from_biguint(Sign::Plus, acc)
                }
            },
        )
        .collect();
    out.resize(out_len, BigInt::zero());
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_tables_have_required_structure() {
        for log in [1, 10, 22] {
            let ps = primes_for(log);
            assert!(ps.len() >= 3, "log {log}: {}", ps.len());
            for p in ps {
                assert_eq!((p.p as u64 - 1) % (1 << log), 0);
                assert!(is_prime(p.p as u64));
                assert!(p.p > 1 << 30);
            }
        }
    }

    #[test]
    fn transform_round_trip() {
        let p = &primes_for(4)[0];
        let orig: Vec<u32> = (0..16).map(|i| p.to_mont(i * 7 + 3)).collect();
        let mut v = orig.clone();
        p.transform(&mut v, false);
        p.transform(&mut v, true);
        assert_eq!(v, orig);
    }

    #[test]
    fn small_products_match_hand_values() {
        // (1 + q)^2 and (1 - q)(1 + q + q^2 + q^3)
        let sq = convolve_residues(&[1, 1], &[1, 1], 7, 3).unwrap();
        assert_eq!(sq, vec![1, 2, 1]);
        let a: Vec<BigInt> = [1, -1].iter().map(|&x| BigInt::from(x)).collect();
        let b: Vec<BigInt> = [1, 1, 1, 1].iter().map(|&x| BigInt::from(x)).collect();
        let t = convolve_signed(&a, &b, 4).unwrap();
        assert_eq!(t, vec![BigInt::from(1), BigInt::zero(), BigInt::zero(), BigInt::zero()]);
    }
}
