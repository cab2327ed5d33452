//! The verifier primitives. Each returns a [`CheckOutcome`]; registry
//! entries compose them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{CheckOutcome, Context, SuiteError, EXACT_SQUARES_LIMIT, ORACLE_CROSSCHECK_LIMIT, TRUNC_LIMIT};
use crate::counting::{self, TableKind};
use crate::ring_series::modarith::{is_prime, pow_mod, reduce_signed};
use crate::ring_series::{Ring, Series};
use crate::theta_lab::{b_series, identity_sides, phi_series, IdentityId};

/// Members to cross-check against the oracle per progression.
const ORACLE_SAMPLES: usize = 10;
/// Members to spot-verify per density family.
const DENSITY_SAMPLES: usize = 200;
/// Largest `N` accepted by [`density_count`].
const DENSITY_LIMIT: u64 = 100_000_000;

/// The indices `scale · (a n + b)`, `n ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progression {
    pub scale: u64,
    pub a: u64,
    pub b: u64,
}

impl Progression {
    pub const fn new(a: u64, b: u64) -> Self {
        Progression { scale: 1, a, b }
    }

    pub const fn scaled(scale: u64, a: u64, b: u64) -> Self {
        Progression { scale, a, b }
    }

    pub fn index(&self, n: u64) -> u64 {
        self.scale * (self.a * n + self.b)
    }

    /// Largest `n` whose index is at most `limit`.
    pub fn last_n(&self, limit: u64) -> Option<u64> {
        let reduced = limit / self.scale;
        (reduced >= self.b).then(|| (reduced - self.b) / self.a)
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 1 {
            write!(f, "{}n+{}", self.a, self.b)
        } else {
            write!(f, "{}({}n+{})", self.scale, self.a, self.b)
        }
    }
}

/// Up to `k` evenly spaced elements of `items`, first and last included.
fn spread<T: Copy>(items: &[T], k: usize) -> Vec<T> {
    if items.len() <= k {
        return items.to_vec();
    }
    (0..k).map(|i| items[i * (items.len() - 1) / (k - 1)]).collect()
}

/// `modulus | p̄₃(prog(n))` for `0 <= n <= n_max`, or for every member
/// inside the table when `n_max` is `None`. Members with index up to 400
/// are also compared against the product oracle.
pub fn verify_progression(ctx: &Context, prog: Progression, modulus: u64, n_max: Option<u64>) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    let Some(p3) = ctx.p3_for(modulus) else {
        out.skip(format!("{prog}: table order {} exceeds the budget {TRUNC_LIMIT}", ctx.trunc()));
        return out;
    };
    let reach = prog.last_n(p3.trunc());
    let last = match (n_max, reach) {
        (_, None) => {
            out.skip(format!("{prog}: no member within order {}", p3.trunc()));
            return out;
        }
        (Some(want), Some(reach)) if want > reach => {
            out.skip(format!("{prog} up to n = {want}: table reaches n = {reach}"));
            return out;
        }
        (Some(want), _) => want,
        (None, Some(reach)) => reach,
    };
    for n in 0..=last {
        let r = p3.residue(prog.index(n), modulus).expect("index within table");
        out.record(n, r == 0, r, 0);
    }
    out.raise_bound(last);

    let small: Vec<u64> = (0..=last).take_while(|&n| prog.index(n) <= ORACLE_CROSSCHECK_LIMIT).collect();
    let oracle = ctx.oracle();
    for n in spread(&small, ORACLE_SAMPLES) {
        let idx = prog.index(n);
        let exact = &oracle[idx as usize];
        let from_table = p3.residue(idx, modulus).expect("index within table");
        let from_oracle = exact.mod_floor(&BigInt::from(modulus)).to_u64().expect("reduced");
        out.record(n, from_table == from_oracle, from_table, from_oracle);
    }
    out
}

/// Pointwise relations between counting functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `1/φ(-q)^k` against the product oracle for `k = 1, 2, 3`, from `n = 0`.
    GeneratingFunction,
    /// `p̄_k(n)` against the `2^{m+2}` classifier, from `n = 1`.
    KeisterSellers { k: u32 },
    /// `p̄_k(n)` against the `2^{m(k)}` classifier, from `n = 1`.
    Mod2m { k: u32 },
    /// `r₂⁺(n) = r₂(n)/4 - χ(n)`, with `r₂` also from the divisor sum, from `n = 1`.
    TwoSquare,
    /// `r₂(n) mod 8` against its classifier, from `n = 1`.
    R2Mod8,
    /// `r₄(pn) ≡ r₄(n)` and `r₈(pn) ≡ r₈(n) (mod p)`, from `n = 0`.
    R48 { p: u64 },
    /// `p̄₃(7n) ≡ (-1)^n r₃(n) (mod 7)`, from `n = 1`.
    SevenThreeSquares,
    /// `p̄₃(11n) ≡ (-1)^n r₇(n) (mod 11)`, from `n = 0`.
    ElevenSevenSquares,
    /// `p̄₃(7·4^{α+1} n) ≡ (-1)^n p̄₃(7n) (mod 7)`, from `n = 0`.
    FourPower { alpha: u32 },
    /// `p̄₃(7⁴ n) ≡ p̄₃(7² n) (mod 7)`, from `n = 0`.
    SevenPowers,
    /// `p̄₃(11³ n) ≡ p̄₃(11 n) (mod 11)`, from `n = 0`.
    ElevenCube,
}

impl Relation {
    fn first_n(&self) -> u64 {
        match self {
            Relation::KeisterSellers { .. }
            | Relation::Mod2m { .. }
            | Relation::TwoSquare
            | Relation::R2Mod8
            | Relation::SevenThreeSquares => 1,
            _ => 0,
        }
    }

    /// Largest `p̄₃` index touched for `n`, if the relation reads the shared
    /// table.
    fn p3_index(&self, n: u64) -> Option<u64> {
        match self {
            Relation::SevenThreeSquares => Some(7 * n),
            Relation::ElevenSevenSquares => Some(11 * n),
            Relation::FourPower { alpha } => Some(7 * 4u64.pow(alpha + 1) * n),
            Relation::SevenPowers => Some(2401 * n),
            Relation::ElevenCube => Some(1331 * n),
            _ => None,
        }
    }

    /// Largest index of any auxiliary table touched for `n`.
    fn aux_index(&self, n: u64) -> u64 {
        match self {
            Relation::R48 { p } => p * n,
            _ => n,
        }
    }
}

fn signed_residue(v: u64, n: u64, m: u64) -> u64 {
    if n % 2 == 1 {
        (m - v % m) % m
    } else {
        v % m
    }
}

fn table(kind: TableKind, k: u32, ring: Ring, trunc: u64) -> std::sync::Arc<Series> {
    counting::cached_table(kind, k, ring, trunc as usize).expect("constant term 1")
}

fn residues(s: &Series) -> &[u64] {
    s.residues().expect("modular table")
}

/// Check `rel` for every `n` from its natural start up to `n_max`.
pub fn verify_pointwise(ctx: &Context, rel: Relation, n_max: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    let start = rel.first_n();
    if n_max < start {
        out.skip(format!("{rel:?}: empty range"));
        return out;
    }
    if let Some(top) = rel.p3_index(n_max) {
        match ctx.p3() {
            Some(p3) if top <= p3.trunc() => pointwise_p3(&mut out, rel, &p3, start, n_max),
            _ => {
                out.skip(format!("{rel:?} up to n = {n_max}: needs p̄₃ to {top}, table order {}", ctx.trunc()));
                return out;
            }
        }
    } else {
        let top = rel.aux_index(n_max);
        if top as usize > TRUNC_LIMIT || (rel == Relation::GeneratingFunction && top > 2000) {
            out.skip(format!("{rel:?} up to n = {n_max}: over budget"));
            return out;
        }
        pointwise_aux(&mut out, rel, start, n_max);
    }
    out.raise_bound(n_max);
    out
}

fn pointwise_p3(out: &mut CheckOutcome, rel: Relation, p3: &super::P3Table, start: u64, n_max: u64) {
    let at = |i: u64, m: u64| p3.residue(i, m).expect("index within table");
    match rel {
        Relation::SevenThreeSquares => {
            let r3 = table(TableKind::Squares, 3, Ring::Modular(7), n_max);
            for n in start..=n_max {
                let lhs = at(7 * n, 7);
                let rhs = signed_residue(residues(&r3)[n as usize], n, 7);
                out.record(n, lhs == rhs, lhs, rhs);
            }
            if at(0, 7) == residues(&r3)[0] {
                out.note("n = 0 also satisfies the relation (both sides 1)");
            }
        }
        Relation::ElevenSevenSquares => {
            let r7 = table(TableKind::Squares, 7, Ring::Modular(11), n_max);
            for n in start..=n_max {
                let lhs = at(11 * n, 11);
                let rhs = signed_residue(residues(&r7)[n as usize], n, 11);
                out.record(n, lhs == rhs, lhs, rhs);
            }
        }
        Relation::FourPower { alpha } => {
            let s = 7 * 4u64.pow(alpha + 1);
            for n in start..=n_max {
                let lhs = at(s * n, 7);
                let rhs = signed_residue(at(7 * n, 7), n, 7);
                out.record(n, lhs == rhs, lhs, rhs);
            }
        }
        Relation::SevenPowers => {
            for n in start..=n_max {
                let (lhs, rhs) = (at(2401 * n, 7), at(49 * n, 7));
                out.record(n, lhs == rhs, lhs, rhs);
            }
        }
        Relation::ElevenCube => {
            for n in start..=n_max {
                let (lhs, rhs) = (at(1331 * n, 11), at(11 * n, 11));
                out.record(n, lhs == rhs, lhs, rhs);
            }
        }
        _ => unreachable!("relation does not read p̄₃"),
    }
}

fn pointwise_aux(out: &mut CheckOutcome, rel: Relation, start: u64, n_max: u64) {
    match rel {
        Relation::GeneratingFunction => {
            for k in 1..=3 {
                let oracle = counting::overpartition_oracle_table(k, n_max as usize).expect("within oracle budget");
                let series = table(TableKind::Overpartition, k, Ring::Exact, n_max);
                let coeffs = series.exact_coeffs().expect("exact table");
                for n in start..=n_max {
                    let (a, b) = (&coeffs[n as usize], &oracle[n as usize]);
                    out.record(n, a == b, a, b);
                }
            }
        }
        Relation::KeisterSellers { k } => {
            let m = 1u64 << (k.trailing_zeros() + 2);
            let t = table(TableKind::Overpartition, k, Ring::Modular(m), n_max);
            for n in start..=n_max {
                let want = counting::keister_sellers_predicted(k, n).expect("n >= 1, k >= 1");
                let got = residues(&t)[n as usize];
                out.record(n, got == want.residue, got, want.residue);
            }
        }
        Relation::Mod2m { k } => {
            let m = 1u64 << counting::mod2m_exponent(k);
            let t = table(TableKind::Overpartition, k, Ring::Modular(m), n_max);
            for n in start..=n_max {
                let want = counting::mod2m_predicted(k, n).expect("n >= 1, k >= 1");
                let got = residues(&t)[n as usize];
                out.record(n, got == want.residue, got, want.residue);
            }
        }
        Relation::TwoSquare => {
            let r2 = table(TableKind::Squares, 2, Ring::Exact, n_max);
            let r2 = r2.exact_coeffs().expect("exact table");
            for n in start..=n_max {
                let quarter = (&r2[n as usize] / 4u32) - BigInt::from(counting::chi(n));
                let plus = BigInt::from(counting::r2_plus(n).expect("n >= 1"));
                out.record(n, plus == quarter, &plus, &quarter);
                let divisor_sum = BigInt::from(counting::r2_divisor_sum(n));
                out.record(n, divisor_sum == r2[n as usize], &divisor_sum, &r2[n as usize]);
            }
        }
        Relation::R2Mod8 => {
            let r2 = table(TableKind::Squares, 2, Ring::Modular(8), n_max);
            for n in start..=n_max {
                let want = counting::r2_mod8_predicted(n).expect("n >= 1");
                let got = residues(&r2)[n as usize];
                out.record(n, got == want, got, want);
            }
        }
        Relation::R48 { p } => {
            for k in [4, 8] {
                let r = table(TableKind::Squares, k, Ring::Modular(p), p * n_max);
                let r = residues(&r);
                for n in start..=n_max {
                    let (lhs, rhs) = (r[(p * n) as usize], r[n as usize]);
                    out.record(n, lhs == rhs, lhs, rhs);
                }
            }
        }
        _ => unreachable!("relation reads p̄₃"),
    }
}

/// Congruences between dissected `p̄₃` series and theta quotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CongruenceIdentity {
    /// `Σ p̄₃(3n+r)(-q)^n`: `φ(q³)/φ(q)⁴ (mod 72)` for `r = 0`,
    /// `6 φ(q³)⁴ B(-q)/φ(q)⁸ (mod 144)` for `r = 1`,
    /// `24 φ(q³)³ B(-q)²/φ(q)⁸ (mod 288)` for `r = 2`.
    ThreeDissection(u8),
    /// `Σ p̄₃(3^{2α} n)(-q)^n ≡ φ(q³)⁴/φ(q)⁷ (mod 72)`
    NineEven { alpha: u32 },
    /// `Σ p̄₃(3^{2α+1} n)(-q)^n ≡ φ(q³)⁵/φ(q)⁸ (mod 72)`
    NineOdd { alpha: u32 },
    /// `Σ p̄₃(7n)(-q)^n ≡ φ(q)³ (mod 7)`
    SevenDissection,
}

impl CongruenceIdentity {
    pub fn stated_modulus(&self) -> u64 {
        match self {
            CongruenceIdentity::ThreeDissection(0) => 72,
            CongruenceIdentity::ThreeDissection(1) => 144,
            CongruenceIdentity::ThreeDissection(_) => 288,
            CongruenceIdentity::NineEven { .. } | CongruenceIdentity::NineOdd { .. } => 72,
            CongruenceIdentity::SevenDissection => 7,
        }
    }

    /// `(m, r)` such that the left side collects `p̄₃(mn + r)`.
    pub fn progression(&self) -> (u64, u64) {
        match *self {
            CongruenceIdentity::ThreeDissection(r) => (3, r as u64),
            CongruenceIdentity::NineEven { alpha } => (9u64.pow(alpha), 0),
            CongruenceIdentity::NineOdd { alpha } => (3 * 9u64.pow(alpha), 0),
            CongruenceIdentity::SevenDissection => (7, 0),
        }
    }

    fn rhs(&self, ring: Ring, trunc: usize) -> Series {
        let phi = phi_series(ring, trunc);
        let phi3 = phi_series(ring, trunc / 3).inflate(3, trunc).expect("order fits");
        let inv = |e: u64| phi.pow(e).invert().expect("constant term 1");
        let b_neg = || b_series(ring, trunc).expect("constant term 1").alternate_sign();
        let mul = |a: &Series, b: &Series| a.mul(b).expect("same ring");
        match *self {
            CongruenceIdentity::ThreeDissection(0) => mul(&phi3, &inv(4)),
            CongruenceIdentity::ThreeDissection(1) => mul(&mul(&phi3.pow(4), &inv(8)), &b_neg()).scale(6),
            CongruenceIdentity::ThreeDissection(_) => mul(&mul(&phi3.pow(3), &inv(8)), &b_neg().pow(2)).scale(24),
            CongruenceIdentity::NineEven { .. } => mul(&phi3.pow(4), &inv(7)),
            CongruenceIdentity::NineOdd { .. } => mul(&phi3.pow(5), &inv(8)),
            CongruenceIdentity::SevenDissection => phi.pow(3),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesIdentity {
    Theta(IdentityId),
    Congruence(CongruenceIdentity),
}

/// Compare both sides of `id` coefficientwise up to `q^trunc`. Theta
/// identities default to their natural ring; congruences to their stated
/// modulus, of which `modulus` must be a divisor.
pub fn verify_series_identity(
    ctx: &Context,
    id: SeriesIdentity,
    modulus: Option<u64>,
    trunc: usize,
) -> Result<CheckOutcome, SuiteError> {
    let mut out = CheckOutcome::new();
    let (lhs, rhs) = match id {
        SeriesIdentity::Theta(theta) => {
            let ring = modulus.map(Ring::Modular).unwrap_or(theta.required_ring());
            identity_sides(theta, ring, trunc)?
        }
        SeriesIdentity::Congruence(c) => {
            let stated = c.stated_modulus();
            let m = modulus.unwrap_or(stated);
            if stated % m != 0 {
                return Err(SuiteError::ModulusMismatch { given: m, stated });
            }
            let (step, offset) = c.progression();
            let need = step * trunc as u64 + offset;
            let p3 = match ctx.p3_for(m) {
                Some(p3) if need <= p3.trunc() => p3,
                _ => {
                    out.skip(format!("{c:?} to order {trunc}: needs p̄₃ to {need}, table order {}", ctx.trunc()));
                    return Ok(out);
                }
            };
            let lhs = p3
                .series()
                .reduce_mod(m)
                .and_then(|s| s.dissect(step as usize, offset as usize))
                .expect("table covers the progression")
                .truncate(trunc)
                .alternate_sign();
            (lhs, c.rhs(Ring::Modular(m), trunc))
        }
    };
    match lhs.first_mismatch(&rhs).expect("same ring and order") {
        None => out.checked = trunc as u64 + 1,
        Some(n) => {
            out.checked = n as u64 + 1;
            let (a, b) = (lhs.coeff(n).expect("in range"), rhs.coeff(n).expect("in range"));
            out.first_failure = Some(super::Counterexample { n: n as u64, observed: a.to_string(), expected: b.to_string() });
        }
    }
    out.raise_bound(trunc as u64);
    Ok(out)
}

/// Recurrences for `r₃`, `r₇` (exact) and their `p̄₃` images (mod 7, 11).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecurrenceId {
    /// `r₃(p²n) + (-n/p) r₃(n) + p r₃(n/p²) = (p+1) r₃(n)`
    R3Hurwitz,
    /// `r₃(p³n) + p r₃(n/p) = (p+1) r₃(pn)`
    R3Shifted,
    /// `r₇(p²n) = (p⁵ - p² (-n/p) + 1) r₇(n) - p⁵ r₇(n/p²)`
    R7Cooper,
    /// `r₇(p³n) = (p⁵+1) r₇(pn) - p⁵ r₇(n/p)`
    R7Shifted,
    /// `p̄₃(7p³n) + p p̄₃(7n/p) ≡ (p+1) p̄₃(7pn) (mod 7)`
    P3Mod7Rel,
    /// `p̄₃(7p²n) + (-n/p) p̄₃(7n) + p p̄₃(7n/p²) ≡ (p+1) p̄₃(7n) (mod 7)`
    P3Mod7Square,
    /// `p̄₃(11p³n) ≡ (p⁵+1) p̄₃(11pn) - p⁵ p̄₃(11n/p) (mod 11)`
    P3Mod11Rel,
    /// `p̄₃(7p^{2k+1}N) ≡ (p(p^k-1)/(p-1) + 1) p̄₃(7pN) (mod 7)`, `p ∤ N`
    P3Mod7Iterate,
    /// `p̄₃(11p^{2k+1}N) ≡ (p⁵(p^{5k}-1)/(p⁵-1) + 1) p̄₃(11pN) (mod 11)`, `p ∤ N`
    P3Mod11Iterate,
}

impl RecurrenceId {
    /// Largest table index read for `(p, n)`.
    fn top_index(&self, p: u64, n: u64) -> u64 {
        match self {
            RecurrenceId::R3Hurwitz | RecurrenceId::R7Cooper => p * p * n,
            RecurrenceId::R3Shifted | RecurrenceId::R7Shifted => p * p * p * n,
            RecurrenceId::P3Mod7Rel | RecurrenceId::P3Mod7Iterate => 7 * p * p * p * n,
            RecurrenceId::P3Mod7Square => 7 * p * p * n,
            RecurrenceId::P3Mod11Rel | RecurrenceId::P3Mod11Iterate => 11 * p * p * p * n,
        }
    }

    fn is_exact(&self) -> bool {
        matches!(self, RecurrenceId::R3Hurwitz | RecurrenceId::R3Shifted | RecurrenceId::R7Cooper | RecurrenceId::R7Shifted)
    }
}

/// `(-n / p)` as an integer.
fn legendre_neg(n: u64, p: u64) -> i64 {
    counting::legendre(-(n as i64), p).expect("odd prime") as i64
}

/// Check `id` for each prime in `primes` and `0 <= n <= n_max` (iterated
/// forms: `1 <= N <= n_max`, `p ∤ N`). With `n_max = None` every `n` whose
/// indices fit the table is used.
pub fn verify_recurrence(
    ctx: &Context,
    id: RecurrenceId,
    primes: &[u64],
    n_max: Option<u64>,
) -> Result<CheckOutcome, SuiteError> {
    if let Some(&p) = primes.iter().find(|&&p| p == 2 || !is_prime(p)) {
        return Err(SuiteError::NotOddPrime(p));
    }
    let mut out = CheckOutcome::new();
    let limit = if id.is_exact() {
        EXACT_SQUARES_LIMIT as u64
    } else {
        match ctx.p3() {
            Some(p3) => p3.trunc(),
            None => {
                out.skip(format!("{id:?}: table order {} exceeds the budget", ctx.trunc()));
                return Ok(out);
            }
        }
    };
    for &p in primes {
        let last = match n_max {
            Some(n) if id.top_index(p, n) > limit => {
                out.skip(format!("{id:?} p = {p} up to n = {n}: needs index {}", id.top_index(p, n)));
                continue;
            }
            Some(n) => n,
            None => limit / id.top_index(p, 1),
        };
        let had_failure = out.first_failure.is_some();
        match id {
            RecurrenceId::R3Hurwitz | RecurrenceId::R3Shifted | RecurrenceId::R7Cooper | RecurrenceId::R7Shifted => {
                exact_recurrence(&mut out, id, p, last)
            }
            _ => {
                let p3 = ctx.p3().expect("checked above");
                p3_recurrence(&mut out, id, p, last, &p3);
            }
        }
        if !had_failure && out.first_failure.is_some() {
            out.note(format!("{id:?}: first failure at p = {p}"));
        }
        out.raise_bound(last);
    }
    Ok(out)
}

fn exact_recurrence(out: &mut CheckOutcome, id: RecurrenceId, p: u64, last: u64) {
    let k = if matches!(id, RecurrenceId::R3Hurwitz | RecurrenceId::R3Shifted) { 3 } else { 7 };
    let t = table(TableKind::Squares, k, Ring::Exact, id.top_index(p, last));
    let r = t.exact_coeffs().expect("exact table");
    let at = |i: u64| r[i as usize].clone();
    let below = |n: u64, d: u64| if n % d == 0 { at(n / d) } else { BigInt::zero() };
    let pb = BigInt::from(p);
    let p5 = BigInt::from(p.pow(5));
    for n in 0..=last {
        let (lhs, rhs) = match id {
            RecurrenceId::R3Hurwitz => (
                at(p * p * n) + legendre_neg(n, p) * at(n) + &pb * below(n, p * p),
                (&pb + 1) * at(n),
            ),
            RecurrenceId::R3Shifted => (at(p * p * p * n) + &pb * below(n, p), (&pb + 1) * at(p * n)),
            RecurrenceId::R7Cooper => {
                let c = &p5 - BigInt::from(p * p) * legendre_neg(n, p) + 1;
                (at(p * p * n), c * at(n) - &p5 * below(n, p * p))
            }
            RecurrenceId::R7Shifted => (at(p * p * p * n), (&p5 + 1) * at(p * n) - &p5 * below(n, p)),
            _ => unreachable!(),
        };
        out.record(n, lhs == rhs, &lhs, &rhs);
    }
}

fn p3_recurrence(out: &mut CheckOutcome, id: RecurrenceId, p: u64, last: u64, p3: &super::P3Table) {
    let m = match id {
        RecurrenceId::P3Mod11Rel | RecurrenceId::P3Mod11Iterate => 11,
        _ => 7,
    };
    let at = |i: u64| p3.residue(i, m).expect("index within table");
    let below = |n: u64, d: u64| if n % d == 0 { at(n / d) } else { 0 };
    let red = |v: i64| reduce_signed(v, m);
    let pm = (p % m) as i64;
    let p5 = pow_mod(p % m, 5, m) as i64;
    match id {
        RecurrenceId::P3Mod7Rel => {
            for n in 0..=last {
                let lhs = red(at(7 * p * p * p * n) as i64 + pm * below(7 * n, p) as i64);
                let rhs = red((pm + 1) * at(7 * p * n) as i64);
                out.record(n, lhs == rhs, lhs, rhs);
            }
        }
        RecurrenceId::P3Mod7Square => {
            for n in 0..=last {
                let lhs = red(
                    at(7 * p * p * n) as i64 + legendre_neg(n, p) * at(7 * n) as i64 + pm * below(7 * n, p * p) as i64,
                );
                let rhs = red((pm + 1) * at(7 * n) as i64);
                out.record(n, lhs == rhs, lhs, rhs);
            }
        }
        RecurrenceId::P3Mod11Rel => {
            for n in 0..=last {
                let lhs = at(11 * p * p * p * n);
                let rhs = red((p5 + 1) * at(11 * p * n) as i64 - p5 * below(11 * n, p) as i64);
                out.record(n, lhs == rhs, lhs, rhs);
            }
        }
        RecurrenceId::P3Mod7Iterate | RecurrenceId::P3Mod11Iterate => {
            let (base, ratio) = if m == 7 { (7, p % m) } else { (11, p5 as u64) };
            for big_n in (1..=last).filter(|n| n % p != 0) {
                // coefficient 1 + ratio + ratio² + ... + ratio^k, grown with k
                let mut coeff = (1 + ratio) % m;
                let mut power = ratio;
                let mut exponent = 3;
                while let Some(lhs) = p
                    .checked_pow(exponent)
                    .and_then(|v| v.checked_mul(base * big_n))
                    .and_then(|idx| p3.residue(idx, m))
                {
                    let rhs = coeff * at(base * p * big_n) % m;
                    out.record(big_n, lhs == rhs, lhs, rhs);
                    power = power * ratio % m;
                    coeff = (coeff + power) % m;
                    exponent += 2;
                }
            }
        }
        _ => unreachable!(),
    }
}

/// Residue-class families whose iteration coefficient must vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterationFamily {
    /// `p ≡ 1 (mod 7)`, exponent `14α+13`, `k = 7α+6`.
    Mod7Part1,
    /// `p ≢ 0, 1 (mod 7)`, exponent `12α+11`, `k = 6α+5`.
    Mod7Part2,
    /// `p ≡ 1, 3, 4, 5, 9 (mod 11)`, exponent `22α+21`, `k = 11α+10`.
    Mod11Part2,
    /// `p ≡ 2, 6, 7, 8, 10 (mod 11)`, exponent `4α+3`, `k = 2α+1`.
    Mod11Part3,
}

impl IterationFamily {
    pub fn name(&self) -> &'static str {
        match self {
            IterationFamily::Mod7Part1 => "MOD7_14A13",
            IterationFamily::Mod7Part2 => "MOD7_12A11",
            IterationFamily::Mod11Part2 => "MOD11_22A21",
            IterationFamily::Mod11Part3 => "MOD11_4A3",
        }
    }

    pub fn modulus(&self) -> u64 {
        match self {
            IterationFamily::Mod7Part1 | IterationFamily::Mod7Part2 => 7,
            _ => 11,
        }
    }

    pub fn admits(&self, p: u64) -> bool {
        match self {
            IterationFamily::Mod7Part1 => p % 7 == 1,
            IterationFamily::Mod7Part2 => (2..=6).contains(&(p % 7)),
            IterationFamily::Mod11Part2 => [1, 3, 4, 5, 9].contains(&(p % 11)),
            IterationFamily::Mod11Part3 => [2, 6, 7, 8, 10].contains(&(p % 11)),
        }
    }

    /// Iteration depth `k` for `α`.
    pub fn depth(&self, alpha: u64) -> u64 {
        match self {
            IterationFamily::Mod7Part1 => 7 * alpha + 6,
            IterationFamily::Mod7Part2 => 6 * alpha + 5,
            IterationFamily::Mod11Part2 => 11 * alpha + 10,
            IterationFamily::Mod11Part3 => 2 * alpha + 1,
        }
    }

    /// `p(p^k-1)/(p-1) + 1` (mod 7 families) or `p⁵(p^{5k}-1)/(p⁵-1) + 1`
    /// (mod 11 families), exactly.
    pub fn coefficient(&self, p: u64, k: u64) -> BigInt {
        let ratio = match self.modulus() {
            7 => BigInt::from(p),
            _ => BigInt::from(p).pow(5),
        };
        let k = u32::try_from(k).expect("depth fits u32");
        let numerator = &ratio * (ratio.pow(k) - 1u32);
        let (q, r) = numerator.div_rem(&(&ratio - 1u32));
        debug_assert!(r.is_zero());
        q + BigInt::one()
    }
}

impl fmt::Display for IterationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The iteration coefficient of `family` at `p` vanishes modulo 7 or 11
/// for `α = 0..=alpha_max`.
pub fn verify_iteration_coefficient(
    family: IterationFamily,
    p: u64,
    alpha_max: u64,
) -> Result<CheckOutcome, SuiteError> {
    if p == 2 || !is_prime(p) {
        return Err(SuiteError::NotOddPrime(p));
    }
    if !family.admits(p) {
        return Err(SuiteError::WrongResidueClass { family, p });
    }
    let m = BigInt::from(family.modulus());
    let mut out = CheckOutcome::new();
    for alpha in 0..=alpha_max {
        let c = family.coefficient(p, family.depth(alpha)).mod_floor(&m);
        out.record(alpha, c.is_zero(), &c, 0);
    }
    out.raise_bound(alpha_max);
    Ok(out)
}

/// A set of indices at which `modulus | p̄₃(index)` is claimed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInstance {
    pub label: String,
    pub modulus: u64,
    pub indices: Vec<u64>,
}

/// Evaluate each instance; instances reaching past the table are skipped
/// as a whole and itemized.
pub fn verify_family_direct(ctx: &Context, instances: &[FamilyInstance]) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    for inst in instances {
        let top = inst.indices.iter().copied().max().unwrap_or(0);
        let Some(p3) = ctx.p3_for(inst.modulus).filter(|t| top <= t.trunc()) else {
            out.skip(format!("{}: needs p̄₃ to {top}, table order {}", inst.label, ctx.trunc()));
            continue;
        };
        for &i in &inst.indices {
            let r = p3.residue(i, inst.modulus).expect("index within table");
            out.record(i, r == 0, r, 0);
        }
        out.raise_bound(top);
        let count = inst.indices.len();
        let noun = if count == 1 { "index" } else { "indices" };
        out.note(format!("{}: {count} {noun}, largest {top}", inst.label));
    }
    out
}

/// Disjoint progression unions whose members satisfy a divisibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityFamily {
    /// `3^{2α+1}(3n+2)`, `α >= 1`; `144 | p̄₃`; density `1/72`.
    Dens144,
    /// `7^{2α+1}(7n+r)`, `α >= 1`, `r ∈ {3,5,6}`; `7 | p̄₃`; density `1/784`.
    Dens7,
    /// `11·7^{4α+3}(7n+r)`, `α >= 0`, `1 <= r <= 6`; `11 | p̄₃`; density `1/4400`.
    Dens11,
}

impl DensityFamily {
    pub fn modulus(&self) -> u64 {
        match self {
            DensityFamily::Dens144 => 144,
            DensityFamily::Dens7 => 7,
            DensityFamily::Dens11 => 11,
        }
    }

    pub fn density(&self) -> f64 {
        match self {
            DensityFamily::Dens144 => 1.0 / 72.0,
            DensityFamily::Dens7 => 1.0 / 784.0,
            DensityFamily::Dens11 => 1.0 / 4400.0,
        }
    }

    /// `(scale, step, residues)` of each progression with a member `<= n`.
    fn progressions(&self, n: u64) -> Vec<(u64, u64, Vec<u64>)> {
        let (first, ratio, step, rs): (u64, u64, u64, Vec<u64>) = match self {
            DensityFamily::Dens144 => (27, 9, 3, vec![2]),
            DensityFamily::Dens7 => (343, 49, 7, vec![3, 5, 6]),
            DensityFamily::Dens11 => (11 * 343, 2401, 7, (1..=6).collect()),
        };
        let mut out = Vec::new();
        let mut scale = first;
        while scale <= n {
            out.push((scale, step, rs.clone()));
            match scale.checked_mul(ratio) {
                Some(s) => scale = s,
                None => break,
            }
        }
        out
    }
}

/// Sorted members `<= n` of the union, and how many were generated more
/// than once.
pub fn density_members(family: DensityFamily, n: u64) -> (Vec<u64>, u64) {
    let mut seen = vec![false; n as usize + 1];
    let mut repeats = 0;
    for (scale, step, rs) in family.progressions(n) {
        for r in rs {
            let mut m = scale * r;
            while m <= n {
                if std::mem::replace(&mut seen[m as usize], true) {
                    repeats += 1;
                }
                m += scale * step;
            }
        }
    }
    let members = seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i as u64).collect();
    (members, repeats)
}

/// Members `<= n` must make up at least `density - 2/√n` of `1..=n`, the
/// progressions must be disjoint, and up to 200 members inside the table
/// must satisfy the divisibility.
pub fn density_count(ctx: &Context, family: DensityFamily, n: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    if n == 0 || n > DENSITY_LIMIT {
        out.skip(format!("{family:?}: N = {n} outside 1..={DENSITY_LIMIT}"));
        return out;
    }
    let (members, repeats) = density_members(family, n);
    let slack = 2.0 / (n as f64).sqrt();
    let needed = ((family.density() - slack) * n as f64).ceil().max(0.0) as u64;
    let count = members.len() as u64;
    out.record(n, count >= needed, count, format!(">= {needed}"));
    out.record(n, repeats == 0, format!("{repeats} repeated members"), "0 repeated members");
    out.note(format!("{count} members up to {n}: fraction {:.6e}, bound {:.6e}", count as f64 / n as f64, family.density()));
    out.raise_bound(n);

    let m = family.modulus();
    match ctx.p3_for(m) {
        Some(p3) => {
            let inside: Vec<u64> = members.iter().copied().take_while(|&x| x <= p3.trunc()).collect();
            let sample = spread(&inside, DENSITY_SAMPLES);
            for &x in &sample {
                let r = p3.residue(x, m).expect("inside table");
                out.record(x, r == 0, r, 0);
            }
            out.note(format!("divisibility by {m} spot-checked on {} of {} members inside the table", sample.len(), inside.len()));
        }
        None => out.note("divisibility spot-check skipped: table over budget"),
    }
    out
}
