//! The registered checks.
//!
//! Bounds scale with the table order `T` of the profile: progressions cover
//! every member inside the table, fixed-index instances carry the least
//! profile whose table reaches them.

use super::verifiers::*;
use super::{CheckKind, CheckOutcome, Context, Expectation, Profile, TheoremCheck};
use crate::counting::{self, TableKind};
use crate::ring_series::Ring;
use crate::theta_lab::IdentityId;

pub fn registry() -> &'static [TheoremCheck] {
    &REGISTRY
}

/// Order used for the theta identities.
fn identity_order(ctx: &Context) -> usize {
    match ctx.profile() {
        Profile::Quick => 500,
        Profile::Default => 2_000,
        Profile::Deep => 4_000,
    }
}

fn theta(ctx: &Context, ids: &[IdentityId]) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    for &id in ids {
        let one = verify_series_identity(ctx, SeriesIdentity::Theta(id), None, identity_order(ctx))
            .expect("registered identities are well-formed");
        if one.first_failure.is_some() && out.first_failure.is_none() {
            out.note(format!("first mismatch in {id}"));
        }
        out.absorb(one);
    }
    out
}

fn congruence(ctx: &Context, c: CongruenceIdentity, trunc: usize) -> CheckOutcome {
    verify_series_identity(ctx, SeriesIdentity::Congruence(c), None, trunc).expect("stated modulus")
}

fn recurrence(ctx: &Context, id: RecurrenceId, primes: &[u64], n_max: Option<u64>) -> CheckOutcome {
    verify_recurrence(ctx, id, primes, n_max).expect("registered primes are odd primes")
}

fn iteration(family: IterationFamily, primes: &[u64], alpha_max: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    for &p in primes {
        out.absorb(verify_iteration_coefficient(family, p, alpha_max).expect("prime in the family's class"));
    }
    out.note(format!("{family}: p in {primes:?}, alpha <= {alpha_max}"));
    out
}

fn progressions(ctx: &Context, items: &[(Progression, u64)]) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    for &(prog, m) in items {
        out.absorb(verify_progression(ctx, prog, m, None));
    }
    out
}

/// Expected-failure wrapper: `inner` must first fail at `n` with residue
/// `residue`.
fn tight(inner: CheckOutcome, n: u64, residue: u64) -> CheckOutcome {
    let confirmed = inner.first_failure.as_ref().is_some_and(|c| c.n == n && c.observed == residue.to_string());
    CheckOutcome { witness_confirmed: Some(confirmed), ..inner }
}

/// `instance` if the profile promises it; otherwise a note on `out`.
fn gated(ctx: &Context, out: &mut CheckOutcome, min: Profile, instance: FamilyInstance) -> Option<FamilyInstance> {
    if ctx.profile() < min {
        out.note(format!("{} deferred to the {min} profile", instance.label));
        None
    } else {
        Some(instance)
    }
}

/// `base · p^e · N` for `1 <= N <= n_max`, `p ∤ N`.
fn prime_power_instance(label: &str, modulus: u64, base: u64, p: u64, e: u32, n_max: u64) -> FamilyInstance {
    FamilyInstance {
        label: label.to_string(),
        modulus,
        indices: (1..=n_max).filter(|n| n % p != 0).map(|n| base * p.pow(e) * n).collect(),
    }
}

/// Progressions `scale_α · (a n + b)` for each scale inside the table.
fn scaled_progressions(ctx: &Context, scales: impl Iterator<Item = u64>, a: u64, rs: &[u64], m: u64) -> CheckOutcome {
    let t = ctx.trunc() as u64;
    let items: Vec<(Progression, u64)> = scales
        .take_while(|&s| s * rs.iter().min().copied().unwrap_or(0) <= t)
        .flat_map(|s| rs.iter().map(move |&r| (Progression::scaled(s, a, r), m)))
        .filter(|(p, _)| p.index(0) <= t)
        .collect();
    progressions(ctx, &items)
}

fn t1_gf(ctx: &Context) -> CheckOutcome {
    verify_pointwise(ctx, Relation::GeneratingFunction, 400)
}

fn t1_1(ctx: &Context) -> CheckOutcome {
    let n = (ctx.trunc() as u64).min(5_000);
    let mut out = CheckOutcome::new();
    for k in [1, 2, 3, 4, 6, 12] {
        let part = verify_pointwise(ctx, Relation::KeisterSellers { k }, n);
        match &part.first_failure {
            Some(c) => out.note(format!("k={k}: first mismatch at n={}", c.n)),
            None if part.checked > 0 => out.note(format!("k={k}: agrees for 1 <= n <= {n}")),
            None => {}
        }
        out.absorb(part);
    }
    out
}

fn t2_1(ctx: &Context) -> CheckOutcome {
    let n = (ctx.trunc() as u64).min(10_000);
    let mut out = CheckOutcome::new();
    for k in 1..=8 {
        out.absorb(verify_pointwise(ctx, Relation::Mod2m { k }, n));
    }
    out
}

fn t2_2(ctx: &Context) -> CheckOutcome {
    verify_pointwise(ctx, Relation::TwoSquare, 2_000)
}

fn t2_3(ctx: &Context) -> CheckOutcome {
    let n = (ctx.trunc() as u64).min(10_000);
    let mut out = CheckOutcome::new();
    for k in [3u32, 7, 11] {
        let t = counting::cached_table(TableKind::Overpartition, k, Ring::Modular(16), n as usize).expect("unit");
        let res = t.residues().expect("modular");
        let divisible = (1..=n).filter(|&i| res[i as usize] == 0).count() as u64;
        out.checked += n;
        out.note(format!("k = {k}: 16 | p̄_k(n) for {divisible} of n in 1..={n} ({:.4})", divisible as f64 / n as f64));
    }
    let exceptional = (1..=n).filter(|&i| counting::is_square(i) || counting::is_twice_square(i)).count();
    out.note(format!("squares and twice-squares up to {n}: {exceptional} (2√N = {:.1})", 2.0 * (n as f64).sqrt()));
    out.raise_bound(n);
    out
}

const EIGHT_N_MODULI: [(u64, u64); 6] = [(1, 2), (2, 8), (3, 16), (4, 2), (5, 16), (6, 16)];

fn t2_4(ctx: &Context) -> CheckOutcome {
    let items: Vec<_> = EIGHT_N_MODULI.iter().map(|&(r, m)| (Progression::new(8, r), m)).collect();
    progressions(ctx, &items)
}

fn tight_2_4(ctx: &Context) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    for &(r, m) in &EIGHT_N_MODULI {
        // witness p̄₃(r) carries exactly the stated power of two
        out.absorb(tight(verify_progression(ctx, Progression::new(8, r), 2 * m, None), 0, m));
    }
    out
}

fn t2_5(ctx: &Context) -> CheckOutcome {
    theta(ctx, &[IdentityId::Phi4Dissect, IdentityId::PhiSq4Dissect, IdentityId::PhiPhiNeg, IdentityId::PsiSq])
}

fn t2_6(ctx: &Context) -> CheckOutcome {
    theta(ctx, &[IdentityId::Phi4Diff])
}

fn t2_7(ctx: &Context) -> CheckOutcome {
    theta(ctx, &[IdentityId::InvPhiNeg4])
}

fn t2_8(ctx: &Context) -> CheckOutcome {
    verify_progression(ctx, Progression::new(16, 14), 32, None)
}

fn t2_9(ctx: &Context) -> CheckOutcome {
    verify_progression(ctx, Progression::new(8, 7), 64, None)
}

fn tight_2_8(ctx: &Context) -> CheckOutcome {
    tight(verify_progression(ctx, Progression::new(16, 14), 64, None), 0, 32)
}

fn tight_2_9(ctx: &Context) -> CheckOutcome {
    tight(verify_progression(ctx, Progression::new(8, 7), 128, None), 0, 64)
}

fn eq_r2n(ctx: &Context) -> CheckOutcome {
    verify_pointwise(ctx, Relation::R2Mod8, (ctx.trunc() as u64).min(10_000))
}

fn t3_1(ctx: &Context) -> CheckOutcome {
    theta(ctx, &[IdentityId::Phi9Dissect, IdentityId::Phi3CubeId])
}

fn t3_2(ctx: &Context) -> CheckOutcome {
    theta(ctx, &[IdentityId::InvPhi9])
}

fn t3_3(ctx: &Context) -> CheckOutcome {
    let ids: Vec<IdentityId> = IdentityId::FROBENIUS_PRIMES
        .iter()
        .flat_map(|&p| [IdentityId::EulerPochhammer(p), IdentityId::PhiFrobenius(p)])
        .collect();
    theta(ctx, &ids)
}

fn eq_stone(ctx: &Context) -> CheckOutcome {
    theta(ctx, &[IdentityId::Stone])
}

fn eq_sttwo(ctx: &Context) -> CheckOutcome {
    theta(ctx, &[IdentityId::Sttwo])
}

fn t3_4(ctx: &Context) -> CheckOutcome {
    let cap = match ctx.profile() {
        Profile::Quick => 1_500,
        Profile::Default => 10_000,
        Profile::Deep => 30_000,
    };
    let trunc = cap.min(ctx.trunc().saturating_sub(2) / 3);
    let mut out = CheckOutcome::new();
    for r in 0..3 {
        out.absorb(congruence(ctx, CongruenceIdentity::ThreeDissection(r), trunc));
    }
    out
}

fn t3_5(ctx: &Context) -> CheckOutcome {
    progressions(ctx, &[(Progression::new(3, 1), 6), (Progression::new(3, 2), 24)])
}

fn t3_6(ctx: &Context) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    for alpha in 1.. {
        let odd = 3 * 9usize.pow(alpha);
        let trunc = (ctx.trunc() / odd).min(1_500);
        if trunc < 10 {
            break;
        }
        out.absorb(congruence(ctx, CongruenceIdentity::NineEven { alpha }, trunc));
        out.absorb(congruence(ctx, CongruenceIdentity::NineOdd { alpha }, trunc));
        out.note(format!("alpha = {alpha}: order {trunc}"));
    }
    out
}

fn t3_7(ctx: &Context) -> CheckOutcome {
    scaled_progressions(ctx, (1..).map(|a| 3u64.pow(2 * a + 1)), 3, &[2], 144)
}

fn t3_8(ctx: &Context) -> CheckOutcome {
    density_count(ctx, DensityFamily::Dens144, 1_000_000)
}

fn t4_1(ctx: &Context) -> CheckOutcome {
    verify_pointwise(ctx, Relation::SevenThreeSquares, ctx.trunc() as u64 / 7)
}

fn t4_2(ctx: &Context) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    for p in [3, 5, 7, 11] {
        out.absorb(verify_pointwise(ctx, Relation::R48 { p }, 1_000));
    }
    out
}

fn eq_mod7eq(ctx: &Context) -> CheckOutcome {
    congruence(ctx, CongruenceIdentity::SevenDissection, ctx.trunc() / 7)
}

fn t4_3(ctx: &Context) -> CheckOutcome {
    let t = ctx.trunc() as u64;
    let mut out = CheckOutcome::new();
    let mut relation = CheckOutcome::new();
    for alpha in (0..).take_while(|&a| 7 * 4u64.pow(a + 1) <= t) {
        relation.absorb(verify_pointwise(ctx, Relation::FourPower { alpha }, t / (7 * 4u64.pow(alpha + 1))));
    }
    out.absorb_leg("relation", relation);
    out.absorb_leg("direct", scaled_progressions(ctx, (0..).map(|a| 4u64.pow(a)), 56, &[49], 7));
    out
}

fn t4_4(ctx: &Context) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    let mut direct = Vec::new();
    direct.extend(gated(ctx, &mut out, Profile::Default, prime_power_instance("7·13³·N, p ≡ 6 (mod 7)", 7, 7, 13, 3, 6)));
    direct.extend(gated(ctx, &mut out, Profile::Deep, prime_power_instance("7·3¹¹·N, p ≢ 0, 1 (mod 7)", 7, 7, 3, 11, 1)));
    out.absorb_leg("direct", verify_family_direct(ctx, &direct));
    out.absorb_leg("recurrence", recurrence(ctx, RecurrenceId::P3Mod7Rel, &[3, 5, 13], None));
    let mut coefficients = iteration(IterationFamily::Mod7Part1, &[29, 43], 5);
    coefficients.absorb(iteration(IterationFamily::Mod7Part2, &[3, 5, 11, 13, 23], 5));
    out.absorb_leg("iteration-coefficient", coefficients);
    out
}

fn t4_5(ctx: &Context) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    out.absorb_leg("relation", verify_pointwise(ctx, Relation::SevenPowers, ctx.trunc() as u64 / 2401));
    out.absorb_leg("direct", scaled_progressions(ctx, (1..).map(|a| 7u64.pow(2 * a + 1)), 7, &[3, 5, 6], 7));
    out.absorb_leg("recurrence", recurrence(ctx, RecurrenceId::P3Mod7Square, &[7], None));
    out
}

fn t4_6(ctx: &Context) -> CheckOutcome {
    density_count(ctx, DensityFamily::Dens7, 10_000_000)
}

fn t4_7(ctx: &Context) -> CheckOutcome {
    verify_pointwise(ctx, Relation::ElevenSevenSquares, ctx.trunc() as u64 / 11)
}

fn t4_8(ctx: &Context) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    out.absorb_leg("relation", verify_pointwise(ctx, Relation::ElevenCube, ctx.trunc() as u64 / 1331));
    let mut direct = vec![prime_power_instance(
        "11·7³·N, p ≡ 7 (mod 11)",
        11,
        11,
        7,
        3,
        ctx.trunc() as u64 / (11 * 343),
    )];
    direct.extend(gated(ctx, &mut out, Profile::Default, prime_power_instance("11·13³·N, p ≡ 2 (mod 11)", 11, 11, 13, 3, 4)));
    out.absorb_leg("direct", verify_family_direct(ctx, &direct));
    out.absorb_leg("recurrence", recurrence(ctx, RecurrenceId::P3Mod11Rel, &[3, 5, 7, 13], None));
    let mut coefficients = iteration(IterationFamily::Mod11Part2, &[3, 5, 23], 5);
    coefficients.absorb(iteration(IterationFamily::Mod11Part3, &[7, 13, 17, 19, 43], 5));
    out.absorb_leg("iteration-coefficient", coefficients);
    out
}

fn t4_9(ctx: &Context) -> CheckOutcome {
    density_count(ctx, DensityFamily::Dens11, 10_000_000)
}

fn eq_r3start(ctx: &Context) -> CheckOutcome {
    let primes = [3, 5, 7, 11, 13];
    let mut out = recurrence(ctx, RecurrenceId::R3Hurwitz, &primes, Some(500));
    out.absorb(recurrence(ctx, RecurrenceId::R3Shifted, &primes, Some(40)));
    out
}

fn eq_r3relation(ctx: &Context) -> CheckOutcome {
    recurrence(ctx, RecurrenceId::P3Mod7Rel, &[3, 5, 7, 11, 13], None)
}

fn eq_iterate(ctx: &Context) -> CheckOutcome {
    recurrence(ctx, RecurrenceId::P3Mod7Iterate, &[3, 5, 13], None)
}

fn eq_r7start(ctx: &Context) -> CheckOutcome {
    let primes = [3, 5, 7];
    let mut out = recurrence(ctx, RecurrenceId::R7Cooper, &primes, Some(200));
    out.absorb(recurrence(ctx, RecurrenceId::R7Shifted, &primes, Some(100)));
    out
}

fn eq_r7re(ctx: &Context) -> CheckOutcome {
    recurrence(ctx, RecurrenceId::P3Mod11Rel, &[3, 5, 7, 13], None)
}

fn eq_iterate11(ctx: &Context) -> CheckOutcome {
    recurrence(ctx, RecurrenceId::P3Mod11Iterate, &[3, 5, 7], None)
}

macro_rules! check {
    ($id:expr, $kind:ident, $expect:ident, $statement:expr, $bounds:expr, $run:expr) => {
        TheoremCheck {
            id: $id,
            kind: CheckKind::$kind,
            expectation: Expectation::$expect,
            statement: $statement,
            bounds: $bounds,
            run: $run,
        }
    };
}

static REGISTRY: [TheoremCheck; 41] = [
    check!("EQ.iterate", Recurrence, Holds,
        "p̄₃(7p^(2k+1)N) ≡ (p(p^k-1)/(p-1)+1)·p̄₃(7pN) (mod 7), p ∤ N",
        "p ∈ {3,5,13}; every k ≥ 1 and N with 7p³N ≤ T", eq_iterate),
    check!("EQ.iterate11", Recurrence, Holds,
        "p̄₃(11p^(2k+1)N) ≡ (p⁵(p^(5k)-1)/(p⁵-1)+1)·p̄₃(11pN) (mod 11), p ∤ N",
        "p ∈ {3,5,7}; every k ≥ 1 and N with 11p³N ≤ T", eq_iterate11),
    check!("EQ.mod7eq", SeriesIdentity, Holds,
        "Σ p̄₃(7n)(-q)^n ≡ φ(q)³ (mod 7)",
        "order T/7", eq_mod7eq),
    check!("EQ.r2n", PointwiseRelation, Holds,
        "r₂(n) ≡ 4 if n is a square or twice a square, else 0 (mod 8)",
        "1 ≤ n ≤ min(T, 10⁴)", eq_r2n),
    check!("EQ.r3relation", Recurrence, Holds,
        "p̄₃(7p³n) + p·p̄₃(7n/p) ≡ (p+1)·p̄₃(7pn) (mod 7)",
        "p ∈ {3,5,7,11,13}; every n with 7p³n ≤ T", eq_r3relation),
    check!("EQ.r3start", Recurrence, Holds,
        "r₃(p²n) + (-n/p)·r₃(n) + p·r₃(n/p²) = (p+1)·r₃(n)",
        "exact; p ∈ {3,5,7,11,13}; n ≤ 500, shifted form n ≤ 40", eq_r3start),
    check!("EQ.r7re", Recurrence, Holds,
        "p̄₃(11p³n) ≡ (p⁵+1)·p̄₃(11pn) - p⁵·p̄₃(11n/p) (mod 11)",
        "p ∈ {3,5,7,13}; every n with 11p³n ≤ T", eq_r7re),
    check!("EQ.r7start", Recurrence, Holds,
        "r₇(p²n) = (p⁵ - p²(-n/p) + 1)·r₇(n) - p⁵·r₇(n/p²)",
        "exact; p ∈ {3,5,7}; n ≤ 200, shifted form n ≤ 100", eq_r7start),
    check!("EQ.stone", SeriesIdentity, Holds,
        "s³ + q³t³ = φ(q³)⁴/φ(q⁹), s = φ(q⁹), t = 2B(-q³)",
        "exact; order 500 / 2000 / 4000", eq_stone),
    check!("EQ.sttwo", SeriesIdentity, Holds,
        "1/φ(q) = φ(q⁹)/φ(q³)⁴·(s² - qst + q²t²)",
        "exact; order 500 / 2000 / 4000", eq_sttwo),
    check!("T1.1", PointwiseRelation, Holds,
        "k = 2^m·r, r odd: p̄_k(n) ≡ 2^(m+1) if n is a square or twice a square, else 0 (mod 2^(m+2))",
        "k ∈ {1,2,3,4,6,12}; 1 ≤ n ≤ min(T, 5000)", t1_1),
    check!("T1.GF", PointwiseRelation, Holds,
        "Σ p̄_k(n)q^n = ((-q;q)_∞/(q;q)_∞)^k = 1/φ(-q)^k",
        "exact; k ∈ {1,2,3}; n ≤ 400", t1_gf),
    check!("T2.1", PointwiseRelation, Holds,
        "p̄_k(n) ≡ -2k / 2k / 2k(k+1) / 0 for even squares / odd squares / twice squares / other n (mod 2^m(k))",
        "k ∈ 1..=8; 1 ≤ n ≤ min(T, 10⁴)", t2_1),
    check!("T2.2", PointwiseRelation, Holds,
        "r₂⁺(n) = r₂(n)/4 - χ(n), n ≥ 1",
        "1 ≤ n ≤ 2000, r₂ also by divisor sum", t2_2),
    check!("T2.3", Frequency, Holds,
        "k ≡ 3 (mod 4): 16 | p̄_k(n) for almost all n",
        "k ∈ {3,7,11}; n ≤ min(T, 10⁴); informational", t2_3),
    check!("T2.4", ProgressionDivisibility, Holds,
        "p̄₃(8n+r) ≡ 0 (mod 2, 8, 16, 2, 16, 16) for r = 1..6",
        "every member ≤ T", t2_4),
    check!("T2.5", SeriesIdentity, Holds,
        "φ(q) = φ(q⁴) + 2qψ(q⁸); φ(q)² = φ(q²)² + 4qψ(q⁴)²; φ(q)φ(-q) = φ(-q²)²; ψ(q)² = φ(q)ψ(q²)",
        "exact; order 500 / 2000 / 4000", t2_5),
    check!("T2.6", SeriesIdentity, Holds,
        "φ(q)⁴ - φ(-q)⁴ = 16qψ(q²)⁴",
        "exact; order 500 / 2000 / 4000", t2_6),
    check!("T2.7", SeriesIdentity, Holds,
        "1/φ(-q) = (a³ + 2qa²b + 4q²ab² + 8q³b³)/φ(-q⁴)⁴, a = φ(q⁴), b = ψ(q⁸)",
        "exact; order 500 / 2000 / 4000", t2_7),
    check!("T2.8", ProgressionDivisibility, Holds,
        "p̄₃(16n+14) ≡ 0 (mod 32)",
        "every member ≤ T", t2_8),
    check!("T2.9", ProgressionDivisibility, Holds,
        "p̄₃(8n+7) ≡ 0 (mod 64)",
        "every member ≤ T", t2_9),
    check!("T3.1", SeriesIdentity, Holds,
        "φ(q) = φ(q⁹) + 2qB(-q³); φ(q³)³ + 8qB(-q)³ = φ(q)⁴/φ(q³)",
        "exact; order 500 / 2000 / 4000", t3_1),
    check!("T3.2", SeriesIdentity, Holds,
        "1/φ(q) = φ(q⁹)/φ(q³)⁴·(φ(q⁹)² - 2qφ(q⁹)B(-q³) + 4q²B(-q³)²)",
        "exact; order 500 / 2000 / 4000", t3_2),
    check!("T3.3", SeriesIdentity, Holds,
        "(q;q)_∞^p ≡ (q^p;q^p)_∞ and φ(q)^p ≡ φ(q^p) (mod p)",
        "p ∈ {3,5,7,11,13}; order 500 / 2000 / 4000", t3_3),
    check!("T3.4", SeriesIdentity, Holds,
        "Σ p̄₃(3n+r)(-q)^n ≡ φ(q³)/φ(q)⁴ (mod 72), 6φ(q³)⁴B(-q)/φ(q)⁸ (mod 144), 24φ(q³)³B(-q)²/φ(q)⁸ (mod 288)",
        "order min((T-2)/3, 1500 / 10⁴ / 3·10⁴)", t3_4),
    check!("T3.5", ProgressionDivisibility, Holds,
        "p̄₃(3n+1) ≡ 0 (mod 6), p̄₃(3n+2) ≡ 0 (mod 24)",
        "every member ≤ T", t3_5),
    check!("T3.6", SeriesIdentity, Holds,
        "Σ p̄₃(3^(2α)n)(-q)^n ≡ φ(q³)⁴/φ(q)⁷, Σ p̄₃(3^(2α+1)n)(-q)^n ≡ φ(q³)⁵/φ(q)⁸ (mod 72), α ≥ 1",
        "each α with at least 10 coefficients below T; order ≤ 1500", t3_6),
    check!("T3.7", ProgressionDivisibility, Holds,
        "p̄₃(3^(2α+1)(3n+2)) ≡ 0 (mod 144), α ≥ 1",
        "every α and member ≤ T", t3_7),
    check!("T3.8", DensityCount, Holds,
        "144 | p̄₃(n) on a set of density at least 1/72",
        "N = 10⁶, slack 2/√N; 200 members spot-checked", t3_8),
    check!("T4.1", PointwiseRelation, Holds,
        "p̄₃(7n) ≡ (-1)^n r₃(n) (mod 7), n ≥ 1",
        "1 ≤ n ≤ T/7", t4_1),
    check!("T4.2", PointwiseRelation, Holds,
        "r₄(pn) ≡ r₄(n), r₈(pn) ≡ r₈(n) (mod p), p ≥ 3 prime",
        "p ∈ {3,5,7,11}; n ≤ 1000", t4_2),
    check!("T4.3", Family, Holds,
        "p̄₃(7·4^(α+1)n) ≡ (-1)^n p̄₃(7n) and p̄₃(4^α(56n+49)) ≡ 0 (mod 7)",
        "every α and n inside T", t4_3),
    check!("T4.4", Family, Holds,
        "p ∤ N: p̄₃(7p^(14α+13)N) ≡ 0 if p ≡ 1; p̄₃(7p^(12α+11)N) ≡ 0 if p ≢ 0, 1; p̄₃(7p³N) ≡ 0 if p ≡ 6 (mod 7)",
        "direct: p = 13 (default), p = 3 at 7·3¹¹ (deep); recurrence inside T; coefficients α ≤ 5", t4_4),
    check!("T4.5", Family, Holds,
        "p̄₃(7⁴n) ≡ p̄₃(7²n) and p̄₃(7^(2α+1)(7n+r)) ≡ 0 (mod 7), r ∈ {3,5,6}, α ≥ 1",
        "every α and n inside T", t4_5),
    check!("T4.6", DensityCount, Holds,
        "7 | p̄₃(n) on a set of density at least 1/784",
        "N = 10⁷, slack 2/√N; 200 members spot-checked", t4_6),
    check!("T4.7", PointwiseRelation, Holds,
        "p̄₃(11n) ≡ (-1)^n r₇(n) (mod 11), n ≥ 0",
        "0 ≤ n ≤ T/11", t4_7),
    check!("T4.8", Family, Holds,
        "p̄₃(11³n) ≡ p̄₃(11n); p ∤ N: p̄₃(11p^(22α+21)N) ≡ 0 if p ≡ 1,3,4,5,9; p̄₃(11p^(4α+3)N) ≡ 0 if p ≡ 2,6,7,8,10 (mod 11)",
        "direct: p = 7 inside T, p = 13 (default); recurrence inside T; coefficients α ≤ 5", t4_8),
    check!("T4.9", DensityCount, Holds,
        "11 | p̄₃(n) on a set of density at least 1/4400",
        "N = 10⁷, slack 2/√N; 200 members spot-checked", t4_9),
    check!("TIGHT.2.4", Tightness, FailsAtWitness,
        "p̄₃(r) for r = 1..6 is not divisible by twice the stated modulus",
        "n = 0 witnesses, residues 2, 8, 16, 2, 16, 16", tight_2_4),
    check!("TIGHT.2.8", Tightness, FailsAtWitness,
        "p̄₃(16n+14) ≡ 0 (mod 64) fails: p̄₃(14) = 2⁵·3·5573",
        "n = 0 witness, residue 32", tight_2_8),
    check!("TIGHT.2.9", Tightness, FailsAtWitness,
        "p̄₃(8n+7) ≡ 0 (mod 128) fails: p̄₃(7) = 2⁶·3·19",
        "n = 0 witness, residue 64", tight_2_9),
];
