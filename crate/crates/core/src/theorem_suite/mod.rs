//! Registry of declarative checks and the machinery that runs them.
//!
//! Every check reads from one shared `p̄₃` table held modulo
//! [`CANONICAL_MODULUS`], which every modulus used by the checks divides.
//! Checks run concurrently; reports come back sorted by id.

mod registry;
mod verifiers;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::{self, TableKind};
use crate::ring_series::{Ring, Series};
use crate::theta_lab::ThetaError;

pub use registry::registry;
pub use verifiers::{
    density_count, density_members, verify_family_direct, verify_iteration_coefficient, verify_pointwise,
    verify_progression, verify_recurrence, verify_series_identity, CongruenceIdentity, DensityFamily,
    FamilyInstance, IterationFamily, Progression, RecurrenceId, Relation, SeriesIdentity,
};

/// `2^7 · 3^2 · 7 · 11`: every modulus a check reduces `p̄₃` by divides it.
pub const CANONICAL_MODULUS: u64 = 88_704;
/// Largest table order a context will build.
pub const TRUNC_LIMIT: usize = 2_000_000;
/// Largest order of the exact `r_k` tables used by the exact recurrences.
pub const EXACT_SQUARES_LIMIT: usize = 200_000;
/// Largest index handed to the brute-force oracle for cross-checks.
pub const ORACLE_CROSSCHECK_LIMIT: u64 = 400;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown profile {0:?} (expected quick, default or deep)")]
    UnknownProfile(String),
    #[error("no registered check matches {0:?}")]
    NoMatch(String),
    #[error("invalid filter pattern {0:?}")]
    BadFilter(String),
    #[error("{p} is not in the residue class required by {family}")]
    WrongResidueClass { family: IterationFamily, p: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {given} does not divide the stated modulus {stated}")]
    ModulusMismatch { given: u64, stated: u64 },
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Default,
    Deep,
}

impl Profile {
    /// Order of the shared `p̄₃` table.
    pub fn trunc(self) -> usize {
        match self {
            Profile::Quick => 5_000,
            Profile::Default => 100_000,
            Profile::Deep => 1_300_000,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Default => "default",
            Profile::Deep => "deep",
        }
    }
}

impl FromStr for Profile {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Profile::Quick),
            "default" => Ok(Profile::Default),
            "deep" => Ok(Profile::Deep),
            other => Err(SuiteError::UnknownProfile(other.to_string())),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckKind {
    ProgressionDivisibility,
    PointwiseRelation,
    SeriesIdentity,
    Recurrence,
    IterationCoefficient,
    DensityCount,
    Tightness,
    /// A statement quantified over all primes or all `α`, checked through
    /// direct instances, the generating recurrence and the iteration
    /// coefficient.
    Family,
    /// An empirical frequency, reported but never judged.
    Frequency,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("{self:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expectation {
    Holds,
    FailsAtWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-budget")]
    SkippedBudget,
    #[serde(rename = "informational")]
    Informational,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBudget => "skipped-budget",
            Status::Informational => "informational",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// First index where a check disagreed. Values are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u64,
    pub observed: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub status: Status,
    pub checked_count: u64,
    pub bound: u64,
    pub first_counterexample: Option<Counterexample>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub legs: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Accumulated result of one or more verifier calls.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub checked: u64,
    pub bound: u64,
    pub first_failure: Option<Counterexample>,
    pub skipped: Vec<String>,
    pub legs: Vec<String>,
    pub notes: Vec<String>,
    /// Set for expected-failure checks: whether the inner check failed at
    /// the documented witness.
    pub witness_confirmed: Option<bool>,
}

impl CheckOutcome {
    pub fn new() -> Self {
        Self::default()
    }

    /// Count one comparison; the first failing one is kept.
    pub fn record(&mut self, n: u64, ok: bool, observed: impl fmt::Display, expected: impl fmt::Display) {
        self.checked += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(Counterexample { n, observed: observed.to_string(), expected: expected.to_string() });
        }
    }

    pub fn skip(&mut self, what: impl Into<String>) {
        self.skipped.push(what.into());
    }

    pub fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    pub fn raise_bound(&mut self, bound: u64) {
        self.bound = self.bound.max(bound);
    }

    /// Fold `other` into `self`; failures already recorded in `self` win.
    pub fn absorb(&mut self, other: CheckOutcome) {
        self.checked += other.checked;
        self.bound = self.bound.max(other.bound);
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self.witness_confirmed = match (self.witness_confirmed, other.witness_confirmed) {
            (Some(a), Some(b)) => Some(a && b),
            (a, b) => a.or(b),
        };
        self.skipped.extend(other.skipped);
        self.notes.extend(other.notes);
        for leg in other.legs {
            if !self.legs.contains(&leg) {
                self.legs.push(leg);
            }
        }
    }

    /// Fold `other` in as the named leg of a family check.
    pub fn absorb_leg(&mut self, leg: &str, other: CheckOutcome) {
        let ran = other.checked > 0;
        self.absorb(other);
        if ran && !self.legs.iter().any(|l| l == leg) {
            self.legs.push(leg.to_string());
        }
    }

    pub fn status(&self) -> Status {
        match self.witness_confirmed {
            Some(true) => return Status::Pass,
            Some(false) if self.skipped.is_empty() => return Status::Fail,
            Some(false) => return Status::SkippedBudget,
            None => {}
        }
        if self.first_failure.is_some() {
            Status::Fail
        } else if !self.skipped.is_empty() || self.checked == 0 {
            Status::SkippedBudget
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }
}

/// Inputs shared by all checks of one run.
pub struct Context {
    profile: Profile,
    trunc: usize,
    oracle: OnceLock<Vec<BigInt>>,
}

impl Context {
    pub fn new(profile: Profile) -> Self {
        Self::with_trunc(profile, profile.trunc())
    }

    /// A context whose `p̄₃` table has order `trunc` instead of the
    /// profile's.
    pub fn with_trunc(profile: Profile, trunc: usize) -> Self {
        Context { profile, trunc, oracle: OnceLock::new() }
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn within_budget(&self) -> bool {
        self.trunc <= TRUNC_LIMIT
    }

    /// The shared `p̄₃` table, or `None` when its order exceeds the budget.
    pub fn p3(&self) -> Option<P3Table> {
        if !self.within_budget() {
            return None;
        }
        Some(self.p3_table(CANONICAL_MODULUS))
    }

    /// `p̄₃` modulo a multiple of `m`: the shared table when `m` divides
    /// [`CANONICAL_MODULUS`], a dedicated one otherwise.
    pub fn p3_for(&self, m: u64) -> Option<P3Table> {
        if !self.within_budget() {
            return None;
        }
        Some(self.p3_table(if CANONICAL_MODULUS % m == 0 { CANONICAL_MODULUS } else { m }))
    }

    fn p3_table(&self, modulus: u64) -> P3Table {
        let series = counting::cached_table(TableKind::Overpartition, 3, Ring::Modular(modulus), self.trunc)
            .expect("φ(-q)³ has unit constant term");
        P3Table { series, modulus }
    }

    /// `p̄₃(0..=400)` from the product oracle.
    pub fn oracle(&self) -> &[BigInt] {
        self.oracle.get_or_init(|| {
            counting::overpartition_oracle_table(3, ORACLE_CROSSCHECK_LIMIT as usize).expect("within oracle budget")
        })
    }
}

/// Read-only view of a modular `p̄₃` table.
#[derive(Clone)]
pub struct P3Table {
    series: Arc<Series>,
    modulus: u64,
}

impl P3Table {
    pub fn trunc(&self) -> u64 {
        self.series.trunc() as u64
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `p̄₃(n) mod m`, or `None` beyond the table. `m` must divide the table
    /// modulus.
    pub fn residue(&self, n: u64, m: u64) -> Option<u64> {
        assert_eq!(self.modulus % m, 0, "modulus {m} does not divide the table modulus {}", self.modulus);
        let res = self.series.residues().expect("modular table");
        res.get(usize::try_from(n).ok()?).map(|r| r % m)
    }

    pub fn series(&self) -> &Series {
        &self.series
    }
}

/// One registered claim.
pub struct TheoremCheck {
    pub id: &'static str,
    pub kind: CheckKind,
    pub expectation: Expectation,
    /// The claim, stated as a formula.
    pub statement: &'static str,
    /// How the bounds scale with the profile.
    pub bounds: &'static str,
    pub(crate) run: fn(&Context) -> CheckOutcome,
}

impl TheoremCheck {
    pub fn run(&self, ctx: &Context) -> VerificationReport {
        let start = Instant::now();
        let outcome = (self.run)(ctx);
        let status = match self.kind {
            CheckKind::Frequency if outcome.status() != Status::SkippedBudget => Status::Informational,
            _ => outcome.status(),
        };
        VerificationReport {
            id: self.id.to_string(),
            status,
            checked_count: outcome.checked,
            bound: outcome.bound,
            first_counterexample: outcome.first_failure,
            elapsed_ms: start.elapsed().as_millis() as u64,
            legs: outcome.legs,
            notes: outcome.notes.into_iter().chain(outcome.skipped.into_iter().map(|s| format!("skipped: {s}"))).collect(),
        }
    }
}

impl fmt::Debug for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoremCheck").field("id", &self.id).field("kind", &self.kind).finish()
    }
}

/// Registered checks whose id matches the glob `filter`, in id order.
pub fn select(filter: &str) -> Result<Vec<&'static TheoremCheck>, SuiteError> {
    let pattern = glob::Pattern::new(filter).map_err(|_| SuiteError::BadFilter(filter.to_string()))?;
    let found: Vec<_> = registry().iter().filter(|c| pattern.matches(c.id)).collect();
    if found.is_empty() {
        return Err(SuiteError::NoMatch(filter.to_string()));
    }
    Ok(found)
}

/// Run every check matching `filter` under `profile`.
pub fn run_registry(filter: &str, profile: Profile) -> Result<Vec<VerificationReport>, SuiteError> {
    let ctx = Context::new(profile);
    run_checks(&select(filter)?, &ctx)
}

/// Run `checks` concurrently against `ctx`; reports are sorted by id.
pub fn run_checks(checks: &[&TheoremCheck], ctx: &Context) -> Result<Vec<VerificationReport>, SuiteError> {
    if ctx.within_budget() {
        // Build the shared table once up front so checks do not queue on it.
        let _ = ctx.p3();
    }
    let mut reports: Vec<VerificationReport> = checks.par_iter().map(|c| c.run(ctx)).collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}
