//! Truncated q-series arithmetic and mechanical verification of congruences
//! for overpartition k-tuples.
//!
//! * [`ring_series`]: dense truncated power series over `Z` or `Z/M`, with
//!   dissection and substitution operators and a multi-prime NTT product.
//! * [`theta_lab`]: the theta functions `φ`, `ψ`, `S`, Pochhammer products,
//!   the eta-quotient `B`, and both sides of the named theta identities.
//! * [`counting`]: `p̄_k(n)`, `r_k(n)`, `r₂⁺(n)` with brute-force oracles and
//!   closed-form residue classifiers.
//! * [`theorem_suite`]: a registry of declarative checks, one per claim,
//!   producing machine-readable reports.
//! * [`cli`]: the `qsc` command-line front end.

pub mod ring_series;
pub mod theta_lab;
pub mod counting;
pub mod theorem_suite;
pub mod cli;

pub use ring_series::{Ring, Series, SeriesError};
