//! Workbench for Lerch and Wilson primes.
//!
//! The crate computes Fermat, Wilson, and Lerch quotients and Bernoulli
//! numbers exactly and modulo odd prime powers, machine-checks a registry
//! of classical congruences and identities relating them, and searches
//! prime ranges for Lerch, Wilson, and Wilson-Lerch candidates.
//!
//! Modules:
//! - [`numcore`]: residues modulo p^k (k <= 4), exact rationals, p-adic
//!   valuation arithmetic.
//! - [`bernoulli`]: exact Bernoulli numbers (B_1 = -1/2 convention),
//!   Bernoulli polynomials, and quotient-derived p-adic estimates.
//! - [`quotients`]: Fermat/Wilson/Lerch quotients, harmonic-weighted
//!   quotient sums, binomial kernels, and the two exact identities.
//! - [`congruences`]: the registry C01..C20 with per-prime structured
//!   evidence.
//! - [`search`]: sieve-driven range classification with deterministic
//!   ordered output and checkpoint/resume.

pub mod bernoulli;
pub mod congruences;
pub mod error;
pub mod numcore;
pub mod quotients;
pub mod search;

pub use error::{Error, Result};

// Downstream users need the same bignum types the public API speaks.
pub use num_bigint;
pub use num_rational;
