//! Crate-wide error type.

use num_bigint::BigUint;

/// Errors raised by the workbench.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{x} is not invertible modulo {p}^{k}")]
    NotInvertible { x: BigUint, p: BigUint, k: u8 },

    #[error("rational has negative {p}-adic valuation {v}; cannot reduce to a residue")]
    NegativeValuation { p: BigUint, v: i64 },

    #[error("insufficient p-adic precision: value known modulo p^{known}, need p^{need}")]
    InsufficientPrecision { known: i64, need: i64 },

    #[error("division by a p-adic zero")]
    DivisionByZero,

    #[error("p-adic pole of order {v} is below the supported minimum valuation -2")]
    PoleTooDeep { v: i64 },

    #[error("modulus base must be an odd prime >= 3 (got {p})")]
    InvalidModulusPrime { p: BigUint },

    #[error("modulus exponent must lie in 1..=4 (got {k})")]
    InvalidExponent { k: u8 },

    #[error("argument {value} out of range [{lo}, {hi}]")]
    OutOfRange { value: u64, lo: u64, hi: u64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("Bernoulli table covers indices 0..={max}, requested {requested}")]
    TableTooSmall { requested: usize, max: usize },

    #[error("(p-1)! + 1 is not divisible by p = {p}; input is not prime")]
    NonWilsonIntegerDivision { p: u64 },

    #[error("method {method} unavailable for {id} at p = {p}: {reason}")]
    MethodUnavailable {
        id: &'static str,
        p: u64,
        method: &'static str,
        reason: String,
    },

    #[error("invalid range [{lo}, {hi}]")]
    RangeInvalid { lo: u64, hi: u64 },

    #[error("checkpoint mismatch: {0}")]
    CheckpointMismatch(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
