//! Exact Bernoulli numbers and polynomials in the B_1 = -1/2 convention,
//! the p-integral combination B_{p-1} - 1 + 1/p, and a quotient-derived
//! p-adic estimator of Bernoulli data.
//!
//! The table is built once per run from the tangent-number triangle (pure
//! integer arithmetic, no per-step gcd), then each even index is reduced to
//! a rational in one shot. The defining recurrence and the von
//! Staudt-Clausen denominators serve as independent oracles in the tests.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numcore::{self, PadicLaurent, PrimePowerModulus, Residue};

/// Exact binomial coefficient.
pub(crate) fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Shared read-only table of B_0..B_max_index.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    /// Build the table up to and including `max_index`.
    pub fn new(max_index: usize) -> Self {
        let mut values = Vec::with_capacity(max_index + 1);
        values.push(BigRational::one());
        if max_index >= 1 {
            values.push(BigRational::new(BigInt::from(-1), BigInt::from(2)));
        }
        if max_index >= 2 {
            let half = max_index / 2;
            let tangents = tangent_numbers(half);
            for n in 2..=max_index {
                if n % 2 == 1 {
                    values.push(BigRational::zero());
                    continue;
                }
                let m = n / 2;
                // |B_2m| = 2m * T_m / (2^2m (2^2m - 1)), sign (-1)^(m+1)
                let num = BigInt::from(&tangents[m - 1] * (2 * m as u64));
                let num = if m % 2 == 0 { -num } else { num };
                let two_pow = BigUint::one() << (2 * m);
                let den = BigInt::from(&two_pow * (&two_pow - BigUint::one()));
                values.push(BigRational::new(num, den));
            }
        }
        Self { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&BigRational> {
        self.values.get(n).ok_or(Error::TableTooSmall {
            requested: n,
            max: self.max_index(),
        })
    }
}

/// Tangent numbers T_1..T_count via the Seidel-style triangle; integers
/// throughout.
fn tangent_numbers(count: usize) -> Vec<BigUint> {
    if count == 0 {
        return Vec::new();
    }
    let mut t: Vec<BigUint> = Vec::with_capacity(count);
    t.push(BigUint::one());
    for k in 2..=count {
        let prev = t[k - 2].clone();
        t.push(prev * (k as u64 - 1));
    }
    for k in 2..=count {
        for j in k..=count {
            let a = &t[j - 2] * (j - k) as u64;
            let b = &t[j - 1] * (j - k + 2) as u64;
            t[j - 1] = a + b;
        }
    }
    t
}

/// Exact B_n(x) = sum_j C(n,j) B_j x^(n-j).
pub fn bernoulli_polynomial(
    n: usize,
    x: &BigRational,
    table: &BernoulliTable,
) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    // Horner over descending powers of x keeps this O(n) multiplications.
    for j in 0..=n {
        let b = table.get(j)?;
        acc *= x;
        if !b.is_zero() {
            acc += b * BigRational::from(BigInt::from(binomial_big(n as u64, j as u64)));
        }
    }
    Ok(acc)
}

/// The p-integral combination B_{p-1} - 1 + 1/p.
pub fn w_quantity(p: u64, table: &BernoulliTable) -> Result<BigRational> {
    let b = table.get((p - 1) as usize)?;
    Ok(b - BigRational::one() + BigRational::new(BigInt::one(), BigInt::from(p)))
}

/// Product of primes q with (q-1) | n; the exact denominator of B_n for
/// even n >= 2.
pub fn staudt_clausen_denominator(n: u64) -> BigUint {
    assert!(n >= 2 && n % 2 == 0, "defined for even n >= 2");
    let mut acc = BigUint::one();
    for q in 2..=n + 1 {
        if n % (q - 1) == 0 && numcore::is_prime_u64(q) {
            acc *= q;
        }
    }
    acc
}

/// Bernoulli data recovered from Fermat-quotient sums, with tracked
/// precision. Defined for p > 3.
#[derive(Clone, Debug)]
pub struct BernoulliPadicEstimate {
    pub p: u64,
    /// B_{p-1} - 1 + 1/p modulo p^2.
    pub w_mod_p2: Residue,
    /// Estimate of B_{2p-2}/(2p-2), a p-adic value with a simple pole.
    pub b_ratio: PadicLaurent,
    pub provenance: &'static str,
}

/// Recover Bernoulli data modulo p^2 from the Wilson quotient and the
/// Fermat-quotient sum, both given modulo p^2.
///
/// The quotient sum equals B_{p-1} - 1 + 1/p modulo p^2 (Carlitz), and the
/// Wilson-quotient evaluation of Sun rearranges to
/// B_{2p-2}/(2p-2) = W_p - 1/p + B_{p-1}/(p-1) + (p/2)(B_{p-1}/(p-1))^2
/// modulo p^2, with B_{p-1} = w_p + 1 - 1/p.
pub fn bernoulli_padic_estimate(
    p: u64,
    wilson_mod_p2: &Residue,
    qsum_mod_p2: &Residue,
) -> Result<BernoulliPadicEstimate> {
    if p <= 3 {
        return Err(Error::NotApplicable(format!(
            "quotient-derived Bernoulli estimate requires p > 3 (got {p})"
        )));
    }
    let expected = PrimePowerModulus::from_u64(p, 2)?;
    assert!(
        wilson_mod_p2.modulus() == &expected && qsum_mod_p2.modulus() == &expected,
        "estimator inputs must be residues modulo p^2"
    );
    let pb = BigUint::from(p);
    let prec = 6u32;
    let rat_u64 = |n: i64, d: u64| BigRational::new(BigInt::from(n), BigInt::from(d));

    let w = PadicLaurent::from_residue(qsum_mod_p2);
    // B_{p-1} = w + 1 - 1/p = w + (p-1)/p
    let b_pm1 = w.add(&PadicLaurent::from_rational(
        &rat_u64(p as i64 - 1, p),
        &pb,
        prec,
    )?);
    let a = b_pm1.div(&PadicLaurent::from_rational(&rat_u64(p as i64 - 1, 1), &pb, prec)?)?;
    let half_p = PadicLaurent::from_rational(&rat_u64(p as i64, 2), &pb, prec)?;
    let correction = half_p.mul(&a.mul(&a));
    let b_ratio = PadicLaurent::from_residue(wilson_mod_p2)
        .add(&PadicLaurent::from_rational(&rat_u64(-1, p), &pb, prec)?)
        .add(&a)
        .add(&correction);
    Ok(BernoulliPadicEstimate {
        p,
        w_mod_p2: qsum_mod_p2.clone(),
        b_ratio,
        provenance: "quotient-derived",
    })
}
