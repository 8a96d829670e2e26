//! Fermat, Wilson, and Lerch quotients; harmonic numbers; harmonic-weighted
//! Fermat-quotient sums; binomial coefficients C(p-1, a) modulo p^k; and the
//! exact Euler-MacLaurin and Beeger identities.
//!
//! Quotients at precision k are computed by exponentiation at modulus
//! p^(k+1) followed by exact division by p, never through rational
//! arithmetic, so the per-prime loops stream in O(p) with no table.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bernoulli::{binomial_big, BernoulliTable};
use crate::error::{Error, Result};
use crate::numcore::{
    self, factorial_mod, kernel, mod_inv, mod_pow, rat_residue, PrimePowerModulus, Residue,
};

fn check_precision(k: u8) -> Result<()> {
    if (1..=3).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidExponent { k })
    }
}

fn odd_prime(p: u64) -> Result<()> {
    if p >= 3 && p % 2 == 1 && numcore::is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// q_p(a) = (a^(p-1) - 1)/p reduced modulo p^k.
pub fn fermat_quotient(a: u64, p: u64, k: u8) -> Result<Residue> {
    check_precision(k)?;
    odd_prime(p)?;
    if a < 1 || a > p - 1 {
        return Err(Error::OutOfRange {
            value: a,
            lo: 1,
            hi: p - 1,
        });
    }
    let target = PrimePowerModulus::from_u64(p, k)?;
    if let Some(pk1) = target.modulus_u64().and_then(|pk| pk.checked_mul(p)) {
        let q = fermat_quotient_u64(a, p, pk1);
        return Ok(target.residue_u64(q));
    }
    let hi = target.with_exponent(k + 1)?;
    let x = mod_pow(&BigInt::from(a), &BigUint::from(p - 1), &hi);
    let y = x.value() - BigUint::one();
    let (q, r) = num_integer::Integer::div_rem(&y, &BigUint::from(p));
    debug_assert!(r.is_zero(), "Fermat quotient division must be exact");
    Ok(Residue::from_reduced(q, &target))
}

/// Kernel path: q_p(a) via a^(p-1) mod p^(k+1), then exact division.
/// `pk1` is p^(k+1); the result is already reduced mod p^k.
#[inline]
fn fermat_quotient_u64(a: u64, p: u64, pk1: u64) -> u64 {
    let x = kernel::pow_mod(a, p - 1, pk1);
    let y = x - 1;
    debug_assert_eq!(y % p, 0);
    y / p
}

/// Sum of q_p(a) over a = 1..p-1, modulo p^k.
pub fn fermat_quotient_sum(p: u64, k: u8) -> Result<Residue> {
    check_precision(k)?;
    odd_prime(p)?;
    let target = PrimePowerModulus::from_u64(p, k)?;
    if let Some(pk) = target.modulus_u64() {
        if let Some(pk1) = pk.checked_mul(p) {
            let mut acc = 0u64;
            for a in 1..p {
                acc += fermat_quotient_u64(a, p, pk1);
                if acc >= pk {
                    acc -= pk;
                }
            }
            return Ok(target.residue_u64(acc));
        }
    }
    let hi = target.with_exponent(k + 1)?;
    let pm1 = BigUint::from(p - 1);
    let pb = BigUint::from(p);
    let mut acc = BigUint::zero();
    for a in 1..p {
        let x = mod_pow(&BigInt::from(a), &pm1, &hi);
        acc += (x.value() - BigUint::one()) / &pb;
    }
    Ok(Residue::new(&BigInt::from(acc), &target))
}

/// The exact integer value of the Fermat-quotient sum, for identity checks.
pub fn fermat_quotient_sum_exact(p: u64) -> Result<BigInt> {
    odd_prime(p)?;
    let mut acc = BigInt::zero();
    let pb = BigInt::from(p);
    for a in 1..p {
        let pow = BigInt::from(a).pow(p as u32 - 1);
        acc += (pow - 1) / &pb;
    }
    Ok(acc)
}

/// W_p = ((p-1)! + 1)/p reduced modulo p^k.
///
/// The division by p is exact precisely when p is prime (Wilson's theorem
/// and its converse), so an inexact division doubles as a sanity trap.
pub fn wilson_quotient(p: u64, k: u8) -> Result<Residue> {
    check_precision(k)?;
    if p < 3 || p % 2 == 0 {
        return Err(Error::NotOddPrime(p));
    }
    // Run the factorial over an unchecked modulus so the divisibility test,
    // not a primality test, decides the error.
    let pb = BigUint::from(p);
    let hi = PrimePowerModulus::new_unchecked(pb.clone(), k as u32 + 1);
    let f = factorial_mod(p - 1, &hi);
    let mut y = f.value() + BigUint::one();
    if &y == hi.modulus() {
        y = BigUint::zero();
    }
    let (q, r) = num_integer::Integer::div_rem(&y, &pb);
    if !r.is_zero() {
        return Err(Error::NonWilsonIntegerDivision { p });
    }
    let target = PrimePowerModulus::from_u64(p, k)?;
    Ok(Residue::from_reduced(q, &target))
}

/// The Lerch quotient residue: ((sum of q_p(a)) - W_p)/p modulo p.
/// Zero exactly when p is a Lerch prime.
pub fn lerch_residue(p: u64) -> Result<Residue> {
    if p == 2 {
        return Err(Error::NotApplicable(
            "the Lerch quotient requires p > 2".into(),
        ));
    }
    let q2 = fermat_quotient_sum(p, 2)?;
    let w2 = wilson_quotient(p, 2)?;
    lerch_from_parts(&q2, &w2)
}

/// Derive the Lerch residue from precomputed mod-p^2 data.
pub(crate) fn lerch_from_parts(qsum_p2: &Residue, wilson_p2: &Residue) -> Result<Residue> {
    let d = qsum_p2.sub(wilson_p2);
    let p = d.modulus().prime().clone();
    let (q, r) = num_integer::Integer::div_rem(d.value(), &p);
    debug_assert!(r.is_zero(), "Lerch congruence guarantees divisibility");
    let m1 = d.modulus().with_exponent(1)?;
    Ok(Residue::new(&BigInt::from(q), &m1))
}

/// H_a (r = 1) or the generalized H_{a,2} (r = 2), exactly. H_0 = 0.
pub fn harmonic(a: u64, r: u8) -> BigRational {
    assert!(r == 1 || r == 2, "only orders 1 and 2 are supported");
    let mut acc = BigRational::zero();
    for i in 1..=a {
        let den = if r == 1 { BigInt::from(i) } else { BigInt::from(i * i) };
        acc += BigRational::new(BigInt::one(), den);
    }
    acc
}

/// Prefix table H_0..H_n built incrementally; used by the per-a checkers.
pub(crate) fn harmonic_prefix(n: u64, r: u8) -> Vec<BigRational> {
    assert!(r == 1 || r == 2);
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BigRational::zero());
    let mut acc = BigRational::zero();
    for i in 1..=n {
        let den = if r == 1 { BigInt::from(i) } else { BigInt::from(i * i) };
        acc += BigRational::new(BigInt::one(), den);
        out.push(acc.clone());
    }
    out
}

/// Weight applied to each Fermat quotient in a sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientWeight {
    /// Plain sum of q_p(a).
    Unit,
    /// H_a * q_p(a).
    Harmonic,
    /// H_a^2 * q_p(a).
    HarmonicSquared,
    /// H_{a,2} * q_p(a).
    SecondHarmonic,
}

/// All four weighted quotient sums at one precision, from a single pass.
#[derive(Clone, Debug)]
pub struct WeightedSums {
    pub unit: Residue,
    pub harmonic: Residue,
    pub harmonic_squared: Residue,
    pub second_harmonic: Residue,
}

/// One pass over a = 1..p-1 accumulating q, H q, H^2 q, and H_{a,2} q
/// modulo p^k. Harmonic values are extended incrementally as residues.
pub fn all_weighted_sums(p: u64, k: u8) -> Result<WeightedSums> {
    check_precision(k)?;
    odd_prime(p)?;
    let target = PrimePowerModulus::from_u64(p, k)?;
    if let Some(pk) = target.modulus_u64() {
        if let Some(pk1) = pk.checked_mul(p) {
            let (mut s0, mut s1, mut s2, mut s3) = (0u64, 0u64, 0u64, 0u64);
            let (mut h, mut h2) = (0u64, 0u64);
            let add = |acc: &mut u64, x: u64| {
                *acc += x;
                if *acc >= pk {
                    *acc -= pk;
                }
            };
            for a in 1..p {
                let q = fermat_quotient_u64(a, p, pk1);
                let ia = kernel::inv_mod(a % pk, pk).expect("a < p is a unit");
                add(&mut h, ia);
                add(&mut h2, kernel::mul_mod(ia, ia, pk));
                add(&mut s0, q);
                add(&mut s1, kernel::mul_mod(h, q, pk));
                add(&mut s2, kernel::mul_mod(kernel::mul_mod(h, h, pk), q, pk));
                add(&mut s3, kernel::mul_mod(h2, q, pk));
            }
            return Ok(WeightedSums {
                unit: target.residue_u64(s0),
                harmonic: target.residue_u64(s1),
                harmonic_squared: target.residue_u64(s2),
                second_harmonic: target.residue_u64(s3),
            });
        }
    }
    let hi = target.with_exponent(k + 1)?;
    let pm1 = BigUint::from(p - 1);
    let pb = BigUint::from(p);
    let mut s0 = target.zero();
    let mut s1 = target.zero();
    let mut s2 = target.zero();
    let mut s3 = target.zero();
    let mut h = target.zero();
    let mut h2 = target.zero();
    for a in 1..p {
        let x = mod_pow(&BigInt::from(a), &pm1, &hi);
        let q = Residue::from_reduced((x.value() - BigUint::one()) / &pb, &target);
        let ia = mod_inv(&BigInt::from(a), &target)?;
        h = h.add(&ia);
        h2 = h2.add(&ia.mul(&ia));
        s0 = s0.add(&q);
        s1 = s1.add(&h.mul(&q));
        s2 = s2.add(&h.mul(&h).mul(&q));
        s3 = s3.add(&h2.mul(&q));
    }
    Ok(WeightedSums {
        unit: s0,
        harmonic: s1,
        harmonic_squared: s2,
        second_harmonic: s3,
    })
}

/// Sum of weight(a) * q_p(a) over a = 1..p-1, modulo p^k.
pub fn weighted_qsum(p: u64, weight: QuotientWeight, k: u8) -> Result<Residue> {
    let sums = all_weighted_sums(p, k)?;
    Ok(match weight {
        QuotientWeight::Unit => sums.unit,
        QuotientWeight::Harmonic => sums.harmonic,
        QuotientWeight::HarmonicSquared => sums.harmonic_squared,
        QuotientWeight::SecondHarmonic => sums.second_harmonic,
    })
}

/// C(p-1, a) modulo p^k by the multiplicative formula; no factor p appears.
pub fn binomial_pm1(a: u64, p: u64, k: u8) -> Result<Residue> {
    check_precision(k)?;
    odd_prime(p)?;
    if a > p - 1 {
        return Err(Error::OutOfRange {
            value: a,
            lo: 0,
            hi: p - 1,
        });
    }
    let target = PrimePowerModulus::from_u64(p, k)?;
    if let Some(pk) = target.modulus_u64() {
        let mut c = 1u64;
        for i in 1..=a {
            let inv = kernel::inv_mod(i % pk, pk).expect("i < p is a unit");
            c = kernel::mul_mod(c, (p - i) % pk, pk);
            c = kernel::mul_mod(c, inv, pk);
        }
        return Ok(target.residue_u64(c));
    }
    let mut c = target.one();
    for i in 1..=a {
        c = c.mul(&target.residue_u64(p - i));
        c = c.mul(&mod_inv(&BigInt::from(i), &target)?);
    }
    Ok(c)
}

/// The mod-p^3 binomial evaluation
/// (-1)^a (1 - p H_a + (p^2/2) H_a^2 - (p^2/2) H_{a,2}),
/// computed from exact rationals and reduced.
pub fn lucas_lehmer_rhs(a: u64, p: u64) -> Result<Residue> {
    odd_prime(p)?;
    if a < 1 || a > p - 1 {
        return Err(Error::OutOfRange {
            value: a,
            lo: 1,
            hi: p - 1,
        });
    }
    let h = harmonic(a, 1);
    let h2 = harmonic(a, 2);
    let rhs = lucas_lehmer_rational(&h, &h2, p);
    let m3 = PrimePowerModulus::from_u64(p, 3)?;
    let r = rat_residue(&rhs, &m3)?;
    Ok(if a % 2 == 1 { r.neg() } else { r })
}

/// The bracketed part of the mod-p^3 binomial evaluation, exactly.
pub(crate) fn lucas_lehmer_rational(h: &BigRational, h2: &BigRational, p: u64) -> BigRational {
    let pr = BigRational::from(BigInt::from(p));
    let half_p2 = BigRational::new(BigInt::from(p * p), BigInt::from(2));
    BigRational::one() - &pr * h + &half_p2 * (h * h) - &half_p2 * h2
}

/// Sum of (-1)^a C(p-1, a) q_p(a) modulo p^k. Identically equal to W_p.
pub fn beeger_sum(p: u64, k: u8) -> Result<Residue> {
    check_precision(k)?;
    odd_prime(p)?;
    let target = PrimePowerModulus::from_u64(p, k)?;
    if let Some(pk) = target.modulus_u64() {
        if let Some(pk1) = pk.checked_mul(p) {
            let mut acc = 0u64;
            let mut c = 1u64; // C(p-1, a) built incrementally
            for a in 1..p {
                let inv = kernel::inv_mod(a % pk, pk).expect("a < p is a unit");
                c = kernel::mul_mod(c, (p - a) % pk, pk);
                c = kernel::mul_mod(c, inv, pk);
                let term = kernel::mul_mod(c, fermat_quotient_u64(a, p, pk1), pk);
                if a % 2 == 1 {
                    acc += pk - term;
                } else {
                    acc += term;
                }
                if acc >= pk {
                    acc -= pk;
                }
            }
            return Ok(target.residue_u64(acc));
        }
    }
    let hi = target.with_exponent(k + 1)?;
    let pm1 = BigUint::from(p - 1);
    let pb = BigUint::from(p);
    let mut acc = target.zero();
    let mut c = target.one();
    for a in 1..p {
        c = c.mul(&target.residue_u64(p - a));
        c = c.mul(&mod_inv(&BigInt::from(a), &target)?);
        let x = mod_pow(&BigInt::from(a), &pm1, &hi);
        let q = Residue::from_reduced((x.value() - BigUint::one()) / &pb, &target);
        let term = c.mul(&q);
        acc = if a % 2 == 1 {
            acc.sub(&term)
        } else {
            acc.add(&term)
        };
    }
    Ok(acc)
}

/// The exact rational value of the quotient sum by Euler-MacLaurin:
/// -1 + 1/p + sum_{j=1}^{p} C(p,j) p^(j-2) B_{p-j}. Requires p > 3.
pub fn euler_maclaurin_rhs(p: u64, table: &BernoulliTable) -> Result<BigRational> {
    odd_prime(p)?;
    if p <= 3 {
        return Err(Error::NotApplicable(
            "the Euler-MacLaurin evaluation requires p > 3".into(),
        ));
    }
    let mut acc = BigRational::new(BigInt::from(1 - p as i64), BigInt::from(p));
    for j in 1..=p {
        let b = table.get((p - j) as usize)?;
        if b.is_zero() {
            continue;
        }
        let coeff = BigRational::from(BigInt::from(binomial_big(p, j)));
        let power = if j >= 2 {
            BigRational::from(BigInt::from(p).pow(j as u32 - 2))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(p))
        };
        acc += coeff * power * b;
    }
    Ok(acc)
}

/// Per-prime quotient data shared by the classifiers: the quotient sum and
/// Wilson quotient at p^k plus the derived Lerch residue mod p.
#[derive(Clone, Debug)]
pub struct QuotientBundle {
    pub p: u64,
    pub k: u8,
    pub qsum: Residue,
    pub wilson: Residue,
    pub lerch_residue: Residue,
}

impl QuotientBundle {
    pub fn compute(p: u64, k: u8) -> Result<Self> {
        check_precision(k)?;
        let base = k.max(2);
        let qsum = fermat_quotient_sum(p, base)?;
        let wilson = wilson_quotient(p, base)?;
        let lerch = lerch_from_parts(&qsum.reduce_to(2)?, &wilson.reduce_to(2)?)?;
        Ok(Self {
            p,
            k,
            qsum: qsum.reduce_to(k)?,
            wilson: wilson.reduce_to(k)?,
            lerch_residue: lerch,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::is_prime_u64;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn primes_to(hi: u64) -> Vec<u64> {
        (3..=hi).filter(|&n| n % 2 == 1 && is_prime_u64(n)).collect()
    }

    #[test]
    fn fermat_quotient_examples() {
        assert_eq!(fermat_quotient(1, 7, 2).unwrap().to_u64(), Some(0));
        assert_eq!(fermat_quotient(2, 3, 1).unwrap().to_u64(), Some(1));
        assert_eq!(fermat_quotient(2, 5, 2).unwrap().to_u64(), Some(3));
        assert!(matches!(
            fermat_quotient(5, 5, 1),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            fermat_quotient(0, 5, 1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn fermat_quotient_sum_examples() {
        assert_eq!(fermat_quotient_sum(3, 2).unwrap().to_u64(), Some(1));
        // 0 + 3 + 16 + 51 = 70, and 70 mod 25 = 20
        assert_eq!(fermat_quotient_sum(5, 2).unwrap().to_u64(), Some(20));
        assert_eq!(fermat_quotient_sum(5, 1).unwrap().to_u64(), Some(0));
        assert_eq!(
            fermat_quotient_sum_exact(5).unwrap(),
            BigInt::from(70)
        );
    }

    #[test]
    fn wilson_quotient_examples() {
        assert_eq!(wilson_quotient(3, 1).unwrap().to_u64(), Some(1));
        assert_eq!(wilson_quotient(5, 1).unwrap().to_u64(), Some(0)); // Wilson prime
        assert_eq!(wilson_quotient(7, 3).unwrap().to_u64(), Some(103)); // exact value
        assert_eq!(wilson_quotient(7, 1).unwrap().to_u64(), Some(5));
        assert!(matches!(
            wilson_quotient(9, 1),
            Err(Error::NonWilsonIntegerDivision { p: 9 })
        ));
    }

    #[test]
    fn lerch_residue_examples() {
        assert_eq!(lerch_residue(3).unwrap().to_u64(), Some(0)); // Lerch prime
        assert_eq!(lerch_residue(5).unwrap().to_u64(), Some(3)); // (70 - 5)/5 = 13
        assert_eq!(lerch_residue(103).unwrap().to_u64(), Some(0)); // Lerch prime
        assert!(matches!(lerch_residue(2), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0, 1), BigRational::zero());
        assert_eq!(harmonic(1, 1), BigRational::one());
        assert_eq!(harmonic(4, 1), rat(25, 12));
        assert_eq!(harmonic(2, 2), rat(5, 4));
        let prefix = harmonic_prefix(6, 1);
        for (a, h) in prefix.iter().enumerate() {
            assert_eq!(h, &harmonic(a as u64, 1));
        }
    }

    #[test]
    fn weighted_qsum_examples() {
        assert_eq!(
            weighted_qsum(3, QuotientWeight::Harmonic, 1).unwrap().to_u64(),
            Some(0)
        );
        // exact sum 1681/12; 1681 * inv(12) mod 5 = 3
        assert_eq!(
            weighted_qsum(5, QuotientWeight::Harmonic, 1).unwrap().to_u64(),
            Some(3)
        );
        assert_eq!(
            weighted_qsum(5, QuotientWeight::Unit, 2).unwrap(),
            fermat_quotient_sum(5, 2).unwrap()
        );
    }

    #[test]
    fn weighted_sums_match_exact_rationals() {
        // Cross-validate the modular accumulation against exact rational
        // sums with the quotients taken as exact integers.
        for p in [5u64, 7, 11, 13] {
            let k = 2u8;
            let m = PrimePowerModulus::from_u64(p, k).unwrap();
            let h1 = harmonic_prefix(p - 1, 1);
            let h2 = harmonic_prefix(p - 1, 2);
            let mut exact_h = BigRational::zero();
            let mut exact_hsq = BigRational::zero();
            let mut exact_h2 = BigRational::zero();
            for a in 1..p {
                let q = (BigRational::from(BigInt::from(a).pow(p as u32 - 1))
                    - BigRational::one())
                    / BigRational::from(BigInt::from(p));
                exact_h += &h1[a as usize] * &q;
                exact_hsq += &h1[a as usize] * &h1[a as usize] * &q;
                exact_h2 += &h2[a as usize] * &q;
            }
            let sums = all_weighted_sums(p, k).unwrap();
            assert_eq!(sums.harmonic, rat_residue(&exact_h, &m).unwrap(), "H at {p}");
            assert_eq!(
                sums.harmonic_squared,
                rat_residue(&exact_hsq, &m).unwrap(),
                "H^2 at {p}"
            );
            assert_eq!(
                sums.second_harmonic,
                rat_residue(&exact_h2, &m).unwrap(),
                "H_2 at {p}"
            );
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_pm1(0, 11, 2).unwrap().to_u64(), Some(1));
        let r = binomial_pm1(2, 5, 2).unwrap();
        assert_eq!(r.to_u64(), Some(6));
        assert_eq!(r.reduce_to(1).unwrap().to_u64(), Some(1)); // (-1)^2 mod 5
        assert_eq!(binomial_pm1(2, 7, 2).unwrap().to_u64(), Some(15));
        assert!(matches!(
            binomial_pm1(7, 7, 1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn lucas_lehmer_examples() {
        assert_eq!(lucas_lehmer_rhs(1, 5).unwrap().to_u64(), Some(4));
        assert_eq!(lucas_lehmer_rhs(2, 7).unwrap().to_u64(), Some(15));
        for p in [5u64, 7, 11] {
            assert_eq!(
                lucas_lehmer_rhs(p - 1, p).unwrap().to_u64(),
                Some(1),
                "C(p-1, p-1) = 1 at p = {p}"
            );
        }
    }

    #[test]
    fn beeger_sum_examples() {
        // p=5: 0 + 6*3 - 4*16 + 1*51 = 5 = W_5
        let m3 = beeger_sum(5, 3).unwrap();
        assert_eq!(m3.to_u64(), Some(5));
        assert_eq!(beeger_sum(3, 2).unwrap().to_u64(), Some(1));
        assert_eq!(beeger_sum(7, 2).unwrap(), wilson_quotient(7, 2).unwrap());
        assert_eq!(wilson_quotient(7, 2).unwrap().to_u64(), Some(5)); // 103 mod 49
    }

    #[test]
    fn euler_maclaurin_examples() {
        let t = BernoulliTable::new(12);
        assert_eq!(
            euler_maclaurin_rhs(5, &t).unwrap(),
            BigRational::from(BigInt::from(70))
        );
        assert!(matches!(
            euler_maclaurin_rhs(3, &t),
            Err(Error::NotApplicable(_))
        ));
        let t7 = BernoulliTable::new(6);
        assert_eq!(
            euler_maclaurin_rhs(7, &t7).unwrap(),
            BigRational::from(fermat_quotient_sum_exact(7).unwrap())
        );
    }

    #[test]
    fn quotient_bundle_is_consistent() {
        for p in [3u64, 5, 7, 13, 103] {
            let b = QuotientBundle::compute(p, 2).unwrap();
            assert_eq!(b.qsum, fermat_quotient_sum(p, 2).unwrap());
            assert_eq!(b.wilson, wilson_quotient(p, 2).unwrap());
            assert_eq!(b.lerch_residue, lerch_residue(p).unwrap());
            // Lerch's congruence: qsum = wilson (mod p)
            assert_eq!(
                b.qsum.reduce_to(1).unwrap(),
                b.wilson.reduce_to(1).unwrap()
            );
        }
    }

    #[test]
    fn quotient_sum_matches_wilson_mod_p_to_2000() {
        for p in primes_to(2000) {
            assert_eq!(
                fermat_quotient_sum(p, 1).unwrap(),
                wilson_quotient(p, 1).unwrap(),
                "p = {p}"
            );
        }
    }

    #[test]
    fn beeger_identity_small_range_all_precisions() {
        for p in primes_to(199) {
            for k in 1..=3u8 {
                assert_eq!(
                    beeger_sum(p, k).unwrap(),
                    wilson_quotient(p, k).unwrap(),
                    "p = {p}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn beeger_identity_exact_integers_small() {
        // Exact-integer oracle for the identity, independent of the modular path.
        for p in [3u64, 5, 7, 11, 13] {
            let mut acc = BigInt::zero();
            for a in 1..p {
                let c = BigInt::from(binomial_big(p - 1, a));
                let q = (BigInt::from(a).pow(p as u32 - 1) - 1) / BigInt::from(p);
                let term: BigInt = c * q;
                acc += if a % 2 == 1 { -term } else { term };
            }
            let wilson_exact =
                ((2..p).fold(BigInt::one(), |acc, i| acc * i) + 1) / BigInt::from(p);
            assert_eq!(acc, wilson_exact, "p = {p}");
        }
    }

    #[test]
    fn lucas_property_to_200() {
        for p in primes_to(200) {
            for a in 0..p {
                let got = binomial_pm1(a, p, 1).unwrap();
                let expect = if a % 2 == 0 {
                    got.modulus().one()
                } else {
                    got.modulus().one().neg()
                };
                assert_eq!(got, expect, "p = {p}, a = {a}");
            }
        }
    }

    #[test]
    fn lehmer_binomial_refinement_to_100() {
        for p in primes_to(100).into_iter().filter(|&p| p >= 5) {
            for a in 1..p {
                assert_eq!(
                    binomial_pm1(a, p, 3).unwrap(),
                    lucas_lehmer_rhs(a, p).unwrap(),
                    "p = {p}, a = {a}"
                );
            }
        }
    }

    #[test]
    fn wolstenholme_oracle_to_499() {
        use crate::numcore::{rat_valuation, Valuation};
        for p in primes_to(499).into_iter().filter(|&p| p >= 5) {
            let h = harmonic(p - 1, 1);
            match rat_valuation(&h, &BigUint::from(p)) {
                Valuation::Finite(v) => assert!(v >= 2, "p = {p}, v = {v}"),
                Valuation::Infinite => {}
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fermat_quotient_log_property(ai in 1u64..30, bi in 1u64..30, pi in 0usize..3) {
            // q_p(ab) = q_p(a) + q_p(b) (mod p) whenever ab <= p-1.
            let p = [37u64, 101, 997][pi];
            let (a, b) = (ai % (p - 1) + 1, bi % (p - 1) + 1);
            if a * b < p {
                let qa = fermat_quotient(a, p, 1).unwrap();
                let qb = fermat_quotient(b, p, 1).unwrap();
                let qab = fermat_quotient(a * b, p, 1).unwrap();
                prop_assert_eq!(qa.add(&qb), qab);
            }
        }

        #[test]
        fn quotient_defining_congruence(a in 1u64..100, pi in 0usize..3, k in 1u8..=3) {
            // p * q_p(a) = a^(p-1) - 1 (mod p^(k+1))
            let p = [101u64, 499, 997][pi];
            let a = a % (p - 1) + 1;
            let hi = PrimePowerModulus::from_u64(p, k + 1).unwrap();
            let q = fermat_quotient(a, p, k).unwrap();
            let lhs = Residue::new(&(BigInt::from(q.value().clone()) * BigInt::from(p)), &hi);
            let rhs = mod_pow(&BigInt::from(a), &BigUint::from(p - 1), &hi)
                .sub(&hi.one());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
