//! Arbitrary-precision modular arithmetic over odd prime powers, exact
//! rational reduction, and p-adic valuations.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so the whole module is safe for unrestricted concurrent
//! use.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

mod padic;
pub use padic::PadicLaurent;

/// Largest supported exponent for a prime-power modulus. The deepest check
/// in the registry works modulo p^3 and needs its quotient inputs at p^4.
pub const MAX_EXPONENT: u8 = 4;

pub(crate) mod kernel {
    //! Native double-width fast paths. Any modulus below 2^64 is safe here
    //! because products of two reduced values fit in u128. Results must be
    //! bit-identical to the arbitrary-precision route (tested).

    #[inline(always)]
    pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }

    pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
        if m == 1 {
            return 0;
        }
        base %= m;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, m);
            }
            base = mul_mod(base, base, m);
            exp >>= 1;
        }
        acc
    }

    pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
        let (mut r0, mut r1) = (m as i128, (a % m) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            let r = r0 - q * r1;
            r0 = r1;
            r1 = r;
            let t = t0 - q * t1;
            t0 = t1;
            t1 = t;
        }
        if r0 != 1 {
            return None;
        }
        Some(((t0 % m as i128 + m as i128) % m as i128) as u64)
    }
}

/// Deterministic Miller-Rabin for u64 inputs.
///
/// The base set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is a proven
/// witness set for every n < 3.3e24, which covers the whole u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = kernel::pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = kernel::mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_biguint(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    // Beyond 2^64 the same bases are an excellent probable-prime filter;
    // the workbench never constructs moduli that large in practice.
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Modulus p^k for an odd prime p >= 3 and exponent 1 <= k <= 4.
#[derive(Clone, Debug)]
pub struct PrimePowerModulus {
    p: BigUint,
    k: u8,
    pk: BigUint,
    /// Cached native-width copy of p^k when it fits; fast kernels key off it.
    pk_u64: Option<u64>,
    p_u64: Option<u64>,
}

impl PrimePowerModulus {
    pub fn new(p: BigUint, k: u8) -> Result<Self> {
        if !(1..=MAX_EXPONENT).contains(&k) {
            return Err(Error::InvalidExponent { k });
        }
        if p < BigUint::from(3u32) || (&p % 2u32).is_zero() || !is_prime_biguint(&p) {
            return Err(Error::InvalidModulusPrime { p });
        }
        let pk = p.pow(k as u32);
        let pk_u64 = pk.to_u64();
        let p_u64 = p.to_u64();
        Ok(Self {
            p,
            k,
            pk,
            pk_u64,
            p_u64,
        })
    }

    pub fn from_u64(p: u64, k: u8) -> Result<Self> {
        Self::new(BigUint::from(p), k)
    }

    pub fn prime(&self) -> &BigUint {
        &self.p
    }

    pub fn prime_u64(&self) -> Option<u64> {
        self.p_u64
    }

    pub fn exponent(&self) -> u8 {
        self.k
    }

    /// The modulus value p^k.
    pub fn modulus(&self) -> &BigUint {
        &self.pk
    }

    pub(crate) fn modulus_u64(&self) -> Option<u64> {
        self.pk_u64
    }

    /// Same prime, smaller exponent.
    pub fn with_exponent(&self, k: u8) -> Result<Self> {
        if !(1..=MAX_EXPONENT).contains(&k) {
            return Err(Error::InvalidExponent { k });
        }
        let pk = self.p.pow(k as u32);
        Ok(Self {
            p: self.p.clone(),
            k,
            pk_u64: pk.to_u64(),
            pk,
            p_u64: self.p_u64,
        })
    }

    pub fn zero(&self) -> Residue {
        Residue {
            value: BigUint::zero(),
            modulus: self.clone(),
        }
    }

    pub fn one(&self) -> Residue {
        Residue {
            value: BigUint::one(),
            modulus: self.clone(),
        }
    }

    pub fn residue(&self, value: &BigInt) -> Residue {
        Residue::new(value, self)
    }

    pub fn residue_u64(&self, value: u64) -> Residue {
        Residue {
            value: BigUint::from(value) % &self.pk,
            modulus: self.clone(),
        }
    }
}

impl PartialEq for PrimePowerModulus {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.p == other.p
    }
}

impl Eq for PrimePowerModulus {}

impl fmt::Display for PrimePowerModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.k)
        }
    }
}

/// A least-nonnegative value modulo p^k. Signed inputs are normalized on
/// entry; arithmetic between residues requires identical moduli.
#[derive(Clone, Debug)]
pub struct Residue {
    value: BigUint,
    modulus: PrimePowerModulus,
}

impl Residue {
    pub fn new(value: &BigInt, m: &PrimePowerModulus) -> Self {
        let pk = BigInt::from(m.pk.clone());
        let v = value.mod_floor(&pk);
        Self {
            value: v.to_biguint().expect("mod_floor of positive modulus"),
            modulus: m.clone(),
        }
    }

    pub(crate) fn from_reduced(value: BigUint, m: &PrimePowerModulus) -> Self {
        debug_assert!(value < m.pk);
        Self {
            value,
            modulus: m.clone(),
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn assert_compatible(&self, rhs: &Residue) {
        assert!(
            self.modulus == rhs.modulus,
            "residue arithmetic requires identical moduli ({} vs {})",
            self.modulus,
            rhs.modulus
        );
    }

    pub fn add(&self, rhs: &Residue) -> Residue {
        self.assert_compatible(rhs);
        let mut v = &self.value + &rhs.value;
        if v >= self.modulus.pk {
            v -= &self.modulus.pk;
        }
        Residue::from_reduced(v, &self.modulus)
    }

    pub fn sub(&self, rhs: &Residue) -> Residue {
        self.assert_compatible(rhs);
        let v = if self.value >= rhs.value {
            &self.value - &rhs.value
        } else {
            &self.modulus.pk - &rhs.value + &self.value
        };
        Residue::from_reduced(v, &self.modulus)
    }

    pub fn mul(&self, rhs: &Residue) -> Residue {
        self.assert_compatible(rhs);
        if let (Some(a), Some(b), Some(m)) =
            (self.to_u64(), rhs.to_u64(), self.modulus.pk_u64)
        {
            return Residue::from_reduced(
                BigUint::from(kernel::mul_mod(a, b, m)),
                &self.modulus,
            );
        }
        Residue::from_reduced(&self.value * &rhs.value % &self.modulus.pk, &self.modulus)
    }

    pub fn neg(&self) -> Residue {
        if self.value.is_zero() {
            return self.clone();
        }
        Residue::from_reduced(&self.modulus.pk - &self.value, &self.modulus)
    }

    pub fn inv(&self) -> Result<Residue> {
        mod_inv(&BigInt::from(self.value.clone()), &self.modulus)
    }

    /// Project to the same prime at a smaller exponent.
    pub fn reduce_to(&self, k: u8) -> Result<Residue> {
        if k > self.modulus.k {
            return Err(Error::InvalidExponent { k });
        }
        let m = self.modulus.with_exponent(k)?;
        Ok(Residue::from_reduced(&self.value % m.modulus(), &m))
    }
}

impl PartialEq for Residue {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.value == other.value
    }
}

impl Eq for Residue {}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// base^exp reduced modulo p^k in O(log exp) multiplications.
pub fn mod_pow(base: &BigInt, exp: &BigUint, m: &PrimePowerModulus) -> Residue {
    let b = Residue::new(base, m);
    if let (Some(bv), Some(ev), Some(mv)) = (b.to_u64(), exp.to_u64(), m.pk_u64) {
        return Residue::from_reduced(BigUint::from(kernel::pow_mod(bv, ev, mv)), m);
    }
    Residue::from_reduced(b.value.modpow(exp, &m.pk), m)
}

/// Inverse of x modulo p^k; errors with `NotInvertible` when p | x.
pub fn mod_inv(x: &BigInt, m: &PrimePowerModulus) -> Result<Residue> {
    let r = Residue::new(x, m);
    if (&r.value % &m.p).is_zero() {
        return Err(Error::NotInvertible {
            x: r.value,
            p: m.p.clone(),
            k: m.k,
        });
    }
    if let (Some(a), Some(mv)) = (r.to_u64(), m.pk_u64) {
        let inv = kernel::inv_mod(a, mv).expect("coprime to p hence invertible");
        return Ok(Residue::from_reduced(BigUint::from(inv), m));
    }
    let e = BigInt::from(r.value).extended_gcd(&BigInt::from(m.pk.clone()));
    debug_assert!(e.gcd.is_one());
    Ok(Residue::new(&e.x, m))
}

/// n! modulo p^k by direct product.
pub fn factorial_mod(n: u64, m: &PrimePowerModulus) -> Residue {
    if let Some(mv) = m.pk_u64 {
        let mut acc = 1u64 % mv;
        for i in 2..=n {
            acc = kernel::mul_mod(acc, i % mv, mv);
        }
        return Residue::from_reduced(BigUint::from(acc), m);
    }
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc = acc * i % &m.pk;
    }
    Residue::from_reduced(acc, m)
}

/// p-adic valuation; `Infinite` is the sentinel for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn at_least(&self, k: i64) -> bool {
        match self {
            Valuation::Finite(v) => *v >= k,
            Valuation::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

pub(crate) fn int_valuation(n: &BigUint, p: &BigUint) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let mut v = 0u64;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        m = q;
    }
}

/// v_p(x) = v_p(num) - v_p(den), with the +inf sentinel for x = 0.
pub fn rat_valuation(x: &BigRational, p: &BigUint) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    // The fraction is reduced, so at most one of the two carries p.
    let vn = int_valuation(num, p).expect("nonzero numerator") as i64;
    if vn > 0 {
        return Valuation::Finite(vn);
    }
    let vd = int_valuation(den, p).expect("nonzero denominator") as i64;
    Valuation::Finite(-vd)
}

/// Reduce a p-integral rational modulo p^k as num * den^{-1}.
pub fn rat_residue(x: &BigRational, m: &PrimePowerModulus) -> Result<Residue> {
    match rat_valuation(x, &m.p) {
        Valuation::Finite(v) if v < 0 => {
            return Err(Error::NegativeValuation {
                p: m.p.clone(),
                v,
            })
        }
        _ => {}
    }
    let num = Residue::new(x.numer(), m);
    let den_inv = mod_inv(x.denom(), m)?;
    Ok(num.mul(&den_inv))
}

/// The single meaning of "x = y (mod p^k)" for rational sides:
/// v_p(x - y) >= k.
pub fn rat_congruent(x: &BigRational, y: &BigRational, p: &BigUint, k: u8) -> bool {
    rat_valuation(&(x - y), p).at_least(k as i64)
}
