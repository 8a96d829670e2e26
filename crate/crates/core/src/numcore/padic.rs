//! Finite-precision p-adic numbers with a bounded pole order.
//!
//! A value is stored as `unit * p^valuation + O(p^(valuation + prec))`
//! where the unit part is coprime to p. The special case `unit == 0` is
//! the precision-limited zero: all that is known is that the value
//! vanishes modulo `p^(valuation + prec)`.
//!
//! The minimum valuation is -2: the deepest pole the workbench handles is
//! a Bernoulli quotient with a double pole. Multiplication and inversion
//! keep the unit precision at the minimum of the inputs; addition aligns
//! valuations, and precision degrades accordingly.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::{int_valuation, mod_inv, rat_valuation, PrimePowerModulus, Residue, Valuation};

/// Deepest pole order a value may carry.
pub const MIN_VALUATION: i64 = -2;

#[derive(Clone, Debug)]
pub struct PadicLaurent {
    p: BigUint,
    valuation: i64,
    /// Unit part modulo p^prec; zero if and only if the value is the
    /// precision-limited zero.
    unit: BigUint,
    prec: u32,
}

impl PadicLaurent {
    /// The precision-limited zero: value known to vanish modulo p^bound.
    pub fn zero(p: &BigUint, bound: i64) -> Self {
        Self {
            p: p.clone(),
            valuation: bound - 1,
            unit: BigUint::zero(),
            prec: 1,
        }
    }

    /// Convert an exact rational with v_p(x) >= -2. `prec` is the number of
    /// unit digits carried (>= 1).
    pub fn from_rational(x: &BigRational, p: &BigUint, prec: u32) -> Result<Self> {
        assert!(prec >= 1, "precision must be at least one digit");
        let v = match rat_valuation(x, p) {
            Valuation::Infinite => return Ok(Self::zero(p, prec as i64)),
            Valuation::Finite(v) => v,
        };
        if v < MIN_VALUATION {
            return Err(Error::PoleTooDeep { v });
        }
        // Strip the p-power from whichever side carries it; the other side
        // is coprime to p because the fraction is reduced.
        let mut num = x.numer().clone();
        let mut den = x.denom().clone();
        let pb = BigInt::from(p.clone());
        if v > 0 {
            num /= pb.pow(v as u32);
        } else if v < 0 {
            den /= pb.pow((-v) as u32);
        }
        let m = unit_modulus(p, prec);
        let num_r = m.residue(&num);
        let den_inv = mod_inv(&den, &m)?;
        let unit = num_r.mul(&den_inv);
        debug_assert!(!unit.is_zero());
        Ok(Self {
            p: p.clone(),
            valuation: v,
            unit: unit.value().clone(),
            prec,
        })
    }

    /// Lift a residue mod p^k into a p-adic value known modulo p^k.
    pub fn from_residue(r: &Residue) -> Self {
        let p = r.modulus().prime().clone();
        let k = r.modulus().exponent() as i64;
        if r.is_zero() {
            return Self::zero(&p, k);
        }
        let v = int_valuation(r.value(), &p).expect("nonzero residue") as i64;
        let unit = r.value() / p.pow(v as u32);
        Self {
            p,
            valuation: v,
            prec: (k - v) as u32,
            unit,
        }
    }

    pub fn prime(&self) -> &BigUint {
        &self.p
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Exact valuation for a nonzero value; `None` when only a lower bound
    /// is known (see [`known_exp`](Self::known_exp)).
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.valuation)
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// The value is determined modulo p^known_exp.
    pub fn known_exp(&self) -> i64 {
        self.valuation + self.prec as i64
    }

    fn assert_same_prime(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "p-adic arithmetic requires a common prime");
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m = self.p.pow(self.prec);
        Self {
            p: self.p.clone(),
            valuation: self.valuation,
            unit: &m - &self.unit,
            prec: self.prec,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_prime(rhs);
        let bound = self.known_exp().min(rhs.known_exp());
        if self.is_zero() && rhs.is_zero() {
            return Self::zero(&self.p, bound);
        }
        if self.is_zero() {
            return rhs.truncate_known(bound);
        }
        if rhs.is_zero() {
            return self.truncate_known(bound);
        }
        let low = self.valuation.min(rhs.valuation);
        let digits = (bound - low) as u32;
        let m = self.p.pow(digits);
        let a = &self.unit * self.p.pow((self.valuation - low) as u32) % &m;
        let b = &rhs.unit * self.p.pow((rhs.valuation - low) as u32) % &m;
        let s = (a + b) % &m;
        Self::from_scaled(&self.p, low, s, bound)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Normalize `value * p^low` known modulo p^bound.
    fn from_scaled(p: &BigUint, low: i64, value: BigUint, bound: i64) -> Self {
        if value.is_zero() {
            return Self::zero(p, bound);
        }
        let t = int_valuation(&value, p).expect("nonzero") as i64;
        let valuation = low + t;
        debug_assert!(valuation < bound);
        let prec = (bound - valuation) as u32;
        let unit = value / p.pow(t as u32) % p.pow(prec);
        debug_assert!(!unit.is_zero());
        Self {
            p: p.clone(),
            valuation,
            unit,
            prec,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_prime(rhs);
        if self.is_zero() || rhs.is_zero() {
            // O(p^a) * (u p^v + ...) = O(p^(a+v)); O(p^a) * O(p^b) = O(p^(a+b)).
            let a = if self.is_zero() {
                self.known_exp()
            } else {
                self.valuation
            };
            let b = if rhs.is_zero() {
                rhs.known_exp()
            } else {
                rhs.valuation
            };
            return Self::zero(&self.p, a + b);
        }
        let prec = self.prec.min(rhs.prec);
        let m = self.p.pow(prec);
        let unit = &self.unit * &rhs.unit % m;
        let valuation = self.valuation + rhs.valuation;
        assert!(
            valuation >= MIN_VALUATION,
            "product pole order {valuation} below supported minimum"
        );
        Self {
            p: self.p.clone(),
            valuation,
            unit,
            prec,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let valuation = -self.valuation;
        if valuation < MIN_VALUATION {
            return Err(Error::PoleTooDeep { v: valuation });
        }
        let m = unit_modulus(&self.p, self.prec);
        let unit = mod_inv(&BigInt::from(self.unit.clone()), &m)?;
        Ok(Self {
            p: self.p.clone(),
            valuation,
            unit: unit.value().clone(),
            prec: self.prec,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Forget information beyond p^bound.
    pub fn truncate_known(&self, bound: i64) -> Self {
        if bound >= self.known_exp() {
            return self.clone();
        }
        if self.is_zero() || self.valuation >= bound {
            return Self::zero(&self.p, bound.min(self.known_exp()));
        }
        let prec = (bound - self.valuation) as u32;
        Self {
            p: self.p.clone(),
            valuation: self.valuation,
            unit: &self.unit % self.p.pow(prec),
            prec,
        }
    }

    /// Does the value vanish modulo p^k? Errors when the tracked precision
    /// cannot decide.
    pub fn vanishes_mod(&self, k: i64) -> Result<bool> {
        if self.is_zero() {
            if self.known_exp() >= k {
                Ok(true)
            } else {
                Err(Error::InsufficientPrecision {
                    known: self.known_exp(),
                    need: k,
                })
            }
        } else {
            // The leading digit is genuinely nonzero, so the valuation is exact.
            Ok(self.valuation >= k)
        }
    }

    /// p-adic congruence at precision k.
    pub fn congruent(&self, rhs: &Self, k: i64) -> Result<bool> {
        self.sub(rhs).vanishes_mod(k)
    }

    /// Reduce to a residue mod p^k: requires valuation >= 0 and enough
    /// tracked precision.
    pub fn reduce(&self, m: &PrimePowerModulus) -> Result<Residue> {
        assert_eq!(&self.p, m.prime(), "prime mismatch in reduction");
        let k = m.exponent() as i64;
        if self.is_zero() {
            if self.known_exp() >= k {
                return Ok(m.zero());
            }
            return Err(Error::InsufficientPrecision {
                known: self.known_exp(),
                need: k,
            });
        }
        if self.valuation < 0 {
            return Err(Error::NegativeValuation {
                p: self.p.clone(),
                v: self.valuation,
            });
        }
        if self.known_exp() < k {
            return Err(Error::InsufficientPrecision {
                known: self.known_exp(),
                need: k,
            });
        }
        let value = &self.unit * self.p.pow(self.valuation as u32) % m.modulus();
        Ok(m.residue(&BigInt::from(value)))
    }
}

fn unit_modulus(p: &BigUint, prec: u32) -> PrimePowerModulus {
    // Unit arithmetic may need more digits than MAX_EXPONENT; build the
    // modulus directly since p was already validated upstream.
    PrimePowerModulus::new_unchecked(p.clone(), prec)
}

impl PrimePowerModulus {
    /// Internal constructor for unit-digit arithmetic at arbitrary
    /// precision; skips the primality check and the exponent cap.
    pub(crate) fn new_unchecked(p: BigUint, prec: u32) -> Self {
        let pk = p.pow(prec);
        let pk_u64 = pk.to_u64();
        let p_u64 = p.to_u64();
        Self {
            p,
            k: prec.min(u8::MAX as u32) as u8,
            pk,
            pk_u64,
            p_u64,
        }
    }
}

impl fmt::Display for PadicLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O({}^{})", self.p, self.known_exp());
        }
        write!(
            f,
            "{}*{}^{} + O({}^{})",
            self.unit,
            self.p,
            self.valuation,
            self.p,
            self.known_exp()
        )
    }
}
