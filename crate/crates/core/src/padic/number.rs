use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modular::{add_mod, checked_pow, inv_mod, mul_mod, pow_mod, split_p, sub_mod};
use crate::padic::PRational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Repr {
    /// Exactly zero.
    Zero,
    /// Zero to the known precision: the value is `O(p^abs)`.
    Vanishing { abs: i64 },
    /// `p^valuation * unit`, the unit known modulo `p^prec` (`modulus`).
    Unit {
        valuation: i64,
        unit: u64,
        prec: u32,
        modulus: u64,
    },
}

/// A p-adic number stored as an exact valuation and a unit known to a fixed
/// number of significant digits.
///
/// Multiplication and division keep the smaller relative precision of the two
/// operands. Addition aligns valuations and keeps whatever absolute precision
/// both operands share, so cancellation shows up as lost relative digits
/// instead of silently fabricated ones. When every known digit cancels the
/// result is a *vanishing* value `O(p^k)`, which is distinct from exact zero.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct PAdicNumber {
    p: u64,
    repr: Repr,
}

impl PAdicNumber {
    pub fn zero(p: u64) -> Self {
        Self { p, repr: Repr::Zero }
    }

    pub fn one(p: u64, prec: u32) -> Result<Self> {
        Self::from_parts(p, 0, 1, prec)
    }

    /// `O(p^abs)`.
    pub fn vanishing(p: u64, abs: i64) -> Self {
        Self {
            p,
            repr: Repr::Vanishing { abs },
        }
    }

    /// Build `p^valuation * unit` with `unit` reduced mod `p^prec`; `unit` must
    /// be prime to `p`.
    pub fn from_parts(p: u64, valuation: i64, unit: u64, prec: u32) -> Result<Self> {
        if prec == 0 {
            return Err(Error::InvalidInput("relative precision must be positive".into()));
        }
        let modulus = checked_pow(p, prec)?;
        let unit = unit % modulus;
        if unit.is_multiple_of(p) {
            return Err(Error::Invariant(format!("unit part {unit} divisible by {p}")));
        }
        Ok(Self {
            p,
            repr: Repr::Unit {
                valuation,
                unit,
                prec,
                modulus,
            },
        })
    }

    /// Interpret `r mod p^abs_prec` as a p-adic integer known to `abs_prec` digits.
    pub fn from_residue(p: u64, r: u64, abs_prec: u32) -> Result<Self> {
        let m = checked_pow(p, abs_prec)?;
        let r = r % m;
        if r == 0 {
            return Ok(Self::vanishing(p, abs_prec as i64));
        }
        let (v, u) = split_p(r as u128, p);
        Self::from_parts(p, v as i64, u as u64, abs_prec - v)
    }

    pub fn from_int(p: u64, n: i64, prec: u32) -> Result<Self> {
        Self::from_rational(&PRational::integer(n), p, prec)
    }

    /// Canonical embedding of a rational with denominator prime to `p`.
    pub fn from_rational(q: &PRational, p: u64, prec: u32) -> Result<Self> {
        q.require_p_integral(p)?;
        if q.is_zero() {
            return Ok(Self::zero(p));
        }
        let modulus = checked_pow(p, prec)?;
        let (v, u) = split_p(q.numer().unsigned_abs() as u128, p);
        let mut unit = (u % modulus as u128) as u64;
        if q.numer() < 0 {
            unit = sub_mod(0, unit, modulus);
        }
        let dinv = inv_mod(q.denom() as u64 % modulus, modulus).ok_or_else(|| Error::NotPIntegral {
            value: q.to_string(),
            p,
        })?;
        Self::from_parts(p, v as i64, mul_mod(unit, dinv, modulus), prec)
    }

    /// Embedding of an arbitrary-size rational; negative valuations allowed.
    pub fn from_big_rational(q: &BigRational, p: u64, prec: u32) -> Result<Self> {
        if q.is_zero() {
            return Ok(Self::zero(p));
        }
        let modulus = checked_pow(p, prec)?;
        let pb = BigInt::from(p);
        let strip = |x: &BigInt| {
            let mut x = x.abs();
            let mut v = 0i64;
            while (&x % &pb).is_zero() {
                x /= &pb;
                v += 1;
            }
            (v, x)
        };
        let (vn, un) = strip(q.numer());
        let (vd, ud) = strip(q.denom());
        let mb = BigInt::from(modulus);
        let red = |x: &BigInt| (x % &mb).to_u64().expect("reduced below modulus");
        let mut unit = red(&un);
        if q.numer().is_negative() {
            unit = sub_mod(0, unit, modulus);
        }
        let dinv = inv_mod(red(&ud), modulus).expect("stripped denominator is a unit");
        Self::from_parts(p, vn - vd, mul_mod(unit, dinv, modulus), prec)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `None` for zero (exact or vanishing).
    pub fn valuation(&self) -> Option<i64> {
        match self.repr {
            Repr::Unit { valuation, .. } => Some(valuation),
            _ => None,
        }
    }

    /// Unit part; 0 for zeros.
    pub fn unit(&self) -> u64 {
        match self.repr {
            Repr::Unit { unit, .. } => unit,
            _ => 0,
        }
    }

    /// Relative precision (significant digits of the unit); 0 for zeros.
    pub fn prec(&self) -> u32 {
        match self.repr {
            Repr::Unit { prec, .. } => prec,
            _ => 0,
        }
    }

    /// Absolute precision `valuation + prec`; `None` means exact (infinite).
    pub fn abs_prec(&self) -> Option<i64> {
        match self.repr {
            Repr::Zero => None,
            Repr::Vanishing { abs } => Some(abs),
            Repr::Unit { valuation, prec, .. } => Some(valuation + prec as i64),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// Exact zero or zero to all known digits.
    pub fn is_zero(&self) -> bool {
        !matches!(self.repr, Repr::Unit { .. })
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Lower bound on the valuation, counting vanishing values at their
    /// absolute precision. `i64::MAX` for exact zero.
    pub fn valuation_lower_bound(&self) -> i64 {
        match self.repr {
            Repr::Zero => i64::MAX,
            Repr::Vanishing { abs } => abs,
            Repr::Unit { valuation, .. } => valuation,
        }
    }

    /// Cap the relative precision at `prec`.
    pub fn with_prec(&self, prec: u32) -> Self {
        match self.repr {
            Repr::Unit {
                valuation,
                unit,
                prec: old,
                ..
            } if prec < old => {
                if prec == 0 {
                    return Self::vanishing(self.p, valuation);
                }
                let modulus = self.p.pow(prec);
                Self {
                    p: self.p,
                    repr: Repr::Unit {
                        valuation,
                        unit: unit % modulus,
                        prec,
                        modulus,
                    },
                }
            }
            _ => *self,
        }
    }

    /// Multiply by `p^k` (use a negative `k` to divide); the unit is untouched.
    pub fn shift(&self, k: i64) -> Self {
        let repr = match self.repr {
            Repr::Zero => Repr::Zero,
            Repr::Vanishing { abs } => Repr::Vanishing { abs: abs + k },
            Repr::Unit {
                valuation,
                unit,
                prec,
                modulus,
            } => Repr::Unit {
                valuation: valuation + k,
                unit,
                prec,
                modulus,
            },
        };
        Self { p: self.p, repr }
    }

    pub fn inv(&self) -> Result<Self> {
        match self.repr {
            Repr::Unit {
                valuation,
                unit,
                prec,
                modulus,
            } => Ok(Self {
                p: self.p,
                repr: Repr::Unit {
                    valuation: -valuation,
                    unit: inv_mod(unit, modulus).expect("unit is invertible"),
                    prec,
                    modulus,
                },
            }),
            _ => Err(Error::DivisionByZero),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.inv()?)
    }

    pub fn pow(&self, e: u64) -> Self {
        match self.repr {
            Repr::Zero => {
                if e == 0 {
                    Self::one(self.p, 1).expect("p^1 fits")
                } else {
                    *self
                }
            }
            Repr::Vanishing { abs } => {
                if e == 0 {
                    Self::one(self.p, 1).expect("p^1 fits")
                } else {
                    Self::vanishing(self.p, abs.saturating_mul(e as i64))
                }
            }
            Repr::Unit {
                valuation,
                unit,
                prec,
                modulus,
            } => Self {
                p: self.p,
                repr: Repr::Unit {
                    valuation: valuation * e as i64,
                    unit: pow_mod(unit, e, modulus),
                    prec,
                    modulus,
                },
            },
        }
    }

    /// Least non-negative residue modulo `p^m`. Requires the value to be a
    /// p-adic integer known to at least `m` digits.
    pub fn residue(&self, m: u32) -> Result<u64> {
        let modulus = checked_pow(self.p, m)?;
        match self.repr {
            Repr::Zero => Ok(0),
            Repr::Vanishing { abs } => {
                if abs >= m as i64 {
                    Ok(0)
                } else {
                    Err(Error::PrecisionBudget {
                        needed: m as i64,
                        available: abs,
                    })
                }
            }
            Repr::Unit {
                valuation, unit, prec, ..
            } => {
                if valuation < 0 {
                    return Err(Error::Invariant(format!(
                        "residue of non-integral p-adic number (valuation {valuation})"
                    )));
                }
                if valuation >= m as i64 {
                    return Ok(0);
                }
                let abs = valuation + prec as i64;
                if abs < m as i64 {
                    return Err(Error::PrecisionBudget {
                        needed: m as i64,
                        available: abs,
                    });
                }
                let pv = self.p.pow(valuation as u32);
                Ok(mul_mod(unit % modulus, pv, modulus))
            }
        }
    }

    /// `self ≡ other (mod p^m)` on the digits both know; errors if either side
    /// is known to fewer than `m` absolute digits.
    pub fn congruent(&self, other: &Self, m: u32) -> Result<bool> {
        let d = *self - *other;
        if d.valuation_lower_bound() >= m as i64 {
            return Ok(true);
        }
        match d.repr {
            Repr::Unit { .. } => Ok(false),
            Repr::Vanishing { abs } => Err(Error::PrecisionBudget {
                needed: m as i64,
                available: abs,
            }),
            Repr::Zero => Ok(true),
        }
    }

    /// `self + O(p^abs)`.
    fn absorb_vanishing(self, abs: i64) -> Self {
        match self.valuation() {
            Some(v) if v < abs => self.with_prec((abs - v) as u32),
            _ => Self::vanishing(self.p, abs),
        }
    }

    fn assert_same_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing p-adic numbers for different primes");
    }
}

impl Add for PAdicNumber {
    type Output = PAdicNumber;

    fn add(self, rhs: PAdicNumber) -> PAdicNumber {
        self.assert_same_prime(&rhs);
        let p = self.p;
        let (x, y) = match (self.repr, rhs.repr) {
            (Repr::Zero, _) => return rhs,
            (_, Repr::Zero) => return self,
            (Repr::Vanishing { abs: a }, Repr::Vanishing { abs: b }) => {
                return Self::vanishing(p, a.min(b));
            }
            (Repr::Vanishing { abs }, Repr::Unit { .. }) => return rhs.absorb_vanishing(abs),
            (Repr::Unit { .. }, Repr::Vanishing { abs }) => return self.absorb_vanishing(abs),
            (x, y) => (x, y),
        };
        let (
            Repr::Unit {
                valuation: v1,
                unit: u1,
                prec: r1,
                ..
            },
            Repr::Unit {
                valuation: v2,
                unit: u2,
                prec: r2,
                ..
            },
        ) = (x, y)
        else {
            unreachable!()
        };
        let abs = (v1 + r1 as i64).min(v2 + r2 as i64);
        let v = v1.min(v2);
        if abs <= v {
            return Self::vanishing(p, abs);
        }
        let span = (abs - v) as u32;
        let modulus = p.pow(span);
        let lift = |u: u64, w: i64| {
            let k = (w - v) as u32;
            if k >= span {
                0
            } else {
                mul_mod(u % modulus, p.pow(k), modulus)
            }
        };
        let s = add_mod(lift(u1, v1), lift(u2, v2), modulus);
        if s == 0 {
            return Self::vanishing(p, abs);
        }
        let (w, u) = split_p(s as u128, p);
        let prec = span - w;
        let modulus = p.pow(prec);
        Self {
            p,
            repr: Repr::Unit {
                valuation: v + w as i64,
                unit: u as u64 % modulus,
                prec,
                modulus,
            },
        }
    }
}

impl Neg for PAdicNumber {
    type Output = PAdicNumber;

    fn neg(self) -> PAdicNumber {
        match self.repr {
            Repr::Unit {
                valuation,
                unit,
                prec,
                modulus,
            } => Self {
                p: self.p,
                repr: Repr::Unit {
                    valuation,
                    unit: sub_mod(0, unit, modulus),
                    prec,
                    modulus,
                },
            },
            _ => self,
        }
    }
}

impl Sub for PAdicNumber {
    type Output = PAdicNumber;

    fn sub(self, rhs: PAdicNumber) -> PAdicNumber {
        self + (-rhs)
    }
}

impl Mul for PAdicNumber {
    type Output = PAdicNumber;

    fn mul(self, rhs: PAdicNumber) -> PAdicNumber {
        self.assert_same_prime(&rhs);
        let p = self.p;
        match (self.repr, rhs.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Self::zero(p),
            (Repr::Vanishing { abs: a }, Repr::Vanishing { abs: b }) => Self::vanishing(p, a + b),
            (Repr::Vanishing { abs }, Repr::Unit { valuation, .. })
            | (Repr::Unit { valuation, .. }, Repr::Vanishing { abs }) => Self::vanishing(p, abs + valuation),
            (
                Repr::Unit {
                    valuation: v1,
                    unit: u1,
                    prec: r1,
                    modulus: m1,
                },
                Repr::Unit {
                    valuation: v2,
                    unit: u2,
                    prec: r2,
                    modulus: m2,
                },
            ) => {
                let (prec, modulus) = if r1 <= r2 { (r1, m1) } else { (r2, m2) };
                Self {
                    p,
                    repr: Repr::Unit {
                        valuation: v1 + v2,
                        unit: mul_mod(u1 % modulus, u2 % modulus, modulus),
                        prec,
                        modulus,
                    },
                }
            }
        }
    }
}

impl<'a> Mul<&'a PAdicNumber> for PAdicNumber {
    type Output = PAdicNumber;
    fn mul(self, rhs: &'a PAdicNumber) -> PAdicNumber {
        self * *rhs
    }
}

impl<'a> Add<&'a PAdicNumber> for PAdicNumber {
    type Output = PAdicNumber;
    fn add(self, rhs: &'a PAdicNumber) -> PAdicNumber {
        self + *rhs
    }
}

impl fmt::Debug for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Vanishing { abs } => write!(f, "O({}^{})", self.p, abs),
            Repr::Unit {
                valuation, unit, prec, ..
            } => {
                write!(
                    f,
                    "{}^{} * {} + O({}^{})",
                    self.p,
                    valuation,
                    unit,
                    self.p,
                    valuation + prec as i64
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> PRational {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_rational_examples() {
        let x = PAdicNumber::from_rational(&q("1/2"), 5, 2).unwrap();
        assert_eq!((x.valuation(), x.unit()), (Some(0), 13));
        assert!(PAdicNumber::from_rational(&q("0"), 7, 3).unwrap().is_exact_zero());
        let y = PAdicNumber::from_rational(&q("50/3"), 5, 2).unwrap();
        assert_eq!((y.valuation(), y.unit()), (Some(2), 9));
        assert!(matches!(
            PAdicNumber::from_rational(&q("1/5"), 5, 2),
            Err(Error::NotPIntegral { .. })
        ));
    }

    #[test]
    fn negative_rationals() {
        let x = PAdicNumber::from_rational(&q("-13/256"), 3, 4).unwrap();
        assert_eq!(x.residue(1).unwrap(), 2);
        let y = PAdicNumber::from_rational(&q("-1"), 5, 3).unwrap();
        assert_eq!(y.residue(3).unwrap(), 124);
    }

    #[test]
    fn addition_tracks_cancellation() {
        let p = 3;
        let a = PAdicNumber::from_rational(&q("25/256"), p, 6).unwrap();
        let b = PAdicNumber::from_rational(&q("1/4"), p, 6).unwrap();
        let d = a - b; // -39/256, valuation 1
        assert_eq!(d.valuation(), Some(1));
        assert_eq!(d.prec(), 5);
        assert_eq!(d.abs_prec(), Some(6));
        let e = a - a;
        assert!(e.is_zero() && !e.is_exact_zero());
        assert_eq!(e.abs_prec(), Some(6));
    }

    #[test]
    fn shift_keeps_unit() {
        let x = PAdicNumber::from_rational(&q("18"), 3, 4).unwrap();
        let y = x.shift(-2);
        assert_eq!((y.valuation(), y.unit(), y.prec()), (Some(0), 2, 4));
    }

    #[test]
    fn big_rational_matches_small() {
        let big = BigRational::new(BigInt::from(-50), BigInt::from(27));
        let a = PAdicNumber::from_big_rational(&big, 5, 4).unwrap();
        let b = PAdicNumber::from_rational(&q("-50/27"), 5, 4).unwrap();
        assert_eq!(a, b);
        let c = PAdicNumber::from_big_rational(&BigRational::new(1.into(), 75.into()), 5, 3).unwrap();
        assert_eq!(c.valuation(), Some(-2));
    }

    #[test]
    fn residue_requires_precision() {
        let x = PAdicNumber::from_parts(5, 0, 3, 2).unwrap();
        assert_eq!(x.residue(2).unwrap(), 3);
        assert!(matches!(x.residue(3), Err(Error::PrecisionBudget { .. })));
        let v = PAdicNumber::vanishing(5, 4);
        assert_eq!(v.residue(4).unwrap(), 0);
        assert!(v.residue(5).is_err());
    }

    #[test]
    fn vanishing_arithmetic() {
        let p = 7;
        let z = PAdicNumber::vanishing(p, 3);
        let x = PAdicNumber::from_parts(p, 1, 2, 5).unwrap();
        let s = x + z;
        assert_eq!((s.valuation(), s.prec()), (Some(1), 2));
        assert_eq!((x * z).abs_prec(), Some(4));
        assert!(z.inv().is_err());
    }
}
