use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rational number, used for hypergeometric parameters, Frobenius constants
/// and evaluation points. Always kept in lowest terms with a positive
/// denominator.
///
/// Whether the value lies in ℤ_(p) depends on the prime, so that check lives in
/// [`PRational::is_p_integral`] rather than in the type.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct PRational(Ratio<i64>);

impl PRational {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidInput(format!("zero denominator in {numer}/{denom}")));
        }
        Ok(Self(Ratio::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        Self(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn one() -> Self {
        Self(Ratio::one())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True for 0, −1, −2, …
    pub fn is_nonpositive_integer(&self) -> bool {
        self.is_integer() && self.numer() <= 0
    }

    /// Denominator coprime to `p`.
    pub fn is_p_integral(&self, p: u64) -> bool {
        !(self.denom() as u64).is_multiple_of(p)
    }

    pub fn require_p_integral(&self, p: u64) -> Result<()> {
        if self.is_p_integral(p) {
            Ok(())
        } else {
            Err(Error::NotPIntegral {
                value: self.to_string(),
                p,
            })
        }
    }

    /// `v_p` of the value; `None` for zero.
    pub fn valuation(&self, p: u64) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let vp = |mut x: u64| {
            let mut v = 0i64;
            while x.is_multiple_of(p) {
                x /= p;
                v += 1;
            }
            v
        };
        Some(vp(self.numer().unsigned_abs()) - vp(self.denom() as u64))
    }

    pub fn add_int(&self, n: i64) -> Self {
        Self(self.0 + n)
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn lcm_denominator(values: &[PRational]) -> i64 {
        values.iter().fold(1, |acc, v| acc.lcm(&v.denom()))
    }
}

impl From<Ratio<i64>> for PRational {
    fn from(r: Ratio<i64>) -> Self {
        Self(r)
    }
}

impl From<i64> for PRational {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl fmt::Display for PRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for PRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Text format `u/v`, with `v` optional (default 1) and the sign carried on `u`.
impl FromStr for PRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("malformed rational {s:?}"));
        let s = s.trim();
        let (u, v) = match s.split_once('/') {
            Some((u, v)) => (u.trim(), v.trim()),
            None => (s, "1"),
        };
        if v.starts_with(['-', '+']) {
            return Err(bad());
        }
        let u: i64 = u.parse().map_err(|_| bad())?;
        let v: i64 = v.parse().map_err(|_| bad())?;
        Self::new(u, v)
    }
}

impl From<PRational> for String {
    fn from(q: PRational) -> String {
        q.to_string()
    }
}

impl TryFrom<String> for PRational {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for PRational {
            type Output = PRational;
            fn $f(self, rhs: PRational) -> PRational {
                PRational(self.0.$f(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for PRational {
    type Output = PRational;
    fn neg(self) -> PRational {
        PRational(-self.0)
    }
}
