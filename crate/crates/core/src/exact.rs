//! Coefficient formulas over exact big rationals.
//!
//! Nothing here touches the modular kernels, so it doubles as an oracle for
//! [`crate::hyperseries`] and as the arithmetic of the congruence suites.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hyperseries::HGParams;
use crate::modular::{checked_pow, inv_mod, mul_mod};
use crate::padic::PRational;

pub fn big(q: &PRational) -> BigRational {
    BigRational::new(BigInt::from(q.numer()), BigInt::from(q.denom()))
}

/// `C_n = Π(a_i)_n / (Π(b_j)_n · n!)` for `n < len`.
pub fn hypergeometric_coefficients(params: &HGParams, len: usize) -> Vec<BigRational> {
    let a: Vec<BigRational> = params.a.iter().map(big).collect();
    let mut b: Vec<BigRational> = params.b.iter().map(big).collect();
    b.push(BigRational::one());
    let mut out = Vec::with_capacity(len);
    let mut c = BigRational::one();
    for n in 0..len {
        if n > 0 {
            let k = BigRational::from_integer(BigInt::from(n - 1));
            for x in &a {
                c *= x + &k;
            }
            for x in &b {
                c /= x + &k;
            }
        }
        out.push(c.clone());
    }
    out
}

/// `C_n`, `C^{(1)}_n` and `D_n` (`n ≥ 1`) of one parameter set.
#[derive(Clone, Debug)]
pub struct ExactSeries {
    pub p: u64,
    pub c: Vec<BigRational>,
    pub c1: Vec<BigRational>,
    frobenius: BigRational,
}

impl ExactSeries {
    /// Coefficients for `n < len`.
    pub fn new(params: &HGParams, len: usize) -> Self {
        let p = params.p as usize;
        Self {
            p: params.p,
            c: hypergeometric_coefficients(params, len),
            c1: hypergeometric_coefficients(&params.dwork_shift(), len.div_ceil(p).max(1)),
            frobenius: big(&params.c),
        }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `D_n = (C_n − c^{n/p}·C^{(1)}_{n/p}) / n`, the second term present only when `p | n`.
    pub fn d(&self, n: usize) -> BigRational {
        assert!(n >= 1, "D_0 is not a rational coefficient");
        let p = self.p as usize;
        let mut x = self.c[n].clone();
        if n.is_multiple_of(p) {
            let q = n / p;
            x -= num_traits::pow(self.frobenius.clone(), q) * &self.c1[q];
        }
        x / BigRational::from_integer(BigInt::from(n))
    }
}

/// `v_p(q)`, `None` for zero.
pub fn valuation(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |x: &BigInt| {
        let mut x = x.abs();
        let mut v = 0i64;
        loop {
            let (d, r) = x.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            x = d;
            v += 1;
        }
    };
    Some(count(q.numer()) - count(q.denom()))
}

/// Least non-negative residue of the p-adic integer `q` modulo `p^m`.
pub fn reduce(q: &BigRational, p: u64, m: u32) -> Result<u64> {
    if valuation(q, p).is_some_and(|v| v < 0) {
        return Err(Error::NotPIntegral {
            value: q.to_string(),
            p,
        });
    }
    let modulus = checked_pow(p, m)?;
    let big_m = BigInt::from(modulus);
    let to_u64 = |x: &BigInt| x.mod_floor(&big_m).to_u64().expect("reduced below modulus");
    let den = to_u64(q.denom());
    let inv = inv_mod(den, modulus).ok_or_else(|| Error::NotPIntegral {
        value: q.to_string(),
        p,
    })?;
    Ok(mul_mod(to_u64(q.numer()), inv, modulus))
}
