//! Formal λ-series for the Frobenius structure on the eigenspaces of the
//! hypergeometric curve `(1 − x^N)(1 − y^N) = t`, with `λ = 1 − t`.
//!
//! Everything is solved over ℚ and reduced p-adically at the end. The only
//! transcendental input is `G(0) = ψ̃_p(a_i) + ψ̃_p(1 − a_i)`, so series that
//! depend on it are carried as `A + G(0)·B` with `A`, `B` rational until
//! reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::big;
use crate::hyperseries::{special_value, HGParams};
use crate::modular::{checked_pow, is_prime};
use crate::padic::{psi_tilde, PAdicNumber, PRational};

/// Coefficient ring of a [`Series`].
pub trait Scalar:
    Clone + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// The integer `n` in the same ring (and precision) as `self`.
    fn int_like(&self, n: i64) -> Self;
    fn inverse(&self) -> Result<Self>;
    fn is_exact_zero(&self) -> bool;
}

impl Scalar for BigRational {
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for PAdicNumber {
    fn int_like(&self, n: i64) -> Self {
        PAdicNumber::from_int(self.prime(), n, self.prec().max(1)).expect("precision already validated")
    }

    fn inverse(&self) -> Result<Self> {
        self.inv()
    }

    fn is_exact_zero(&self) -> bool {
        PAdicNumber::is_exact_zero(self)
    }
}

/// Power series in λ known modulo `λ^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
    /// `1` in the coefficient ring; fixes p and precision for p-adic series.
    one: T,
}

pub type LambdaSeries = Series<PAdicNumber>;
pub type RationalSeries = Series<BigRational>;

impl<T: Scalar> Series<T> {
    pub fn new(coeffs: Vec<T>, one: T) -> Self {
        Self { coeffs, one }
    }

    pub fn zero(order: usize, one: T) -> Self {
        Self {
            coeffs: vec![one.int_like(0); order],
            one,
        }
    }

    /// `c_0 + c_1·λ` truncated at `order`.
    pub fn linear(c0: i64, c1: i64, order: usize, one: T) -> Self {
        let mut s = Self::zero(order, one);
        if order > 0 {
            s.coeffs[0] = s.one.int_like(c0);
        }
        if order > 1 {
            s.coeffs[1] = s.one.int_like(c1);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order);
        self
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        Self {
            coeffs,
            one: self.one.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
            one: self.one.clone(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            one: self.one.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![self.one.int_like(0); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self {
            coeffs,
            one: self.one.clone(),
        }
    }

    /// `1/f`; the constant term must be invertible.
    pub fn reciprocal(&self) -> Result<Self> {
        let order = self.order();
        if order == 0 {
            return Ok(self.clone());
        }
        let inv0 = self.coeffs[0].inverse()?;
        let mut out: Vec<T> = Vec::with_capacity(order);
        out.push(inv0.clone());
        for n in 1..order {
            let mut acc = self.one.int_like(0);
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self {
            coeffs: out,
            one: self.one.clone(),
        })
    }

    /// `df/dλ`, one order shorter.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * self.one.int_like(k as i64))
            .collect();
        Self {
            coeffs,
            one: self.one.clone(),
        }
    }

    /// `f(λ^k)`, keeping the same order.
    pub fn substitute_power(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![self.one.int_like(0); order];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k >= order {
                break;
            }
            coeffs[i * k] = c.clone();
        }
        Self {
            coeffs,
            one: self.one.clone(),
        }
    }

    /// `λ^k·f`, keeping the same order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![self.one.int_like(0); k.min(order)];
        coeffs.extend(self.coeffs.iter().take(order.saturating_sub(k)).cloned());
        Self {
            coeffs,
            one: self.one.clone(),
        }
    }

    /// `f/λ`; fails unless the constant term is exactly zero.
    pub fn divide_by_lambda(&self) -> Result<Self> {
        match self.coeffs.first() {
            Some(c) if !c.is_exact_zero() => Err(Error::Invariant(format!("division by λ with constant term {c:?}"))),
            _ => Ok(Self {
                coeffs: self.coeffs.iter().skip(1).cloned().collect(),
                one: self.one.clone(),
            }),
        }
    }

    /// `∫_0^λ f + constant`, one order longer.
    pub fn integrate(&self, constant: T) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(constant);
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() * self.one.int_like(k as i64 + 1).inverse()?);
        }
        Ok(Self {
            coeffs,
            one: self.one.clone(),
        })
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact_zero)
    }
}

impl RationalSeries {
    pub fn rational(coeffs: Vec<BigRational>) -> Self {
        Self::new(coeffs, BigRational::one())
    }

    /// Reduce every coefficient to `p^v·u` with `prec` significant digits.
    pub fn reduce(&self, p: u64, prec: u32) -> Result<LambdaSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| PAdicNumber::from_big_rational(c, p, prec))
            .collect::<Result<_>>()?;
        Ok(LambdaSeries::new(coeffs, PAdicNumber::one(p, prec)?))
    }
}

impl LambdaSeries {
    /// `v_p` of each coefficient (`None` for zero).
    pub fn valuation_profile(&self) -> Vec<Option<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_zero() { None } else { c.valuation() })
            .collect()
    }
}

impl fmt::Display for LambdaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})λ")?,
                _ => write!(f, "({c})λ^{k}")?,
            }
        }
        write!(f, " + O(λ^{})", self.order())
    }
}

/// The eigenspace `i` of the curve for `N` and `p`, paired with the index `j`
/// that Frobenius maps it to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveEigenData {
    pub n: i64,
    pub i: i64,
    pub p: u64,
    /// Unique `j ∈ {1..N−1}` with `pj ≡ i mod N`.
    pub j: i64,
    /// `(−1)^{(pj − i)/N}`.
    pub sign: i64,
    /// `a_i = 1 − i/N`.
    pub a_i: PRational,
    /// `a_j = 1 − j/N`.
    pub a_j: PRational,
}

impl CurveEigenData {
    pub fn new(n: i64, i: i64, p: u64) -> Result<Self> {
        if n < 2 || !(1..n).contains(&i) {
            return Err(Error::InvalidInput(format!(
                "need N ≥ 2 and 1 ≤ i ≤ N − 1, got N = {n}, i = {i}"
            )));
        }
        if !is_prime(p) || p as i64 <= n {
            return Err(Error::InvalidInput(format!("need a prime p > N, got p = {p}")));
        }
        let j = (1..n)
            .find(|&j| (p as i64 * j - i).rem_euclid(n) == 0)
            .expect("p is invertible mod N");
        let sign = if ((p as i64 * j - i) / n) % 2 == 0 { 1 } else { -1 };
        let a = |x: i64| PRational::one() - PRational::new(x, n).expect("N > 0");
        Ok(Self {
            n,
            i,
            p,
            j,
            sign,
            a_i: a(i),
            a_j: a(j),
        })
    }

    /// Parameters `(a_i, 1 − a_i; 1)` of the normalizing hypergeometric series.
    pub fn params(&self) -> Result<HGParams> {
        HGParams::new(
            vec![self.a_i, PRational::one() - self.a_i],
            vec![PRational::one()],
            self.p,
        )
    }
}

/// `F_{a,1−a}(λ) = Σ (a)_n(1−a)_n/(n!)² λ^n` over ℚ.
pub fn hg_series_rational(a: &PRational, order: usize) -> RationalSeries {
    let a = big(a);
    let b = BigRational::one() - &a;
    let mut coeffs = Vec::with_capacity(order);
    let mut c = BigRational::one();
    for n in 0..order {
        if n > 0 {
            let k = BigRational::from_integer(BigInt::from(n - 1));
            let nn = BigRational::from_integer(BigInt::from(n));
            c = c * (&a + &k) * (&b + &k) / (&nn * &nn);
        }
        coeffs.push(c.clone());
    }
    RationalSeries::rational(coeffs)
}

pub fn hg_series_lambda(a: &PRational, order: usize, p: u64, prec: u32) -> Result<LambdaSeries> {
    a.require_p_integral(p)?;
    hg_series_rational(a, order).reduce(p, prec)
}

/// `λ(1−λ)F″ + (1−2λ)F′ − a(1−a)F` over ℚ, to order `M − 2`.
pub fn hg_ode_residual_rational(a: &PRational, order: usize) -> RationalSeries {
    let f = hg_series_rational(a, order);
    let keep = order.saturating_sub(2);
    let one = BigRational::one();
    let d1 = f.derivative().truncate(keep);
    let d2 = f.derivative().derivative();
    let lam = RationalSeries::linear(0, 1, keep, one.clone());
    let one_minus = RationalSeries::linear(1, -1, keep, one.clone());
    let one_minus_2 = RationalSeries::linear(1, -2, keep, one.clone());
    let ab = big(a) * (BigRational::one() - big(a));
    lam.mul(&one_minus)
        .mul(&d2)
        .add(&one_minus_2.mul(&d1))
        .sub(&f.truncate(keep).scale(&ab))
}

pub fn hg_ode_residual(a: &PRational, order: usize, p: u64, prec: u32) -> Result<LambdaSeries> {
    a.require_p_integral(p)?;
    hg_ode_residual_rational(a, order).reduce(p, prec)
}

/// `1/((1−λ)F_a(λ)²)` over ℚ.
fn normalized_reciprocal(a: &PRational, order: usize) -> Result<RationalSeries> {
    let f = hg_series_rational(a, order);
    let one_minus = RationalSeries::linear(1, -1, order, BigRational::one());
    one_minus.mul(&f).mul(&f).reciprocal()
}

/// `λ^{p−1}·F_{a_j}(λ^p)/(1−λ^p)`, the common factor of both Frobenius terms
/// once `p^{−1}·dλ^p/dλ = λ^{p−1}` is simplified.
fn frobenius_term(data: &CurveEigenData, order: usize) -> Result<RationalSeries> {
    let p = data.p as usize;
    let one = BigRational::one();
    let fj = hg_series_rational(&data.a_j, order).substitute_power(p);
    let geometric = RationalSeries::linear(1, -1, order, one.clone())
        .reciprocal()?
        .substitute_power(p);
    Ok(fj.mul(&geometric).shift(p - 1))
}

/// Rational part of `G_i^{(τ)}` (constant term 0) and the bracket it integrates.
fn g_tau_rational(data: &CurveEigenData, order: usize) -> Result<(RationalSeries, RationalSeries)> {
    let bracket = normalized_reciprocal(&data.a_i, order)?
        .sub(&normalized_reciprocal(&data.a_j, order)?.substitute_power(data.p as usize));
    if !bracket.coeff(0).is_zero() {
        return Err(Error::Invariant(format!(
            "G bracket has constant term {}",
            bracket.coeff(0)
        )));
    }
    let g = bracket.divide_by_lambda()?.integrate(BigRational::zero())?;
    Ok((g, bracket))
}

/// `G(0) = ψ̃_p(a_i) + ψ̃_p(1 − a_i) mod p^prec`.
pub fn g_tau_constant(data: &CurveEigenData, prec: u32) -> Result<u64> {
    let modulus = checked_pow(data.p, prec)?;
    Ok((psi_tilde(&data.a_i, data.p, prec)? + psi_tilde(&(PRational::one() - data.a_i), data.p, prec)?) % modulus)
}

/// `G_i^{(τ)}` to order `M`.
pub fn solve_g_tau(data: &CurveEigenData, order: usize, prec: u32) -> Result<LambdaSeries> {
    let (g, _) = g_tau_rational(data, order)?;
    let mut out = g.reduce(data.p, prec)?;
    out.coeffs[0] = PAdicNumber::from_residue(data.p, g_tau_constant(data, prec)?, prec)?;
    Ok(out)
}

/// Exact pieces of `E_1` and `E_2 = E2_rational + G(0)·E2_linear`, plus the
/// `λ^{−1}` coefficient of `dE_2/dλ` before division.
#[derive(Clone, Debug)]
pub struct ESolution {
    pub e1: RationalSeries,
    pub e2_rational: RationalSeries,
    pub e2_linear: RationalSeries,
    pub e2_residue: BigRational,
}

/// Solve both ODEs over ℚ with `E_1(0) = 0` and `E_2(0) = 0`.
pub fn solve_e_tau_exact(data: &CurveEigenData, order: usize) -> Result<ESolution> {
    if order < data.p as usize {
        return Err(Error::InvalidInput(format!(
            "need M ≥ p, got M = {order}, p = {}",
            data.p
        )));
    }
    let one = BigRational::one();
    let sign = BigRational::from_integer(BigInt::from(data.sign));
    let h = frobenius_term(data, order)?;
    let fi = hg_series_rational(&data.a_i, order);
    let geometric = RationalSeries::linear(1, -1, order, one.clone()).reciprocal()?;

    let de1 = fi.mul(&geometric).sub(&h.scale(&sign));
    let e1 = de1.truncate(order - 1).integrate(BigRational::zero())?;

    // E_1/(λ(1−λ)F²): the λ^{-1} coefficient is E_1(0)/F(0)², forced to zero.
    let e2_residue = e1.coeff(0).clone();
    let pole = e1
        .divide_by_lambda()?
        .mul(&normalized_reciprocal(&data.a_i, order - 1)?);
    let (g, _) = g_tau_rational(data, order)?;
    let hs = h.scale(&sign).truncate(order - 1);
    let de2_rational = pole.sub(&hs.mul(&g.truncate(order - 1)));
    let e2_rational = de2_rational.integrate(BigRational::zero())?;
    let e2_linear = hs.neg().integrate(BigRational::zero())?;
    Ok(ESolution {
        e1,
        e2_rational,
        e2_linear,
        e2_residue,
    })
}

/// `(E_1, E_2)` reduced p-adically.
pub fn solve_e_tau(data: &CurveEigenData, order: usize, prec: u32) -> Result<(LambdaSeries, LambdaSeries)> {
    let sol = solve_e_tau_exact(data, order)?;
    let e1 = sol.e1.reduce(data.p, prec)?;
    let g0 = PAdicNumber::from_residue(data.p, g_tau_constant(data, prec)?, prec)?;
    let e2 = sol
        .e2_rational
        .reduce(data.p, prec)?
        .add(&sol.e2_linear.reduce(data.p, prec)?.scale(&g0));
    Ok((e1, e2))
}

/// `ε_1 = F^{−1}E_1 + (λ−λ²)F′E_2` and `ε_2 = −(1−a_i)(λ−λ²)F·E_2`.
pub fn epsilon_from_e(
    data: &CurveEigenData,
    e1: &LambdaSeries,
    e2: &LambdaSeries,
    order: usize,
    prec: u32,
) -> Result<(LambdaSeries, LambdaSeries)> {
    let p = data.p;
    let f = hg_series_lambda(&data.a_i, order + 1, p, prec)?;
    let df = f.derivative();
    let f = f.truncate(order);
    let one = PAdicNumber::one(p, prec)?;
    let lam = LambdaSeries::linear(0, 1, order, one);
    let lam = lam.sub(&lam.shift(1));
    let e1 = e1.clone().truncate(order);
    let e2 = e2.clone().truncate(order);
    let eps1 = f.reciprocal()?.mul(&e1).add(&lam.mul(&df).mul(&e2));
    let coef = PAdicNumber::from_rational(&(PRational::one() - data.a_i), p, prec)?;
    let eps2 = lam.mul(&f).mul(&e2).scale(&-coef);
    Ok((eps1, eps2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointReport {
    pub params: String,
    pub value: u64,
    pub modulus: u64,
    pub passed: bool,
}

/// The special value of `(1 − i/N, i/N; 1)` at `t = 1`, which must vanish.
pub fn endpoint_vanishing_crosscheck(data: &CurveEigenData, m: u32) -> Result<EndpointReport> {
    if (data.p as i64 - 1) % data.n != 0 {
        return Err(Error::InvalidInput(format!(
            "need N | p − 1, got N = {}, p = {}",
            data.n, data.p
        )));
    }
    let params = data.params()?;
    let r = special_value(&params, &PRational::one(), m)?;
    Ok(EndpointReport {
        params: params.to_string(),
        value: r.value,
        modulus: r.modulus,
        passed: r.value == 0,
    })
}

/// Outcome of one series assertion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, r: Result<String>) -> SeriesCheck {
    match r {
        Ok(detail) => SeriesCheck {
            name,
            passed: true,
            detail,
        },
        Err(e) => SeriesCheck {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(msg()))
    }
}

/// Hypergeometric ODE for `F_{a_i}` and `F_{a_j}`, exactly zero to order `M − 2`.
pub fn check_ode(data: &CurveEigenData, order: usize) -> SeriesCheck {
    outcome(
        "ode_residual",
        (|| {
            for a in [data.a_i, data.a_j] {
                let r = hg_ode_residual_rational(&a, order);
                ensure(r.is_exact_zero(), || {
                    format!("residual for a = {a} is nonzero: {:?}", r.coeffs())
                })?;
            }
            Ok(format!("zero to order {}", order.saturating_sub(2)))
        })(),
    )
}

/// The remaining structural assertions of the series solution.
pub fn check_series(data: &CurveEigenData, order: usize, prec: u32) -> Vec<SeriesCheck> {
    let bracket = outcome(
        "g_bracket_constant",
        g_tau_rational(data, order).map(|(_, b)| format!("bracket = {}·λ + …", b.coeff(1))),
    );
    let sol = solve_e_tau_exact(data, order);
    let pole = outcome(
        "e2_pole_free",
        sol.as_ref().map_err(Clone::clone).and_then(|s| {
            ensure(s.e2_residue.is_zero(), || format!("λ^-1 coefficient {}", s.e2_residue))?;
            Ok("no λ^-1 term".to_string())
        }),
    );
    let eps = solve_e_tau(data, order, prec).and_then(|(e1, e2)| epsilon_from_e(data, &e1, &e2, order, prec));
    let (eps1, eps2) = match eps {
        Ok((a, b)) => (
            outcome(
                "eps1_at_zero",
                ensure(a.coeff(0).is_exact_zero(), || format!("ε1(0) = {}", a.coeff(0))).map(|_| "ε1(0) = 0".into()),
            ),
            outcome(
                "eps2_at_zero",
                ensure(b.coeff(0).is_exact_zero(), || format!("ε2(0) = {}", b.coeff(0))).map(|_| "ε2(0) = 0".into()),
            ),
        ),
        Err(e) => (outcome("eps1_at_zero", Err(e.clone())), outcome("eps2_at_zero", Err(e))),
    };
    vec![bracket, pole, eps1, eps2]
}

/// The endpoint cross-check as a [`SeriesCheck`].
pub fn check_endpoint(data: &CurveEigenData, m: u32) -> SeriesCheck {
    outcome(
        "endpoint_vanishing",
        endpoint_vanishing_crosscheck(data, m).and_then(|r| {
            ensure(r.passed, || {
                format!("special value of {} is {} mod {}", r.params, r.value, r.modulus)
            })?;
            Ok(format!("{} at t=1 is 0 mod {}", r.params, r.modulus))
        }),
    )
}

/// Default truncation order `3p`.
pub fn default_order(p: u64) -> usize {
    3 * p as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> PRational {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eigen_data() {
        let d = CurveEigenData::new(5, 2, 11).unwrap();
        assert_eq!((d.j, d.sign), (2, 1));
        let d = CurveEigenData::new(6, 1, 7).unwrap();
        assert_eq!((d.j, d.sign), (1, -1));
        let d = CurveEigenData::new(3, 1, 5).unwrap();
        // 5·2 = 10 ≡ 1 mod 3, (10 − 1)/3 = 3.
        assert_eq!((d.j, d.sign), (2, -1));
        assert!(CurveEigenData::new(5, 1, 5).is_err());
        assert!(CurveEigenData::new(5, 5, 11).is_err());
    }

    #[test]
    fn hypergeometric_series() {
        let f = hg_series_rational(&q("1/2"), 3);
        assert_eq!(f.coeffs(), &[r(1, 1), r(1, 4), r(9, 64)]);
        assert!(hg_series_rational(&q("1"), 6).coeffs()[1..].iter().all(Zero::is_zero));
        assert_eq!(hg_series_rational(&q("1/3"), 2).coeff(1), &r(2, 9));
    }

    #[test]
    fn ode_residuals_vanish() {
        for a in ["1/2", "1", "1/3"] {
            assert!(hg_ode_residual_rational(&q(a), 10).is_exact_zero(), "{a}");
        }
        assert!(hg_ode_residual(&q("1/3"), 10, 7, 4).unwrap().is_exact_zero());
    }

    #[test]
    fn series_ops() {
        let one = BigRational::one();
        let geo = RationalSeries::linear(1, -1, 5, one.clone()).reciprocal().unwrap();
        assert!(geo.coeffs().iter().all(|c| c.is_one()));
        let x = geo.integrate(r(3, 1)).unwrap();
        assert_eq!(x.coeffs(), &[r(3, 1), r(1, 1), r(1, 2), r(1, 3), r(1, 4), r(1, 5)]);
        assert_eq!(x.derivative().coeffs(), geo.coeffs());
        assert_eq!(
            geo.substitute_power(2).coeffs(),
            &[r(1, 1), r(0, 1), r(1, 1), r(0, 1), r(1, 1)]
        );
        assert!(geo.divide_by_lambda().is_err());
        assert_eq!(
            geo.shift(2).divide_by_lambda().unwrap().coeffs()[..2],
            [r(0, 1), r(1, 1)]
        );
    }

    #[test]
    fn padic_series_ops() {
        let one = PAdicNumber::one(5, 6).unwrap();
        let s = LambdaSeries::linear(1, 5, 4, one);
        let prod = s.mul(&s.reciprocal().unwrap());
        assert!(prod.coeff(0).congruent(&one, 6).unwrap());
        assert!(prod.coeffs()[1..].iter().all(|c| c.is_zero()));
        let i = s.integrate(PAdicNumber::zero(5)).unwrap();
        assert_eq!(i.coeff(2).valuation(), Some(1));
    }

    #[test]
    fn g_tau_small_case() {
        let d = CurveEigenData::new(2, 1, 3).unwrap();
        let g = solve_g_tau(&d, 2, 2).unwrap();
        assert_eq!(g.coeff(0).residue(2).unwrap(), 8);
        let (grat, _) = g_tau_rational(&d, 2).unwrap();
        assert_eq!(grat.coeff(1), &r(1, 2));
        let d5 = CurveEigenData::new(2, 1, 5).unwrap();
        assert_eq!(
            g_tau_constant(&d5, 3).unwrap(),
            2 * psi_tilde(&q("1/2"), 5, 3).unwrap() % 125
        );
    }

    #[test]
    fn e_tau_leading_terms() {
        let d = CurveEigenData::new(2, 1, 3).unwrap();
        let sol = solve_e_tau_exact(&d, 12).unwrap();
        assert!(sol.e1.coeff(0).is_zero());
        assert!(sol.e1.coeff(1).is_one());
        assert!(sol.e2_residue.is_zero());
        let (e1, e2) = solve_e_tau(&d, 12, 6).unwrap();
        assert_eq!(e1.order(), 12);
        assert_eq!(e2.order(), 12);
        assert!(e1.valuation_profile().iter().flatten().all(|&v| v >= -3));
        assert!(solve_e_tau_exact(&d, 2).is_err());
    }

    #[test]
    fn epsilon_vanishes_at_zero() {
        for (n, i, p) in [(2, 1, 3), (5, 2, 11), (3, 1, 5)] {
            let d = CurveEigenData::new(n, i, p).unwrap();
            let m = default_order(p);
            let (e1, e2) = solve_e_tau(&d, m, 6).unwrap();
            let (eps1, eps2) = epsilon_from_e(&d, &e1, &e2, m, 6).unwrap();
            assert!(eps1.coeff(0).is_exact_zero());
            assert!(eps2.coeff(0).is_exact_zero());
            assert_eq!(eps1.order(), m);
        }
    }

    #[test]
    fn endpoint() {
        let r = endpoint_vanishing_crosscheck(&CurveEigenData::new(2, 1, 3).unwrap(), 4).unwrap();
        assert!(r.passed);
        assert!(endpoint_vanishing_crosscheck(&CurveEigenData::new(3, 1, 5).unwrap(), 2).is_err());
    }

    #[test]
    fn all_checks_pass_small() {
        let d = CurveEigenData::new(2, 1, 5).unwrap();
        assert!(check_ode(&d, 15).passed);
        assert!(check_series(&d, 15, 6).iter().all(|c| c.passed));
        assert!(check_endpoint(&d, 3).passed);
    }
}
