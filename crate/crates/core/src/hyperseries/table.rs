use crate::error::{Error, Result};
use crate::modular::{checked_pow, inv_mod, mul_mod, pow_mod, split_p, sub_mod};
use crate::padic::{iwasawa_log_oneunit, psi_tilde, PAdicNumber, PRational};

use super::HGParams;

/// One stored coefficient: `p^val · unit` with the unit mod `p^W`, or exact zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Coeff {
    Zero,
    Unit { val: i64, unit: u64 },
}

/// Incremental stream of `C_n` for one parameter set, carried mod `p^W`.
///
/// Each step multiplies the integer numerators `u_k + n·d_k` and denominators,
/// strips powers of `p` from both, and spends a single modular inverse.
#[derive(Clone, Debug)]
pub(crate) struct CoeffStream {
    p: u64,
    modulus: u64,
    /// `(numerator, denominator)` of each upper parameter.
    upper: Vec<(i128, i128)>,
    /// Same for the lower parameters, with the implicit `(1)_n` appended.
    lower: Vec<(i128, i128)>,
    /// `Π den(b) / Π den(a)`, a unit, reduced mod `p^W`.
    scale: u64,
    coeffs: Vec<Coeff>,
}

impl CoeffStream {
    pub(crate) fn new(params: &HGParams, working_prec: u32) -> Result<Self> {
        let p = params.p;
        let modulus = checked_pow(p, working_prec)?;
        let pair = |x: &PRational| (x.numer() as i128, x.denom() as i128);
        let upper: Vec<_> = params.a.iter().map(pair).collect();
        let mut lower: Vec<_> = params.b.iter().map(pair).collect();
        lower.push((1, 1));
        let den = |v: &[(i128, i128)]| {
            v.iter()
                .fold(1u64, |acc, &(_, d)| mul_mod(acc, (d as u64) % modulus, modulus))
        };
        let scale = mul_mod(
            den(&lower),
            inv_mod(den(&upper), modulus).ok_or_else(|| Error::NotPIntegral {
                value: params.to_string(),
                p,
            })?,
            modulus,
        );
        Ok(Self {
            p,
            modulus,
            upper,
            lower,
            scale,
            coeffs: vec![Coeff::Unit {
                val: 0,
                unit: 1 % modulus,
            }],
        })
    }

    fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.coeffs.len() <= n {
            let k = (self.coeffs.len() - 1) as i128;
            let next = match *self.coeffs.last().expect("C_0 present") {
                Coeff::Zero => Coeff::Zero,
                Coeff::Unit { val, unit } => {
                    let mut v = val;
                    let mut negative = false;
                    let mut num = self.scale;
                    let mut zero = false;
                    for &(u, d) in &self.upper {
                        let f = u + k * d;
                        if f == 0 {
                            zero = true;
                            break;
                        }
                        negative ^= f < 0;
                        let (e, rest) = split_p(f.unsigned_abs(), self.p);
                        v += e as i64;
                        num = mul_mod(num, (rest % self.modulus as u128) as u64, self.modulus);
                    }
                    if zero {
                        Coeff::Zero
                    } else {
                        let mut den = 1u64;
                        for &(u, d) in &self.lower {
                            let f = u + k * d;
                            if f == 0 {
                                return Err(Error::Invariant("lower parameter hit a non-positive integer".into()));
                            }
                            negative ^= f < 0;
                            let (e, rest) = split_p(f.unsigned_abs(), self.p);
                            v -= e as i64;
                            den = mul_mod(den, (rest % self.modulus as u128) as u64, self.modulus);
                        }
                        let inv = inv_mod(den, self.modulus).expect("p-free part is a unit");
                        let mut u = mul_mod(mul_mod(unit, num, self.modulus), inv, self.modulus);
                        if negative {
                            u = (self.modulus - u) % self.modulus;
                        }
                        Coeff::Unit { val: v, unit: u }
                    }
                }
            };
            self.coeffs.push(next);
        }
        Ok(())
    }

    /// `C_n` as a residue mod `p^W`; requires valuation ≥ 0.
    pub(crate) fn residue(&mut self, n: usize) -> Result<u64> {
        self.extend_to(n)?;
        match self.coeffs[n] {
            Coeff::Zero => Ok(0),
            Coeff::Unit { val, unit } => {
                if val < 0 {
                    return Err(negative_valuation(n, val));
                }
                if val >= 64 {
                    return Ok(0);
                }
                Ok(mul_mod(unit, pow_mod(self.p, val as u64, self.modulus), self.modulus))
            }
        }
    }

    pub(crate) fn padic(&mut self, n: usize, working_prec: u32) -> Result<PAdicNumber> {
        self.extend_to(n)?;
        match self.coeffs[n] {
            Coeff::Zero => Ok(PAdicNumber::zero(self.p)),
            Coeff::Unit { val, unit } => {
                if val < 0 {
                    return Err(negative_valuation(n, val));
                }
                PAdicNumber::from_parts(self.p, val, unit, working_prec)
            }
        }
    }
}

fn negative_valuation(n: usize, val: i64) -> Error {
    Error::Invariant(format!(
        "coefficient C_{n} has valuation {val} < 0; are Dwork's conditions satisfied?"
    ))
}

/// Lazily extended `C_n^{(level)}` and `D_n` for one parameter set.
///
/// `D_n` at `n = m·p^k` loses `k` digits to the division, so every stored
/// coefficient is carried with `working_prec` digits and `coeff_d` refuses to
/// answer once fewer than `target` digits would survive.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    params: HGParams,
    level: usize,
    working_prec: u32,
    target: u32,
    modulus: u64,
    primary: CoeffStream,
    next: Option<CoeffStream>,
    c_residue: u64,
}

impl CoefficientTable {
    /// Table for `F^{(level)}` delivering `target` digits, with the default
    /// guard of `target + 2` extra digits.
    pub fn new(params: &HGParams, level: usize, target: u32) -> Result<Self> {
        Self::with_working_prec(params, level, target, 2 * target + 2)
    }

    pub fn with_working_prec(params: &HGParams, level: usize, target: u32, working_prec: u32) -> Result<Self> {
        if target == 0 || working_prec < target {
            return Err(Error::InvalidInput(format!(
                "working precision {working_prec} must be at least the target {target} > 0"
            )));
        }
        let shifted = params.at_level(level);
        let modulus = checked_pow(params.p, working_prec)?;
        let c_residue = PAdicNumber::from_rational(&shifted.c, params.p, working_prec)?.residue(working_prec)?;
        Ok(Self {
            primary: CoeffStream::new(&shifted, working_prec)?,
            params: shifted,
            level,
            working_prec,
            target,
            modulus,
            next: None,
            c_residue,
        })
    }

    /// Parameters of `F^{(level)}`.
    pub fn params(&self) -> &HGParams {
        &self.params
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn working_prec(&self) -> u32 {
        self.working_prec
    }

    pub fn target(&self) -> u32 {
        self.target
    }

    /// `C_n^{(level)}` with `working_prec` significant digits.
    pub fn coeff_c(&mut self, n: usize) -> Result<PAdicNumber> {
        self.primary.padic(n, self.working_prec)
    }

    /// `C_n^{(level)} mod p^target`.
    pub fn c_residue(&mut self, n: usize) -> Result<u64> {
        Ok(self.primary.residue(n)? % checked_pow(self.params.p, self.target)?)
    }

    /// `D_n` for `n ≥ 1`, known to `working_prec − v_p(n)` digits.
    pub fn coeff_d(&mut self, n: usize) -> Result<PAdicNumber> {
        let (abs, r) = self.d_raw(n)?;
        PAdicNumber::from_residue(self.params.p, r, abs)
    }

    /// `D_n mod p^target` for `n ≥ 1`.
    pub fn d_residue(&mut self, n: usize) -> Result<u64> {
        let (_, r) = self.d_raw(n)?;
        Ok(r % checked_pow(self.params.p, self.target)?)
    }

    /// Returns `(digits, D_n mod p^digits)`.
    fn d_raw(&mut self, n: usize) -> Result<(u32, u64)> {
        if n == 0 {
            return Err(Error::InvalidInput("D_0 comes from constant_d0".into()));
        }
        let p = self.params.p;
        let (k, m) = split_p(n as u128, p);
        let c = self.primary.residue(n)?;
        if k == 0 {
            let inv = inv_mod((m % self.modulus as u128) as u64, self.modulus).expect("p ∤ n");
            return Ok((self.working_prec, mul_mod(c, inv, self.modulus)));
        }
        let avail = self.working_prec as i64 - k as i64;
        if avail < self.target as i64 {
            return Err(Error::PrecisionBudget {
                needed: self.target as i64 + k as i64,
                available: self.working_prec as i64,
            });
        }
        let q = n / p as usize;
        if self.next.is_none() {
            self.next = Some(CoeffStream::new(&self.params.dwork_shift(), self.working_prec)?);
        }
        let c1 = self.next.as_mut().expect("just set").residue(q)?;
        let c1 = mul_mod(pow_mod(self.c_residue, q as u64, self.modulus), c1, self.modulus);
        let diff = sub_mod(c, c1, self.modulus);
        let pk = p.pow(k);
        if !diff.is_multiple_of(pk) {
            return Err(Error::Invariant(format!("D_{n} is not p-integral")));
        }
        let small = checked_pow(p, avail as u32)?;
        let inv = inv_mod((m % small as u128) as u64, small).expect("p ∤ m");
        Ok((avail as u32, mul_mod(diff / pk, inv, small)))
    }
}

/// `D_0 = Σψ̃_p(a_i) − Σψ̃_p(b_j) − p^{-1}·log c (mod p^prec)`.
pub fn constant_d0(params: &HGParams, prec: u32) -> Result<u64> {
    let p = params.p;
    let modulus = checked_pow(p, prec)?;
    for x in params.a.iter().chain(&params.b) {
        if x.is_nonpositive_integer() {
            return Err(Error::InvalidInput(format!(
                "ψ̃ is not needed at the pole {x}; parameter not allowed"
            )));
        }
    }
    let mut acc = 0u64;
    for a in &params.a {
        acc = (acc + psi_tilde(a, p, prec)?) % modulus;
    }
    for b in &params.b {
        acc = sub_mod(acc, psi_tilde(b, p, prec)?, modulus);
    }
    if !params.c.is_one() {
        let log = iwasawa_log_oneunit(&params.c, p, prec + 1)?;
        debug_assert_eq!(log % p, 0);
        acc = sub_mod(acc, (log / p) % modulus, modulus);
    }
    Ok(acc)
}
