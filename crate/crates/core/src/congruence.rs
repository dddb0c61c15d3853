//! Verification suites for the congruences behind the logarithmic-type
//! functions, run on exact rational coefficients.
//!
//! Every check compares two residues; a report lists the indices where they
//! differ. `D_0` is the only non-rational quantity and enters through its
//! residue.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{reduce, ExactSeries};
use crate::hyperseries::{constant_d0, HGParams};
use crate::modular::{add_mod, checked_pow, mul_mod, sub_mod};
use crate::padic::PRational;
use crate::par::{self, Exec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    /// `F·[F^{(1)}(t^p)]_{<p^n} ≡ F^{(1)}(t^p)·[F]_{<p^n} mod p^l`.
    Dwork,
    /// `S_m = Σ_{i+j=m} C_{i+p^n}D_j − C_iD_{j+p^n} ≡ 0 mod p^n`.
    Log,
    /// `D_m/C_m ≡ D_{m'}/C_{m'} mod p^n` for `m ≡ m' mod p^n`.
    Ratio,
    /// `C^{(1)}_{mp^{n−1}}/C_{mp^n} ≡ 1 − mp^n·D_0 mod p^{2n}` and
    /// `D_{mp^n}/C_{mp^n} ≡ D_0 mod p^n` for `p ∤ m`.
    Unitroot,
    /// `Σ_{i+j=m, i≡k mod p^{n−l}} C_iC_{j+p^n} − C_jC_{i+p^n} ≡ 0 mod p^{l+1}`.
    KeyLemma,
    /// `C_m·C^{(1)}_{⌊m'/p⌋} ≡ C_{m'}·C^{(1)}_{⌊m/p⌋} mod p^n` for `m ≡ m' mod p^n`.
    CoefficientPairs,
}

impl Statement {
    pub const ALL: [Statement; 6] = [
        Statement::Dwork,
        Statement::Log,
        Statement::Ratio,
        Statement::Unitroot,
        Statement::KeyLemma,
        Statement::CoefficientPairs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statement::Dwork => "dwork",
            Statement::Log => "log",
            Statement::Ratio => "ratio",
            Statement::Unitroot => "unitroot",
            Statement::KeyLemma => "keylemma",
            Statement::CoefficientPairs => "coefficients",
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statement::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Position of the failing check; its meaning depends on the statement
    /// (degree, `m`, `(m, m')`, `(m, k)`, or `(m, part)`).
    pub index: Vec<u64>,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub statement: Statement,
    pub params: String,
    pub p: u64,
    pub n: u32,
    /// Exponent of the modulus the residues are compared at.
    pub l: u32,
    /// Inclusive range of the main index.
    pub range: (u64, u64),
    pub checks: u64,
    pub failures: Vec<Failure>,
    #[serde(with = "duration_ms")]
    pub elapsed: Duration,
}

mod duration_ms {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?.max(0.0) / 1e3))
    }
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Equal in everything except timing.
    pub fn same_outcome(&self, other: &Self) -> bool {
        (
            self.statement,
            &self.params,
            self.p,
            self.n,
            self.l,
            self.range,
            self.checks,
            &self.failures,
        ) == (
            other.statement,
            &other.params,
            other.p,
            other.n,
            other.l,
            other.range,
            other.checks,
            &other.failures,
        )
    }
}

impl fmt::Display for CongruenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<9} {:<22} p={} n={} mod p^{} range={}..={} checks={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.statement,
            self.params,
            self.p,
            self.n,
            self.l,
            self.range.0,
            self.range.1,
            self.checks
        )?;
        for fl in self.failures.iter().take(5) {
            write!(f, "\n    at {:?}: {} ≢ {}", fl.index, fl.lhs, fl.rhs)?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n    … {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

struct Recorder {
    started: Instant,
    checks: u64,
    failures: Vec<Failure>,
}

impl Recorder {
    fn new() -> Self {
        Self {
            started: Instant::now(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, index: Vec<u64>, lhs: u64, rhs: u64) {
        self.checks += 1;
        if lhs != rhs {
            self.failures.push(Failure { index, lhs, rhs });
        }
    }

    fn finish(self, statement: Statement, params: &HGParams, n: u32, l: u32, range: (u64, u64)) -> CongruenceReport {
        CongruenceReport {
            statement,
            params: params.to_string(),
            p: params.p,
            n,
            l,
            range,
            checks: self.checks,
            failures: self.failures,
            elapsed: self.started.elapsed(),
        }
    }
}

fn pn(p: u64, n: u32) -> Result<usize> {
    Ok(checked_pow(p, n)? as usize)
}

fn require_c_one(params: &HGParams) -> Result<()> {
    if params.c.is_one() {
        Ok(())
    } else {
        Err(Error::InvalidInput("this congruence is stated for c = 1".into()))
    }
}

/// Coefficients of `F·[F^{(1)}(t^p)]_{<p^n}` and `F^{(1)}(t^p)·[F]_{<p^n}`
/// compared mod `p^l` in degrees `0..=max_deg`.
pub fn verify_dwork_congruence(params: &HGParams, n: u32, l: u32, max_deg: usize) -> Result<CongruenceReport> {
    if l > n {
        return Err(Error::InvalidInput(format!("need l ≤ n, got l = {l}, n = {n}")));
    }
    let mut rec = Recorder::new();
    let p = params.p as usize;
    let s = ExactSeries::new(params, max_deg + 1);
    let bound = pn(params.p, n)?;
    let bound1 = if n == 0 { 1 } else { pn(params.p, n - 1)? };
    for d in 0..=max_deg {
        let mut lhs = BigRational::zero();
        let mut rhs = BigRational::zero();
        for k in 0..=d / p {
            let term = &s.c1[k] * &s.c[d - p * k];
            if k < bound1 {
                lhs += &term;
            }
            if d - p * k < bound {
                rhs += &term;
            }
        }
        rec.check(vec![d as u64], reduce(&lhs, params.p, l)?, reduce(&rhs, params.p, l)?);
    }
    Ok(rec.finish(Statement::Dwork, params, n, l, (0, max_deg as u64)))
}

/// `S_m ≡ 0 mod p^n` (mod `p^{n−1}` for `p = 2`) for `0 ≤ m ≤ max_m`.
pub fn verify_log_congruence(params: &HGParams, n: u32, max_m: usize) -> Result<CongruenceReport> {
    require_c_one(params)?;
    params.require_log_type()?;
    if n == 0 || (params.p == 2 && n == 1) {
        return Err(Error::InvalidInput(format!("n = {n} gives an empty congruence")));
    }
    let l = if params.p == 2 { n - 1 } else { n };
    let mut rec = Recorder::new();
    let shift = pn(params.p, n)?;
    let s = ExactSeries::new(params, max_m + shift + 1);
    let modulus = checked_pow(params.p, l)?;
    let d0 = constant_d0(params, l)?;
    let d: Vec<BigRational> = std::iter::once(BigRational::zero())
        .chain((1..s.len()).map(|k| s.d(k)))
        .collect();
    for m in 0..=max_m {
        // The j = 0 term carries D_0, which is only known as a residue.
        let mut exact = BigRational::zero();
        for i in 0..=m {
            let j = m - i;
            if j > 0 {
                exact += &s.c[i + shift] * &d[j];
            }
            exact -= &s.c[i] * &d[j + shift];
        }
        let d0_term = mul_mod(reduce(&s.c[m + shift], params.p, l)?, d0, modulus);
        let total = add_mod(reduce(&exact, params.p, l)?, d0_term, modulus);
        rec.check(vec![m as u64], total, 0);
    }
    Ok(rec.finish(Statement::Log, params, n, l, (0, max_m as u64)))
}

/// `(m, m + p^n)` for `0 ≤ m ≤ max_m`.
pub fn shifted_pairs(p: u64, n: u32, max_m: usize) -> Result<Vec<(usize, usize)>> {
    let shift = pn(p, n)?;
    Ok((0..=max_m).map(|m| (m, m + shift)).collect())
}

fn check_pairs(p: u64, n: u32, pairs: &[(usize, usize)]) -> Result<(u64, u64)> {
    let shift = pn(p, n)?;
    for &(m, m2) in pairs {
        if m.abs_diff(m2) % shift != 0 {
            return Err(Error::InvalidInput(format!("{m} ≢ {m2} mod {p}^{n}")));
        }
    }
    let lo = pairs.iter().map(|&(a, b)| a.min(b)).min().unwrap_or(0);
    let hi = pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
    Ok((lo as u64, hi as u64))
}

/// `D_m/C_m ≡ D_{m'}/C_{m'} mod p^n` on each pair; index 0 stands for `D_0`.
pub fn verify_ratio_continuity(params: &HGParams, n: u32, pairs: &[(usize, usize)]) -> Result<CongruenceReport> {
    require_c_one(params)?;
    params.require_log_type()?;
    let range = check_pairs(params.p, n, pairs)?;
    let mut rec = Recorder::new();
    let s = ExactSeries::new(params, range.1 as usize + 1);
    let d0 = constant_d0(params, n)?;
    let q = |k: usize| -> Result<u64> {
        if k == 0 {
            Ok(d0)
        } else {
            reduce(&(s.d(k) / &s.c[k]), params.p, n)
        }
    };
    for &(m, m2) in pairs {
        rec.check(vec![m as u64, m2 as u64], q(m)?, q(m2)?);
    }
    Ok(rec.finish(Statement::Ratio, params, n, n, range))
}

/// Both unit-root congruences for `1 ≤ m ≤ max_m`, `p ∤ m`. Failure indices
/// are `(m, 2)` for the `p^{2n}` statement and `(m, 3)` for the `p^n` one.
pub fn verify_unitroot_expansion(params: &HGParams, n: u32, max_m: usize) -> Result<CongruenceReport> {
    require_c_one(params)?;
    params.require_log_type()?;
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let p = params.p;
    let mut rec = Recorder::new();
    let shift = pn(p, n)?;
    let s = ExactSeries::new(params, max_m * shift + 1);
    let mod2 = checked_pow(p, 2 * n)?;
    let modn = checked_pow(p, n)?;
    let d0 = constant_d0(params, 2 * n)?;
    for m in (1..=max_m).filter(|m| m % p as usize != 0) {
        let idx = m * shift;
        let lhs = reduce(&(&s.c1[idx / p as usize] / &s.c[idx]), p, 2 * n)?;
        let rhs = sub_mod(1, mul_mod((idx as u64) % mod2, d0, mod2), mod2);
        rec.check(vec![m as u64, 2], lhs, rhs);
        let lhs = reduce(&(s.d(idx) / &s.c[idx]), p, n)?;
        rec.check(vec![m as u64, 3], lhs, d0 % modn);
    }
    Ok(rec.finish(Statement::Unitroot, params, n, n, (1, max_m as u64)))
}

/// Antisymmetric residue-class sums mod `p^{l+1}` for every class
/// `k mod p^{n−l}` and `0 ≤ m ≤ max_m`. Failure indices are `(m, k)`.
pub fn verify_key_lemma(params: &HGParams, n: u32, l: u32, max_m: usize) -> Result<CongruenceReport> {
    if l > n {
        return Err(Error::InvalidInput(format!("need l ≤ n, got l = {l}, n = {n}")));
    }
    let mut rec = Recorder::new();
    let shift = pn(params.p, n)?;
    let classes = pn(params.p, n - l)?;
    let s = ExactSeries::new(params, max_m + shift + 1);
    for m in 0..=max_m {
        let mut sums = vec![BigRational::zero(); classes];
        for i in 0..=m {
            let j = m - i;
            sums[i % classes] += &s.c[i] * &s.c[j + shift] - &s.c[j] * &s.c[i + shift];
        }
        for (k, x) in sums.iter().enumerate() {
            rec.check(vec![m as u64, k as u64], reduce(x, params.p, l + 1)?, 0);
        }
    }
    Ok(rec.finish(Statement::KeyLemma, params, n, l + 1, (0, max_m as u64)))
}

/// Cross-multiplied coefficient congruence on each pair.
pub fn verify_dwork_coefficient_congruence(
    params: &HGParams,
    n: u32,
    pairs: &[(usize, usize)],
) -> Result<CongruenceReport> {
    let range = check_pairs(params.p, n, pairs)?;
    let p = params.p as usize;
    let mut rec = Recorder::new();
    let s = ExactSeries::new(params, range.1 as usize + 1);
    for &(m, m2) in pairs {
        let lhs = &s.c[m] * &s.c1[m2 / p];
        let rhs = &s.c[m2] * &s.c1[m / p];
        rec.check(
            vec![m as u64, m2 as u64],
            reduce(&lhs, params.p, n)?,
            reduce(&rhs, params.p, n)?,
        );
    }
    Ok(rec.finish(Statement::CoefficientPairs, params, n, n, range))
}

/// `(i/N, j/N; k/N)` for `N | p − 1`, `i ≤ j`, `i + j ≤ k ≤ N`, deduplicated,
/// followed by `(1;)` and `(1,1;1)`.
pub fn default_corpus(p: u64) -> Result<Vec<HGParams>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in (2..p as i64).filter(|n| (p as i64 - 1) % n == 0) {
        for i in 1..=n {
            for j in i..=n {
                for k in (i + j)..=n {
                    let params = HGParams::from_tuple(p, n, i, j, k)?;
                    if seen.insert(params.to_string()) {
                        out.push(params);
                    }
                }
            }
        }
    }
    out.push(HGParams::new(vec![PRational::one()], vec![], p)?);
    out.push(HGParams::new(vec![PRational::one(); 2], vec![PRational::one()], p)?);
    Ok(out)
}

/// One parameter set per line, `a_1,…,a_s;b_1,…,b_{s−1}`; blank lines and
/// `#` comments are skipped.
pub fn parse_corpus(text: &str, p: u64) -> Result<Vec<HGParams>> {
    let list = |s: &str| -> Result<Vec<PRational>> {
        s.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(str::parse)
            .collect()
    };
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(|line| {
            let (a, b) = line
                .split_once(';')
                .ok_or_else(|| Error::InvalidInput(format!("expected `a;b`, got {line:?}")))?;
            HGParams::new(list(a)?, list(b)?, p)
        })
        .collect()
}

/// Shared knobs for running a statement over a corpus.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub n: u32,
    /// Upper end of the main index; `None` picks a per-statement default.
    pub max_m: Option<usize>,
}

impl SuiteConfig {
    /// `max_m`, `max_deg` or pair range for `statement`; indices stay within a
    /// few multiples of `p^n` so exact arithmetic remains cheap.
    pub fn bound(&self, statement: Statement, p: u64) -> Result<usize> {
        if let Some(m) = self.max_m {
            return Ok(m);
        }
        let pn = pn(p, self.n)?;
        Ok(match statement {
            Statement::Unitroot => 2 * p as usize,
            _ => 2 * pn,
        })
    }
}

/// All reports of `statement` on one parameter set. The key lemma runs every
/// `0 ≤ l ≤ n`; the Dwork congruence uses `l = n`.
pub fn run_statement(statement: Statement, params: &HGParams, cfg: SuiteConfig) -> Result<Vec<CongruenceReport>> {
    let n = cfg.n;
    let bound = cfg.bound(statement, params.p)?;
    Ok(match statement {
        Statement::Dwork => vec![verify_dwork_congruence(params, n, n, bound)?],
        Statement::Log => vec![verify_log_congruence(params, n, bound)?],
        Statement::Ratio => vec![verify_ratio_continuity(params, n, &shifted_pairs(params.p, n, bound)?)?],
        Statement::Unitroot => vec![verify_unitroot_expansion(params, n, bound)?],
        Statement::KeyLemma => (0..=n)
            .map(|l| verify_key_lemma(params, n, l, bound))
            .collect::<Result<_>>()?,
        Statement::CoefficientPairs => {
            vec![verify_dwork_coefficient_congruence(
                params,
                n,
                &shifted_pairs(params.p, n, bound)?,
            )?]
        }
    })
}

/// Run statements over a corpus; reports come back ordered by
/// `(statement, corpus position)` whatever the execution strategy.
pub fn run_suites(
    statements: &[Statement],
    corpus: &[HGParams],
    cfg: SuiteConfig,
    exec: Exec,
) -> Result<Vec<CongruenceReport>> {
    let jobs: Vec<(Statement, &HGParams)> = statements
        .iter()
        .flat_map(|&st| corpus.iter().map(move |params| (st, params)))
        .collect();
    let results = par::map(exec, &jobs, |(st, params)| run_statement(*st, params, cfg));
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
