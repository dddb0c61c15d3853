use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{add_mod, checked_pow, inv_mod, mul_mod, pow_mod};
use crate::padic::{PAdicNumber, PRational};

use super::conditions::{check_dwork_conditions, joint_orbits};
use super::table::{constant_d0, CoeffStream, CoefficientTable};
use super::HGParams;

/// Which series to truncate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Series {
    /// `F^{(level)}_{a,b}`.
    F { level: usize },
    /// `G_{a,b}`, the numerator of the logarithmic-type function.
    G,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialValueResult {
    /// Least non-negative residue of `𝓕^(σ)_{a,b}(α) mod p^prec`.
    pub value: u64,
    pub modulus: u64,
    pub prec: u32,
    /// Truncation exponent `n` of `[·]_{<p^n}` that produced `value`.
    pub truncation_level: u32,
    /// `[F^{(i)}]_{<p}(α) mod p` for every distinct orbit level `i`.
    pub h_unit_evidence: Vec<u64>,
    /// Levels `n` and `n + 1` agree mod `p^prec`.
    pub stable: bool,
}

/// Digits carried internally to deliver `prec` digits from `[G]_{<p^level}`.
pub fn working_precision(prec: u32, level: u32) -> u32 {
    prec + (prec + 2).max(level)
}

fn residue_of(q: &PRational, p: u64, prec: u32) -> Result<u64> {
    q.require_p_integral(p)?;
    PAdicNumber::from_rational(q, p, prec)?.residue(prec)
}

fn degree_bound(p: u64, n: u32) -> Result<usize> {
    Ok(checked_pow(p, n)? as usize)
}

/// `[F^{(level)}]_{<bound}(α) mod p^prec` with a streamed coefficient source.
fn sum_f(stream: &mut CoeffStream, bound: usize, alpha: u64, step: u64, modulus: u64) -> Result<u64> {
    let mut acc = 0u64;
    let mut pow = 1 % modulus;
    let alpha_step = pow_mod(alpha, step, modulus);
    for k in 0..bound {
        if pow == 0 {
            break;
        }
        acc = add_mod(acc, mul_mod(stream.residue(k)? % modulus, pow, modulus), modulus);
        pow = mul_mod(pow, alpha_step, modulus);
    }
    Ok(acc)
}

/// `[F^{(level)}]_{<p^n}(α)` or `[G]_{<p^n}(α)` modulo `p^prec`.
pub fn truncated_eval(which: Series, params: &HGParams, n: u32, alpha: &PRational, prec: u32) -> Result<PAdicNumber> {
    let p = params.p;
    let modulus = checked_pow(p, prec)?;
    let a = residue_of(alpha, p, prec)?;
    let bound = degree_bound(p, n)?;
    let r = match which {
        Series::F { level } => {
            let mut stream = CoeffStream::new(&params.at_level(level), prec)?;
            sum_f(&mut stream, bound, a, 1, modulus)?
        }
        Series::G => {
            params.require_log_type()?;
            let mut table = CoefficientTable::with_working_prec(params, 0, prec, working_precision(prec, n))?;
            let mut acc = constant_d0(params, prec)?;
            let mut pow = 1 % modulus;
            for k in 1..bound {
                pow = mul_mod(pow, a, modulus);
                if pow == 0 {
                    break;
                }
                acc = add_mod(acc, mul_mod(table.d_residue(k)?, pow, modulus), modulus);
            }
            acc
        }
    };
    PAdicNumber::from_residue(p, r, prec)
}

/// `[F(t)]_{<p^n}(α) · ([F^{(1)}(t^p)]_{<p^n}(α))^{-1} mod p^prec`.
pub fn dwork_ratio(params: &HGParams, n: u32, alpha: &PRational, prec: u32) -> Result<PAdicNumber> {
    let p = params.p;
    let modulus = checked_pow(p, prec)?;
    let a = residue_of(alpha, p, prec)?;
    let num = sum_f(&mut CoeffStream::new(params, prec)?, degree_bound(p, n)?, a, 1, modulus)?;
    let den_bound = if n == 0 { 1 } else { degree_bound(p, n - 1)? };
    let den = sum_f(
        &mut CoeffStream::new(&params.dwork_shift(), prec)?,
        den_bound,
        a,
        p,
        modulus,
    )?;
    let inv = inv_mod(den, modulus)
        .ok_or_else(|| Error::NonUnitDenominator(format!("[F^(1)(t^p)]_<p^{n} at {alpha} is {den} mod p^{prec}")))?;
    PAdicNumber::from_residue(p, mul_mod(num, inv, modulus), prec)
}

/// `[F^{(i)}]_{<p}(α) mod p` for every distinct Dwork orbit level of the parameters.
pub fn h_unit_evidence(params: &HGParams, alpha: &PRational) -> Result<Vec<u64>> {
    let (_, _, levels) = joint_orbits(params)?;
    let p = params.p;
    let a = residue_of(alpha, p, 1)?;
    (0..levels)
        .map(|i| sum_f(&mut CoeffStream::new(&params.at_level(i), 1)?, p as usize, a, 1, p))
        .collect()
}

/// `[G]_{<p^n}(α)/[F]_{<p^n}(α) mod p^prec` for each `n` in `levels`, from a
/// single pass over the coefficients up to the largest level.
pub fn special_value_at_levels(params: &HGParams, alpha: &PRational, prec: u32, levels: &[u32]) -> Result<Vec<u64>> {
    params.require_log_type()?;
    let p = params.p;
    let Some(&top) = levels.iter().max() else {
        return Ok(Vec::new());
    };
    let modulus = checked_pow(p, prec)?;
    let a = residue_of(alpha, p, prec)?;
    let mut table = CoefficientTable::with_working_prec(params, 0, prec, working_precision(prec, top))?;

    let mut marks: Vec<(usize, u32)> = levels
        .iter()
        .map(|&l| Ok((degree_bound(p, l)?, l)))
        .collect::<Result<_>>()?;
    marks.sort_unstable();
    let mut at_mark = std::collections::HashMap::new();

    let mut g = constant_d0(params, prec)?;
    let mut f = 1 % modulus;
    let mut pow = 1 % modulus;
    let mut next_mark = 0;
    let end = marks.last().expect("non-empty").0;
    for k in 0..=end {
        while next_mark < marks.len() && marks[next_mark].0 == k {
            let level = marks[next_mark].1;
            let inv = inv_mod(f, modulus)
                .ok_or_else(|| Error::NonUnitDenominator(format!("[F]_<p^{level} at {alpha} is {f} mod p^{prec}")))?;
            at_mark.insert(level, mul_mod(g, inv, modulus));
            next_mark += 1;
        }
        if k == end {
            break;
        }
        if k > 0 {
            pow = mul_mod(pow, a, modulus);
            if pow == 0 {
                // Every later term vanishes mod p^prec.
                for &(_, level) in &marks[next_mark..] {
                    let inv = inv_mod(f, modulus).ok_or_else(|| {
                        Error::NonUnitDenominator(format!("[F]_<p^{level} at {alpha} is {f} mod p^{prec}"))
                    })?;
                    at_mark.insert(level, mul_mod(g, inv, modulus));
                }
                break;
            }
            f = add_mod(f, mul_mod(table.c_residue(k)?, pow, modulus), modulus);
            g = add_mod(g, mul_mod(table.d_residue(k)?, pow, modulus), modulus);
        }
    }
    Ok(levels.iter().map(|l| at_mark[l]).collect())
}

/// `𝓕^(σ)_{a,b}(α) mod p^m`, truncating at `p^m` and confirming at `p^{m+1}`.
pub fn special_value(params: &HGParams, alpha: &PRational, m: u32) -> Result<SpecialValueResult> {
    let p = params.p;
    if p == 2 {
        return Err(Error::InvalidInput("special values need an odd prime".into()));
    }
    if m == 0 {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    params.require_log_type()?;
    let report = check_dwork_conditions(params, usize::MAX)?;
    if let Some(f) = report.failures.first() {
        return Err(Error::InvalidInput(format!(
            "Dwork condition {:?} fails at digit {}: {}",
            f.condition, f.digit_index, f.witness
        )));
    }
    let evidence = h_unit_evidence(params, alpha)?;
    if let Some(i) = evidence.iter().position(|&r| r == 0) {
        return Err(Error::ValueUndefined { orbit_index: i });
    }
    let values = special_value_at_levels(params, alpha, m, &[m, m + 1])?;
    if values[0] != values[1] {
        return Err(Error::Invariant(format!(
            "special value of {params} at {alpha} unstable: {} at p^{m}, {} at p^{}",
            values[0],
            values[1],
            m + 1
        )));
    }
    Ok(SpecialValueResult {
        value: values[0],
        modulus: checked_pow(p, m)?,
        prec: m,
        truncation_level: m,
        h_unit_evidence: evidence,
        stable: true,
    })
}

/// `[F]_{<p}(1) mod p` for `(i/N, j/N; k/N)`, computed as a truncated sum and
/// by Gauss's closed form; errors if they disagree or vanish.
pub fn gauss_unit_check(n: i64, i: i64, j: i64, k: i64, p: u64) -> Result<u64> {
    if n < 1 || (p as i64 - 1) % n != 0 {
        return Err(Error::InvalidInput(format!("N = {n} must divide p - 1 = {}", p - 1)));
    }
    if ![i, j, k].iter().all(|&x| (1..=n).contains(&x)) || i + j > k {
        return Err(Error::InvalidInput(format!(
            "need 1 ≤ i, j, k ≤ N and i + j ≤ k, got ({i}, {j}, {k})"
        )));
    }
    let params = HGParams::from_tuple(p, n, i, j, k)?;
    let direct = truncated_eval(Series::F { level: 0 }, &params, 1, &PRational::one(), 1)?.residue(1)?;

    let digit = |x: i64| (x * (p as i64 - 1) / n) as usize;
    let (i0, j0, k0) = (digit(i), digit(j), digit(k));
    let p_us = p as usize;
    let mut fact = vec![1u64; p_us];
    for t in 1..p_us {
        fact[t] = mul_mod(fact[t - 1], t as u64, p);
    }
    let num = mul_mod(fact[p_us - k0 - 1], fact[p_us - k0 + i0 + j0 - 1], p);
    let den = mul_mod(fact[p_us - k0 + i0 - 1], fact[p_us - k0 + j0 - 1], p);
    let closed = mul_mod(num, inv_mod(den, p).expect("factorials below p are units"), p);

    if direct != closed {
        return Err(Error::Invariant(format!(
            "Gauss check for ({p},{n},{i},{j},{k}): truncated sum {direct} ≠ closed form {closed}"
        )));
    }
    if direct == 0 {
        return Err(Error::Invariant(format!(
            "[F]_<p(1) vanishes mod p for ({p},{n},{i},{j},{k})"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(a: &[&str], b: &[&str], p: u64) -> HGParams {
        HGParams::new(
            a.iter().map(|s| s.parse().unwrap()).collect(),
            b.iter().map(|s| s.parse().unwrap()).collect(),
            p,
        )
        .unwrap()
    }

    fn one() -> PRational {
        PRational::one()
    }

    #[test]
    fn truncated_eval_examples() {
        let f = truncated_eval(Series::F { level: 0 }, &hp(&["1/2", "1/2"], &["1"], 5), 1, &one(), 1).unwrap();
        assert_eq!(f.residue(1).unwrap(), 1);
        let f = truncated_eval(
            Series::F { level: 0 },
            &hp(&["1/2", "1/2"], &["1"], 5),
            0,
            &"3".parse().unwrap(),
            3,
        );
        assert_eq!(f.unwrap().residue(3).unwrap(), 1);
        let g = truncated_eval(Series::G, &hp(&["1"], &[], 3), 1, &one(), 1).unwrap();
        assert_eq!(g.residue(1).unwrap(), 0);
    }

    #[test]
    fn dwork_ratio_examples() {
        let params = hp(&["1/2", "1/2"], &["1"], 5);
        assert_eq!(
            dwork_ratio(&params, 3, &PRational::zero(), 3)
                .unwrap()
                .residue(3)
                .unwrap(),
            1
        );
        assert_eq!(dwork_ratio(&params, 1, &one(), 1).unwrap().residue(1).unwrap(), 1);
        let thirds = hp(&["1/3", "2/3"], &["1"], 7);
        let r1 = dwork_ratio(&thirds, 1, &one(), 1).unwrap().residue(1).unwrap();
        let r2 = dwork_ratio(&thirds, 2, &one(), 1).unwrap().residue(1).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn special_value_at_zero_is_d0() {
        let params = hp(&["1/3", "1/3"], &["1"], 7);
        let r = special_value(&params, &PRational::zero(), 3).unwrap();
        assert_eq!(r.value, constant_d0(&params, 3).unwrap());
    }

    #[test]
    fn small_table_rows() {
        let row = |p, n, i, j, k| {
            special_value(&HGParams::from_tuple(p, n, i, j, k).unwrap(), &one(), 4)
                .unwrap()
                .value
        };
        assert_eq!(row(3, 2, 1, 1, 2), 0);
        assert_eq!(row(7, 3, 1, 1, 3), 290);
        assert_eq!(row(5, 4, 1, 1, 3), 131);
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_unit_check(3, 1, 1, 3, 7).unwrap(), 6);
        assert_eq!(gauss_unit_check(2, 1, 1, 2, 5).unwrap(), 1);
        assert_eq!(gauss_unit_check(4, 1, 1, 2, 5).unwrap(), 3);
        assert!(gauss_unit_check(4, 1, 1, 2, 7).is_err());
        assert!(gauss_unit_check(4, 2, 1, 2, 5).is_err());
    }

    #[test]
    fn h_unit_failure_is_reported() {
        // [F]_{<7}(t) ≡ (1 + t)^3 mod 7 for a = (1/2, 1/2), so α = -1 is excluded.
        let params = hp(&["1/2", "1/2"], &["1"], 7);
        let alpha = PRational::integer(-1);
        assert_eq!(h_unit_evidence(&params, &alpha).unwrap(), vec![0]);
        assert!(matches!(
            special_value(&params, &alpha, 2),
            Err(Error::ValueUndefined { orbit_index: 0 })
        ));
    }

    #[test]
    fn inadmissible_params_are_refused() {
        let params = hp(&["1/2", "1/2"], &["1/3"], 7);
        assert!(matches!(special_value(&params, &one(), 2), Err(Error::InvalidInput(_))));
    }
}
