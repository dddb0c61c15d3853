//! The p-adic digamma function ψ̃_p and the Iwasawa logarithm on 1-units.
//!
//! Only ψ̃_p is exposed. The p-adic Euler constant enters every formula built
//! here with total coefficient zero, so it is never evaluated.

use crate::error::{Error, Result};
use crate::modular::{add_mod, checked_pow, inv_mod, mul_mod, reduce_i128, sub_mod};
use crate::padic::{PAdicNumber, PRational};

/// `ψ̃_p(z) mod p^m`: the harmonic sum `Σ_{1≤k<n, p∤k} 1/k` for the unique
/// `n ∈ [1, p^m]` congruent to `z` mod `p^m`.
///
/// For odd `p` the result depends only on `z mod p^m`. For `p = 2` only
/// `m - 1` digits are guaranteed to be independent of the representative.
pub fn psi_tilde(z: &PRational, p: u64, m: u32) -> Result<u64> {
    z.require_p_integral(p)?;
    let modulus = checked_pow(p, m)?;
    let dinv = inv_mod(z.denom() as u64 % modulus, modulus).expect("p-integral");
    let mut n = mul_mod(reduce_i128(z.numer() as i128, modulus), dinv, modulus);
    if n == 0 {
        n = modulus;
    }
    Ok(harmonic_prime_to_p(n, p, modulus))
}

/// `Σ_{1≤k<n, p∤k} 1/k mod modulus`, accumulated as a single fraction so only
/// one inversion is needed.
fn harmonic_prime_to_p(n: u64, p: u64, modulus: u64) -> u64 {
    let (mut num, mut den) = (0u64, 1u64);
    for k in 1..n {
        if k % p == 0 {
            continue;
        }
        let k = k % modulus;
        num = add_mod(mul_mod(num, k, modulus), den, modulus);
        den = mul_mod(den, k, modulus);
    }
    mul_mod(num, inv_mod(den, modulus).expect("product of units"), modulus)
}

/// `log(c) mod p^m` for a 1-unit `c`, via `-Σ (1-c)^n / n`.
///
/// The series is cut once `n·v_p(1-c) - ⌊log_p n⌋ ≥ m`; that bound is
/// increasing in `n`, so every later term vanishes mod `p^m` too.
pub fn iwasawa_log_oneunit(c: &PRational, p: u64, m: u32) -> Result<u64> {
    c.require_p_integral(p)?;
    let modulus = checked_pow(p, m)?;
    let x = PRational::one() - *c;
    let v = match x.valuation(p) {
        None => return Ok(0),
        Some(v) if v >= 1 => v,
        Some(_) => return Err(Error::InvalidInput(format!("{c} is not a 1-unit for p = {p}"))),
    };
    let xp = PAdicNumber::from_rational(&x, p, m)?;
    let mut power = xp;
    let mut acc = 0u64;
    let mut n: u64 = 1;
    loop {
        let floor_log = crate::modular::digits_base(n, p) as i64 - 1;
        if n as i64 * v - floor_log >= m as i64 {
            break;
        }
        let term = power.checked_div(&PAdicNumber::from_int(p, n as i64, m)?)?;
        acc = add_mod(acc, term.residue(m)?, modulus);
        power = power * xp;
        n += 1;
    }
    Ok(sub_mod(0, acc, modulus))
}
