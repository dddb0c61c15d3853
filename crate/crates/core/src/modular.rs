//! Small modular-arithmetic helpers over `u64` moduli.
//!
//! All moduli used by the crate are powers of a prime below 2^63, so products
//! fit comfortably in `u128`.

use crate::error::{Error, Result};

/// Largest modulus we allow. Keeps `a + b` inside `u64` and the extended
/// Euclid cofactors inside `i64`.
pub const MAX_MODULUS: u64 = 1 << 62;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (m - b)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, or `None` when `gcd(a, m) != 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    debug_assert!(m <= MAX_MODULUS);
    let (mut old_r, mut r) = ((a % m) as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i64) as u64)
}

/// Reduce a signed integer into `[0, m)`.
#[inline]
pub fn reduce_i128(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// `p^k`, failing when it would exceed [`MAX_MODULUS`].
pub fn checked_pow(p: u64, k: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc
            .checked_mul(p)
            .filter(|&v| v <= MAX_MODULUS)
            .ok_or(Error::PrecisionTooLarge { p, digits: k })?;
    }
    Ok(acc)
}

/// Split `n != 0` as `p^v * u` with `p ∤ u`.
#[inline]
pub fn split_p(mut n: u128, p: u64) -> (u32, u128) {
    debug_assert!(n != 0);
    let p = p as u128;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    (v, n)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of `p` modulo `n` (`n` coprime to `p`); 1 when `n == 1`.
pub fn multiplicative_order(p: u64, n: u64) -> u64 {
    if n <= 1 {
        return 1;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, p, n);
        k += 1;
    }
    k
}

/// Number of base-`p` digits needed to write `n` (`⌊log_p n⌋ + 1`, 0 for `n = 0`).
pub fn digits_base(mut n: u64, p: u64) -> u32 {
    let mut d = 0;
    while n > 0 {
        n /= p;
        d += 1;
    }
    d
}
