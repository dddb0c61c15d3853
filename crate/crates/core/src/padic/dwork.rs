//! p-adic digits, Dwork primes and Dwork orbits of rational p-adic integers.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::modular::{inv_mod, multiplicative_order, reduce_i128};
use crate::padic::PRational;

/// The digit `l ∈ {0..p-1}` with `a + l ≡ 0 (mod p)`, i.e. `[a]_0` in the
/// expansion `a = -Σ [a]_n p^n`.
pub fn leading_digit(a: &PRational, p: u64) -> Result<u64> {
    a.require_p_integral(p)?;
    let dinv = inv_mod(a.denom() as u64 % p, p).expect("denominator prime to p");
    let a_mod = reduce_i128(a.numer() as i128, p) as u128 * dinv as u128 % p as u128;
    Ok((p - a_mod as u64) % p)
}

/// The Dwork prime `a' = (a + l)/p`.
pub fn dwork_prime(a: &PRational, p: u64) -> Result<PRational> {
    let l = leading_digit(a, p)?;
    Ok((a.add_int(l as i64)) / PRational::integer(p as i64))
}

/// `[a]_n`: the n-th digit of `a = -Σ [a]_n p^n`, read off as the leading digit
/// of the n-th Dwork prime.
pub fn padic_digit(a: &PRational, p: u64, index: usize) -> Result<u64> {
    let mut x = *a;
    for _ in 0..index {
        x = dwork_prime(&x, p)?;
    }
    leading_digit(&x, p)
}

/// The sequence `a^(0), a^(1), …` of a rational p-adic integer together with
/// the shape of its eventual cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DworkOrbit {
    pub base: PRational,
    /// `preperiod + period` distinct elements; later iterates repeat.
    pub orbit: Vec<PRational>,
    pub preperiod: usize,
    pub period: usize,
}

impl DworkOrbit {
    /// `a^(i)` for any `i ≥ 0`, folding into the cycle.
    pub fn iterate(&self, i: usize) -> PRational {
        if i < self.preperiod {
            self.orbit[i]
        } else {
            self.orbit[self.preperiod + (i - self.preperiod) % self.period]
        }
    }

    /// Number of distinct orbit elements.
    pub fn len(&self) -> usize {
        self.preperiod + self.period
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Default step budget for cycle detection: `4·ord(p mod denom) + 8`.
pub fn default_orbit_budget(a: &PRational, p: u64) -> usize {
    4 * multiplicative_order(p, a.denom() as u64) as usize + 8
}

/// Iterate the Dwork prime until a value repeats.
pub fn dwork_orbit(a: &PRational, p: u64, max_steps: usize) -> Result<DworkOrbit> {
    let mut seen: HashMap<PRational, usize> = HashMap::new();
    let mut orbit = Vec::new();
    let mut x = *a;
    for step in 0..=max_steps {
        if let Some(&first) = seen.get(&x) {
            return Ok(DworkOrbit {
                base: *a,
                preperiod: first,
                period: step - first,
                orbit,
            });
        }
        seen.insert(x, step);
        orbit.push(x);
        x = dwork_prime(&x, p)?;
    }
    Err(Error::OrbitBudget {
        value: a.to_string(),
        steps: max_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> PRational {
        s.parse().unwrap()
    }

    #[test]
    fn digits_examples() {
        for n in 0..5 {
            assert_eq!(padic_digit(&q("1/2"), 5, n).unwrap(), 2);
            assert_eq!(padic_digit(&q("1"), 5, n).unwrap(), 4);
        }
        assert_eq!(padic_digit(&q("1/3"), 5, 0).unwrap(), 3);
        assert!(padic_digit(&q("1/5"), 5, 0).is_err());
    }

    #[test]
    fn dwork_prime_examples() {
        for p in [2, 3, 5, 7, 11, 13] {
            assert_eq!(dwork_prime(&q("1"), p).unwrap(), q("1"));
        }
        assert_eq!(dwork_prime(&q("1/2"), 5).unwrap(), q("1/2"));
        assert_eq!(dwork_prime(&q("1/3"), 5).unwrap(), q("2/3"));
        assert_eq!(dwork_prime(&q("2/3"), 5).unwrap(), q("1/3"));
        // 2 = -3 + 5·1, so 2' = 1.
        assert_eq!(dwork_prime(&q("2"), 5).unwrap(), q("1"));
    }

    #[test]
    fn orbit_examples() {
        let o = dwork_orbit(&q("1/2"), 5, 16).unwrap();
        assert_eq!((o.preperiod, o.period), (0, 1));
        let o = dwork_orbit(&q("1/3"), 5, 16).unwrap();
        assert_eq!((o.preperiod, o.period), (0, 2));
        assert_eq!(o.orbit, vec![q("1/3"), q("2/3")]);
        assert_eq!(o.iterate(5), q("2/3"));
        let o = dwork_orbit(&q("1"), 3, 16).unwrap();
        assert_eq!((o.preperiod, o.period), (0, 1));
        let o = dwork_orbit(&q("2"), 5, 16).unwrap();
        assert_eq!((o.preperiod, o.period), (1, 1));
    }

    #[test]
    fn orbit_budget_exhausted() {
        // 1/7 under p = 2 has period 3; one step is not enough.
        assert!(matches!(dwork_orbit(&q("1/7"), 2, 1), Err(Error::OrbitBudget { .. })));
        assert_eq!(
            dwork_orbit(&q("1/7"), 2, default_orbit_budget(&q("1/7"), 2))
                .unwrap()
                .period,
            3
        );
    }
}
