use crate::error::Result;
use crate::padic::{PAdicNumber, PRational};

/// `(a)_n = a(a+1)⋯(a+n-1)` with exact valuation and unit mod `p^prec`.
pub fn pochhammer(a: &PRational, n: u64, p: u64, prec: u32) -> Result<PAdicNumber> {
    a.require_p_integral(p)?;
    let mut acc = PAdicNumber::one(p, prec)?;
    for i in 0..n {
        let f = a.add_int(i as i64);
        if f.is_zero() {
            return Ok(PAdicNumber::zero(p));
        }
        acc = acc * PAdicNumber::from_rational(&f, p, prec)?;
    }
    Ok(acc)
}

/// `{a}_n`: the Pochhammer product keeping only factors prime to `p`. Always a unit.
pub fn braces_pochhammer(a: &PRational, n: u64, p: u64, prec: u32) -> Result<PAdicNumber> {
    a.require_p_integral(p)?;
    let mut acc = PAdicNumber::one(p, prec)?;
    for i in 0..n {
        let f = a.add_int(i as i64);
        if f.valuation(p).is_some_and(|v| v == 0) {
            acc = acc * PAdicNumber::from_rational(&f, p, prec)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> PRational {
        s.parse().unwrap()
    }

    #[test]
    fn pochhammer_examples() {
        for p in [5, 7, 11] {
            let x = pochhammer(&q("1/2"), 2, p, 4).unwrap();
            assert_eq!(x, PAdicNumber::from_rational(&q("3/4"), p, 4).unwrap());
        }
        assert_eq!(pochhammer(&q("7/3"), 0, 5, 3).unwrap(), PAdicNumber::one(5, 3).unwrap());
        let x = pochhammer(&q("1/2"), 3, 3, 4).unwrap();
        assert_eq!(x.valuation(), Some(1));
        assert_eq!(x, PAdicNumber::from_rational(&q("15/8"), 3, 4).unwrap());
        assert!(pochhammer(&q("-2"), 4, 5, 3).unwrap().is_exact_zero());
    }

    #[test]
    fn braces_examples() {
        assert_eq!(
            braces_pochhammer(&q("1/2"), 0, 3, 3).unwrap(),
            PAdicNumber::one(3, 3).unwrap()
        );
        for p in [3u64, 5, 7] {
            let fact: i64 = (1..p as i64).product();
            let x = braces_pochhammer(&q("1"), p, p, 3).unwrap();
            assert_eq!(x, PAdicNumber::from_int(p, fact, 3).unwrap());
        }
        let x = braces_pochhammer(&q("1/2"), 3, 3, 4).unwrap();
        assert_eq!(x, PAdicNumber::from_rational(&q("5/4"), 3, 4).unwrap());
    }
}
