use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::is_prime;
use crate::padic::{dwork_prime, PRational};

/// Parameters `(a_1..a_s; b_1..b_{s-1})` of `sF_{s-1}`, the prime `p`, and the
/// Frobenius constant `c` of `σ(t) = c·t^p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HGParams {
    pub a: Vec<PRational>,
    pub b: Vec<PRational>,
    pub p: u64,
    pub c: PRational,
}

impl HGParams {
    /// Validates shapes and p-integrality; `c` defaults to 1.
    pub fn new(a: Vec<PRational>, b: Vec<PRational>, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if a.is_empty() || b.len() + 1 != a.len() {
            return Err(Error::InvalidInput(format!(
                "need s upper and s-1 lower parameters, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        for x in a.iter().chain(&b) {
            x.require_p_integral(p)?;
        }
        if let Some(bad) = b.iter().find(|x| x.is_nonpositive_integer()) {
            return Err(Error::InvalidInput(format!(
                "lower parameter {bad} is a non-positive integer"
            )));
        }
        Ok(Self {
            a,
            b,
            p,
            c: PRational::one(),
        })
    }

    /// `(i/N, j/N; k/N)`, the family tabulated at `t = 1`.
    pub fn from_tuple(p: u64, n: i64, i: i64, j: i64, k: i64) -> Result<Self> {
        Self::new(
            vec![PRational::new(i, n)?, PRational::new(j, n)?],
            vec![PRational::new(k, n)?],
            p,
        )
    }

    /// Set the Frobenius constant; it must be a 1-unit.
    pub fn with_frobenius_constant(mut self, c: PRational) -> Result<Self> {
        c.require_p_integral(self.p)?;
        if (c - PRational::one()).valuation(self.p).is_some_and(|v| v < 1) {
            return Err(Error::InvalidInput(format!(
                "Frobenius constant {c} is not ≡ 1 mod {}",
                self.p
            )));
        }
        self.c = c;
        Ok(self)
    }

    pub fn s(&self) -> usize {
        self.a.len()
    }

    /// Parameters of `F^{(1)}`: every `a_i`, `b_j` replaced by its Dwork prime.
    pub fn dwork_shift(&self) -> Self {
        let shift = |v: &[PRational]| {
            v.iter()
                .map(|x| dwork_prime(x, self.p).expect("validated p-integral"))
                .collect()
        };
        Self {
            a: shift(&self.a),
            b: shift(&self.b),
            p: self.p,
            c: self.c,
        }
    }

    /// Parameters of `F^{(level)}`.
    pub fn at_level(&self, level: usize) -> Self {
        (0..level).fold(self.clone(), |acc, _| acc.dwork_shift())
    }

    /// Hypothesis for the logarithmic-type function: no `a_i` in ℤ_{≤0}.
    pub fn require_log_type(&self) -> Result<()> {
        match self.a.iter().find(|x| x.is_nonpositive_integer()) {
            Some(bad) => Err(Error::InvalidInput(format!(
                "upper parameter {bad} is a non-positive integer"
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for HGParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[PRational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.a), join(&self.b))?;
        if !self.c.is_one() {
            write!(f, "[c={}]", self.c)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> PRational {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(HGParams::new(vec![q("1/2"), q("1/2")], vec![q("1")], 4).is_err());
        assert!(HGParams::new(vec![q("1/2")], vec![q("1")], 5).is_err());
        assert!(HGParams::new(vec![q("1/2"), q("1/2")], vec![q("-1")], 5).is_err());
        assert!(HGParams::new(vec![q("1/5"), q("1/2")], vec![q("1")], 5).is_err());
        let ok = HGParams::new(vec![q("1")], vec![], 3).unwrap();
        assert_eq!(ok.s(), 1);
        assert!(ok.clone().with_frobenius_constant(q("4")).is_ok());
        assert!(ok.with_frobenius_constant(q("2")).is_err());
    }

    #[test]
    fn shift_and_display() {
        let p = HGParams::new(vec![q("1/3"), q("2/3")], vec![q("1")], 5).unwrap();
        assert_eq!(p.dwork_shift().a, vec![q("2/3"), q("1/3")]);
        assert_eq!(p.at_level(2), p);
        assert_eq!(p.to_string(), "(1/3,2/3;1)");
    }
}
