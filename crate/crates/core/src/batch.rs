//! Special-value tables for the family `(i/N, j/N; k/N)` at `t = 1`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperseries::{special_value, HGParams};
use crate::padic::PRational;
use crate::par::{self, Exec};
use crate::reference_table::PUBLISHED;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tuple {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: i64,
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

impl Tuple {
    pub fn new(p: u64, n: i64, i: i64, j: i64, k: i64) -> Self {
        Self { p, n, i, j, k }
    }

    /// Checks `N | p − 1`, `1 ≤ i, j` and `i + j ≤ k ≤ N`, naming the first violation.
    pub fn validate(&self) -> Result<()> {
        let Self { p, n, i, j, k } = *self;
        if n < 2 || (p as i64 - 1) % n != 0 {
            return Err(Error::InvalidInput(format!(
                "N = {n} must be ≥ 2 and divide p - 1 = {}",
                p as i64 - 1
            )));
        }
        if i < 1 || j < 1 {
            return Err(Error::InvalidInput(format!("i = {i} and j = {j} must be positive")));
        }
        if i + j > k {
            return Err(Error::InvalidInput(format!("i + j = {} exceeds k = {k}", i + j)));
        }
        if k > n {
            return Err(Error::InvalidInput(format!("k = {k} exceeds N = {n}")));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<HGParams> {
        HGParams::from_tuple(self.p, self.n, self.i, self.j, self.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: i64,
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub modulus: u64,
    pub value: u64,
}

impl TableRow {
    pub fn tuple(&self) -> Tuple {
        Tuple::new(self.p, self.n, self.i, self.j, self.k)
    }

    pub fn csv_header() -> &'static str {
        "p,N,i,j,k,modulus,value"
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.p, self.n, self.i, self.j, self.k, self.modulus, self.value
        )
    }
}

/// Tuples of the published table, in key order.
pub fn published_tuples() -> Vec<Tuple> {
    PUBLISHED
        .iter()
        .map(|&(p, n, i, j, k, _)| Tuple::new(p, n, i, j, k))
        .collect()
}

/// Every `(i, j, k)` with `i ≤ j`, `i + j ≤ k ≤ N` and `gcd(i, j, k, N) = 1`.
///
/// Tuples with a common factor `d` are the tuple for `N/d` in disguise and are
/// skipped.
pub fn admissible_tuples(p: u64, n: i64) -> Result<Vec<Tuple>> {
    Tuple::new(p, n, 1, 1, 2).validate()?;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            for k in (i + j)..=n {
                if i.gcd(&j).gcd(&k).gcd(&n) == 1 {
                    out.push(Tuple::new(p, n, i, j, k));
                }
            }
        }
    }
    Ok(out)
}

/// Special value at `t = 1` for one tuple.
pub fn compute_row(tuple: &Tuple, prec: u32) -> Result<TableRow> {
    tuple.validate()?;
    let r = special_value(&tuple.params()?, &PRational::one(), prec)?;
    let Tuple { p, n, i, j, k } = *tuple;
    Ok(TableRow {
        p,
        n,
        i,
        j,
        k,
        modulus: r.modulus,
        value: r.value,
    })
}

/// All rows or the first error in tuple order.
pub fn compute_table(tuples: &[Tuple], prec: u32, exec: Exec) -> Result<Vec<TableRow>> {
    par::map(exec, tuples, |t| compute_row(t, prec)).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration() {
        assert_eq!(admissible_tuples(3, 2).unwrap(), vec![Tuple::new(3, 2, 1, 1, 2)]);
        let five: Vec<_> = admissible_tuples(5, 4)
            .unwrap()
            .iter()
            .map(|t| (t.i, t.j, t.k))
            .collect();
        assert_eq!(
            five,
            vec![(1, 1, 2), (1, 1, 3), (1, 1, 4), (1, 2, 3), (1, 2, 4), (1, 3, 4)]
        );
        assert!(admissible_tuples(7, 4).is_err());
    }

    #[test]
    fn validation_names_the_condition() {
        let e = Tuple::new(7, 3, 2, 2, 3).validate().unwrap_err().to_string();
        assert!(e.contains("exceeds k"), "{e}");
        let e = Tuple::new(7, 4, 1, 1, 2).validate().unwrap_err().to_string();
        assert!(e.contains("divide"), "{e}");
    }

    #[test]
    fn small_table_matches_sequential() {
        let tuples = admissible_tuples(7, 6).unwrap();
        let a = compute_table(&tuples, 2, Exec::Sequential).unwrap();
        let b = compute_table(&tuples, 2, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), tuples.len());
    }

    #[test]
    fn csv_shape() {
        let row = compute_row(&Tuple::new(5, 4, 1, 1, 3), 2).unwrap();
        assert_eq!(row.to_csv(), "5,4,1,1,3,25,6");
    }
}
