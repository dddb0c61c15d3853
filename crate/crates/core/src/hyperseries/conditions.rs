use num_integer::Integer;
use serde::Serialize;

use crate::error::Result;
use crate::padic::{default_orbit_budget, dwork_orbit, leading_digit, DworkOrbit, PRational};

use super::HGParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// (i): every Dwork iterate of a lower parameter `b_j ≠ 1` is a unit.
    LowerUnit,
    /// (ii): after sorting digits, `[a_{j+1}]_n < [b_j]_n` for `j = 1..q`.
    DigitOrder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    pub condition: Condition,
    pub digit_index: usize,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub ok: bool,
    /// Number of digit indices examined.
    pub depth: usize,
    pub failures: Vec<ConditionFailure>,
}

/// Orbits of all parameters and the number of digit indices after which the
/// joint digit pattern repeats (`max preperiod + lcm of periods`).
pub(crate) fn joint_orbits(params: &HGParams) -> Result<(Vec<DworkOrbit>, Vec<DworkOrbit>, usize)> {
    let orbit = |x: &PRational| dwork_orbit(x, params.p, default_orbit_budget(x, params.p));
    let a: Vec<_> = params.a.iter().map(orbit).collect::<Result<_>>()?;
    let b: Vec<_> = params.b.iter().map(orbit).collect::<Result<_>>()?;
    let (pre, per) = a.iter().chain(&b).fold((0usize, 1usize), |(pre, per), o| {
        (pre.max(o.preperiod), per.lcm(&o.period))
    });
    Ok((a, b, pre + per))
}

/// Check Dwork's conditions (i) and (ii) over one full joint orbit period,
/// capped at `depth` digit indices.
pub fn check_dwork_conditions(params: &HGParams, depth: usize) -> Result<ConditionReport> {
    let (a_orbits, b_orbits, joint) = joint_orbits(params)?;
    let depth = joint.min(depth);
    let p = params.p;
    let mut failures = Vec::new();

    let nontrivial: Vec<&DworkOrbit> = b_orbits.iter().filter(|o| !o.base.is_one()).collect();
    let q = nontrivial.len();
    let nontrivial_owned: Vec<DworkOrbit> = nontrivial.iter().map(|o| (*o).clone()).collect();
    for n in 0..depth {
        for o in &nontrivial {
            let x = o.iterate(n);
            if x.valuation(p) != Some(0) {
                failures.push(ConditionFailure {
                    condition: Condition::LowerUnit,
                    digit_index: n,
                    witness: format!("{}^({n}) = {x}", o.base),
                });
            }
        }
    }
    for n in 0..depth {
        let digits = |orbits: &[DworkOrbit]| -> Result<Vec<u64>> {
            let mut d: Vec<u64> = orbits
                .iter()
                .map(|o| leading_digit(&o.iterate(n), p))
                .collect::<Result<_>>()?;
            d.sort_unstable();
            Ok(d)
        };
        let da = digits(&a_orbits)?;
        let db = digits(&nontrivial_owned)?;
        for j in 0..q {
            if da[j + 1] >= db[j] {
                failures.push(ConditionFailure {
                    condition: Condition::DigitOrder,
                    digit_index: n,
                    witness: format!(
                        "sorted digits a={da:?} b={db:?}: a[{}]={} ≮ b[{j}]={}",
                        j + 1,
                        da[j + 1],
                        db[j]
                    ),
                });
            }
        }
    }
    Ok(ConditionReport {
        ok: failures.is_empty(),
        depth,
        failures,
    })
}
