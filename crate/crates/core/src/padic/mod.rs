//! Exact p-adic arithmetic: rationals in ℤ_(p), valuation-tracked residues,
//! digit expansions, Dwork primes, Pochhammer products, ψ̃_p and the Iwasawa
//! logarithm.

mod digamma;
mod dwork;
mod number;
mod pochhammer;
mod rational;

pub use digamma::{iwasawa_log_oneunit, psi_tilde};
pub use dwork::{default_orbit_budget, dwork_orbit, dwork_prime, leading_digit, padic_digit, DworkOrbit};
pub use number::PAdicNumber;
pub use pochhammer::{braces_pochhammer, pochhammer};
pub use rational::PRational;

use crate::error::Result;

/// Embed `q` as `p^v · u` with `u` known mod `p^prec`.
pub fn reduce_rational(q: &PRational, p: u64, prec: u32) -> Result<PAdicNumber> {
    PAdicNumber::from_rational(q, p, prec)
}
