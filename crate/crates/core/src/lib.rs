//! Generalized p-adic hypergeometric functions of logarithmic type.
//!
//! The crate is organized bottom-up:
//!
//! - [`padic`]: exact p-adic kernels (valuation-tracked residues, Dwork primes,
//!   Pochhammer products, ψ̃_p, Iwasawa logarithm).
//! - [`exact`]: the same coefficient formulas over exact big rationals, used as
//!   an independent oracle and by the congruence suites.
//! - [`hyperseries`]: coefficient streams `C_n`, `D_n`, truncated evaluation,
//!   Dwork's admissibility conditions and special values `𝓕^(σ)(α) mod p^m`.
//! - [`congruence`]: verification suites for the Dwork and logarithmic
//!   congruences and the lemmas behind them.
//! - [`curve`]: formal λ-series for the hypergeometric-curve Frobenius system.
//! - [`batch`]: parallel evaluation of special-value tables.

pub mod batch;
pub mod congruence;
pub mod curve;
pub mod error;
pub mod exact;
pub mod hyperseries;
pub mod modular;
pub mod padic;
pub mod par;
pub mod reference_table;

pub use error::{Error, Result};
pub use hyperseries::{HGParams, SpecialValueResult};
pub use padic::{PAdicNumber, PRational};
