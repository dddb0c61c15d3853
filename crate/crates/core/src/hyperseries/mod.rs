//! Hypergeometric coefficient streams, truncated series, Dwork's admissibility
//! conditions and special values of the logarithmic-type function
//! `𝓕^(σ)_{a,b}(t) = G_{a,b}(t) / F_{a,b}(t)`.

mod conditions;
mod eval;
mod params;
mod table;

pub use conditions::{check_dwork_conditions, Condition, ConditionFailure, ConditionReport};
pub use eval::{
    dwork_ratio, gauss_unit_check, h_unit_evidence, special_value, special_value_at_levels, truncated_eval,
    working_precision, Series, SpecialValueResult,
};
pub use params::HGParams;
pub use table::{constant_d0, CoefficientTable};
