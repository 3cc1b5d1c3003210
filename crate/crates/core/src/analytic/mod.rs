//! Explicit analytic criteria and the constants and bounds they use.
//!
//! Everything here works on `log n` (plus a factorization where coprimality
//! matters), so arguments far beyond 64 bits need no wide arithmetic.

pub mod bounds;
pub mod constants;
pub mod criterion;
pub mod optimize;

pub use bounds::{
    bt_factor, coprime_mobius_series, p_exact, prop2_upper_bound, qbound_check, ramare_tail,
    robin_omega_bound, tail_oracle, w, PROP2_MIN_LOG_N,
};
pub use constants::{artin_constant, artin_partial_product};
pub use criterion::{
    bennett_log_x0, criterion_generic, criterion_grh, criterion_odd, CriterionBreakdown,
    CriterionMode, CriterionParams, CriterionTerms, EBound, PSource, BENNETT_X0,
};
pub use optimize::{optimize_a, OptimizeMode, OptimizeResult};
