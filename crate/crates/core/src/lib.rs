//! Tools for the question "is every n > 24 a prime plus a non-squarefree
//! integer?": exact sieves and counting functions, a segmented range
//! verifier, the explicit analytic criteria that settle large n, and the
//! least-prime gate used under GRH.

// `!(x > y)` comparisons are deliberate: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod arith;
pub mod error;
pub mod gate;
pub mod representations;
pub mod verifier;

mod kahan;

pub use error::{Error, Result};
pub use kahan::KahanSum;
