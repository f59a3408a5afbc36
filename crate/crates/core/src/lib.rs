//! Reproducing kernel collocation for the time-fractional
//! Kudryashov–Sinelshchikov equation.
//!
//! The pipeline runs [`fracalc`] → [`kernels`] → [`operator`] → [`basis`] →
//! [`solver`] → [`metrics`]; see the `examples/` directory for one runnable
//! program per stage.

// negated comparisons such as `!(x > 0.0)` are there to reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod config;
pub mod error;
pub mod fracalc;
pub mod kernels;
pub mod metrics;
pub mod operator;
pub mod selftest;
pub mod solver;

pub use error::{Error, Result};
