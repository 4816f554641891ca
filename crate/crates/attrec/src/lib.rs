//! Attitude reconstruction from discrete gyroscope measurements by functional
//! iterative integration in Chebyshev coefficient space.
//!
//! The quaternion kinematic equation is solved over one gyro update interval
//! by Picard-style successive substitution carried out directly on Chebyshev
//! polynomial coefficients ([`quatfiter`]), alongside the analogous
//! Rodrigues-vector solver ([`rodfiter`]) and classical baselines
//! ([`baselines`]): the two-sample coning update, normalized RK4, and a
//! fourth-order Crouch-Grossman Lie group method. [`scenarios`] synthesizes
//! exact coning and constant-rate measurements, and [`harness`] chains
//! per-interval solutions over long runs, computes principal-angle errors,
//! and benchmarks the solvers against each other.

pub mod baselines;
pub mod cheb;
pub mod error;
pub mod files;
pub mod gyro_fit;
pub mod harness;
pub mod quat;
pub mod quatfiter;
pub mod rodfiter;
pub mod scenarios;

pub use error::{Error, Result};
pub use quat::{Quaternion, Vec3};
