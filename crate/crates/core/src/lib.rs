//! Time-optimal synthesis of single-qutrit gates on a spin-1 quadrupole
//! nucleus, using hard nonselective pulses separated by two free-evolution
//! intervals.
//!
//! The operator algebra is generic over the real scalar ([`Real`], implemented
//! for `f32` and `f64`); the aliases below fix it to `f64`, which is what the
//! solver and the CLI use.

// `!(x < tol)` is used on purpose so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod cartan;
pub mod error;
pub mod gates;
pub mod pulse;
pub mod scalar;
pub mod solver;
pub mod su3;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Operator = su3::Operator3<f64>;
pub type Operator32 = su3::Operator3<f32>;
pub type Params = cartan::SequenceParams<f64>;
pub type Gate = gates::GateTarget<f64>;
pub type Solution = analytic::AnalyticSolution<f64>;
pub type SolveResult = solver::SolveResult;
pub type Program = pulse::PulseProgram<f64>;
