//! Numerical toolkit for sums of the triple divisor function over binary
//! quadratic forms.
//!
//! The crate provides exact integer kernels (factorization, multiplicative
//! functions, divisor sieves), complete exponential and character sums with
//! brute-force and closed-form evaluators, a Fourier expansion of the
//! Kronecker delta over moduli, Voronoi summation for `d3`, Poisson summation
//! over quadratic-form lattices, the oscillatory integral transforms tying
//! them together, and an experiment driver that reproduces the main-term
//! decomposition `S = S_M + S_1` at desk scale.
//!
//! Every identity ships with a definition-level evaluator and an independent
//! route (dual formula, closed form, or direct enumeration); the test suites
//! cross-verify the two sides at pinned tolerances.

pub mod arith;
pub mod delta;
pub mod error;
pub mod experiment;
pub mod expsums;
pub mod num;
pub mod oscillatory;
pub mod poisson;
pub mod report;
pub mod voronoi;

pub use error::{Error, Result};
