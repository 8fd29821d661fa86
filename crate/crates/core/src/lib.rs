//! Solvable PT-symmetric Morse oscillator and its companion singular
//! harmonic oscillator on a complex line.
//!
//! The numerical modules are generic over the real scalar ([`Real`], i.e.
//! `f32` or `f64`); the aliases below fix them to `f64`, which is what every
//! tolerance in this crate is tuned for.

// `!(x > 0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod contour;
pub mod equation;
pub mod error;
pub mod integrator;
pub mod scalar;
pub mod specfun;
pub mod spectra;
pub mod verifier;
pub mod wavefun;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;

pub type Contour64 = contour::Contour<f64>;
pub type PathPoint64 = contour::PathPoint<f64>;
pub type Equation64 = equation::Equation<f64>;
pub type HoLevel64 = spectra::HoLevel<f64>;
pub type SpectralLevel64 = spectra::SpectralLevel<f64>;
pub type FamilyDecomposition64 = spectra::FamilyDecomposition<f64>;
pub type Degeneracy64 = spectra::Degeneracy<f64>;
pub type OrderingColumn64 = spectra::OrderingColumn<f64>;
pub type BoundState64 = wavefun::BoundState<f64>;
pub type GeneralSolution64 = wavefun::GeneralSolutionParams<f64>;
pub type ProblemSpec64 = verifier::ProblemSpec<f64>;
pub type ShootingConfig64 = verifier::ShootingConfig<f64>;
pub type ShootingResult64 = verifier::ShootingResult<f64>;
