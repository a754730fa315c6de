//! Realization, evaluation and spectral certification of Schur–Agler class
//! functions given by finite colligations.
//!
//! The core is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod colligation;
pub mod error;
pub mod evaluate;
pub mod numerics;
pub mod realizations;
pub mod scalar;
pub mod spectra;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type Matrix = numerics::ComplexMatrix<f64>;
pub type Tolerances = numerics::ToleranceConfig<f64>;
pub type Colligation = colligation::Colligation<f64>;
pub type StateStructure = colligation::StateStructure<f64>;
pub type QPencil = colligation::QPencil<f64>;
