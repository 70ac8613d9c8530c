//! Exact and numerical verification of the momentum-space hydrogen problem:
//! rational fields in `p`, the angular-momentum and Runge-Lenz operators,
//! the bound-state basis, the stereographic map onto the 3-sphere and the
//! quadrature checks that tie them to the integral equation.

pub mod eigenbasis;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod numerics;
pub mod operators;
pub mod poly;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use poly::{Axis, LinearOperator, PolyField, Polynomial, Polynomial3};
pub use scalar::{Coefficient, Real};

use num_complex::Complex;

/// Polynomial in `p` with exact Gaussian-rational coefficients.
pub type ExactPoly = Polynomial3<GaussianRational>;
/// Canonical field `P(p)/(1+p²)^N` with exact coefficients.
pub type ExactField = PolyField<GaussianRational>;
pub type ExactOperator = LinearOperator<GaussianRational>;

pub type FloatPoly = Polynomial3<Complex<f64>>;
pub type FloatField = PolyField<Complex<f64>>;
pub type FloatOperator = LinearOperator<Complex<f64>>;
