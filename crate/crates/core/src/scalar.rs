//! Scalar abstractions shared by the exact and floating-point layers.
//!
//! Polynomial and operator code is generic over [`Coefficient`], which is
//! implemented for the exact [`GaussianRational`] field as well as for
//! `Complex<f64>` / `Complex<f32>`. Quadrature and geometry code is generic
//! over [`Real`] (`f32` / `f64`).

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, ToPrimitive, Zero};

use crate::gaussian::GaussianRational;

/// Coefficient ring for polynomials and operators.
///
/// Must contain the imaginary unit, since the angular-momentum and
/// Runge-Lenz operators carry a factor of `i`.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_i64(value: i64) -> Self;

    /// `numer / denom`; `denom` must be nonzero.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_rational(q: &BigRational) -> Self;

    fn imaginary_unit() -> Self;

    fn conj(&self) -> Self;

    fn to_complex_f64(&self) -> Complex<f64>;

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.clone() + rhs.clone();
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self = self.clone() - rhs.clone();
    }
}

impl Coefficient for GaussianRational {
    fn from_i64(value: i64) -> Self {
        GaussianRational::from_integer(value)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        GaussianRational::ratio(numer, denom)
    }

    fn from_rational(q: &BigRational) -> Self {
        GaussianRational::real(q.clone())
    }

    fn imaginary_unit() -> Self {
        GaussianRational::i()
    }

    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }

    fn to_complex_f64(&self) -> Complex<f64> {
        GaussianRational::to_complex_f64(self)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
}

macro_rules! float_complex_coefficient {
    ($t:ty) => {
        impl Coefficient for Complex<$t> {
            fn from_i64(value: i64) -> Self {
                Complex::new(value as $t, 0.0)
            }

            fn from_ratio(numer: i64, denom: i64) -> Self {
                Complex::new(numer as $t / denom as $t, 0.0)
            }

            fn from_rational(q: &BigRational) -> Self {
                Complex::new(q.to_f64().unwrap_or(f64::NAN) as $t, 0.0)
            }

            fn imaginary_unit() -> Self {
                Complex::new(0.0, 1.0)
            }

            fn conj(&self) -> Self {
                Complex::conj(self)
            }

            fn to_complex_f64(&self) -> Complex<f64> {
                Complex::new(self.re as f64, self.im as f64)
            }

            fn add_assign_ref(&mut self, rhs: &Self) {
                *self += *rhs;
            }

            fn sub_assign_ref(&mut self, rhs: &Self) {
                *self -= *rhs;
            }
        }
    };
}

float_complex_coefficient!(f64);
float_complex_coefficient!(f32);

/// Floating-point scalar used by the quadrature and geometry layers.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    fn from_f64_lossy(value: f64) -> Self {
        <Self as FromPrimitive>::from_f64(value).expect("finite f64 converts to every Real")
    }

    fn from_usize_lossy(value: usize) -> Self {
        <Self as FromPrimitive>::from_usize(value).expect("usize converts to every Real")
    }

    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {}
impl Real for f32 {}
