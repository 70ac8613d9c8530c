use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyField;
use crate::error::{Error, Result};
use crate::gaussian::{rational_to_f64, GaussianRational};
use crate::scalar::{Coefficient, Real};

/// Exact value of a field at a point, rounded to a requested number of
/// significand bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactValue {
    pub re: BigRational,
    pub im: BigRational,
    pub precision: u32,
}

impl ExactValue {
    pub fn to_complex_f64(&self) -> Complex<f64> {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

/// Rounds `q` to the nearest rational with a `bits`-bit significand and a
/// power-of-two denominator.
pub fn round_to_precision(q: &BigRational, bits: u32) -> BigRational {
    if q.is_zero() {
        return BigRational::zero();
    }
    let a = q.abs();
    let mut e = a.numer().bits() as i64 - a.denom().bits() as i64;
    // a ∈ [2^(e-1), 2^(e+1)); pin e = floor(log2 a).
    let two_pow = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(BigInt::one() << k as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-k) as usize)
        }
    };
    if a < two_pow(e) {
        e -= 1;
    }
    let shift = bits as i64 - 1 - e;
    let m = (&a * two_pow(shift)).round();
    let rounded = m * two_pow(-shift);
    if q.is_negative() {
        -rounded
    } else {
        rounded
    }
}

impl PolyField<GaussianRational> {
    /// Exact evaluation at a real point, rounded once at the end to
    /// `precision` significand bits (`precision >= 53`).
    pub fn evaluate(&self, point: [f64; 3], precision: u32) -> Result<ExactValue> {
        if precision < 53 {
            return Err(Error::Argument(format!("precision must be at least 53 bits, got {precision}")));
        }
        let coords = point
            .iter()
            .map(|&x| {
                BigRational::from_float(x).ok_or_else(|| Error::Argument(format!("non-finite coordinate {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let coords: [BigRational; 3] = [coords[0].clone(), coords[1].clone(), coords[2].clone()];
        let re_part = self.numerator().eval_with(&coords, |c| c.re().clone());
        let im_part = self.numerator().eval_with(&coords, |c| c.im().clone());
        let w = BigRational::one() + coords.iter().map(|x| x * x).fold(BigRational::zero(), |a, b| a + b);
        let denom = num_traits::pow(w, self.denom_power() as usize);
        Ok(ExactValue {
            re: round_to_precision(&(re_part / &denom), precision),
            im: round_to_precision(&(im_part / &denom), precision),
            precision,
        })
    }
}

/// Floating-point image of a [`PolyField`] for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledField<T> {
    terms: Vec<([i32; 3], i32, Complex<T>)>,
    denom_power: i32,
}

impl<T: Real> CompiledField<T> {
    pub fn new<C: Coefficient>(field: &PolyField<C>) -> Self {
        let terms = field
            .numerator()
            .terms()
            .map(|(m, c)| {
                let e = m.exponents();
                let z = c.to_complex_f64();
                (
                    [e[0] as i32, e[1] as i32, e[2] as i32],
                    m.degree() as i32,
                    Complex::new(T::from_f64_lossy(z.re), T::from_f64_lossy(z.im)),
                )
            })
            .collect();
        CompiledField { terms, denom_power: field.denom_power() as i32 }
    }

    /// Value at `p`. For `|p| > 1` the radial magnitude is factored out of
    /// every term so that no intermediate grows like `|p|^degree`.
    pub fn eval(&self, p: [T; 3]) -> Complex<T> {
        let r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        let one = T::one();
        if r2 <= one {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (e, _, c) in &self.terms {
                let mono = p[0].powi(e[0]) * p[1].powi(e[1]) * p[2].powi(e[2]);
                acc = acc + c * mono;
            }
            acc / (one + r2).powi(self.denom_power)
        } else {
            let r = r2.sqrt();
            let q = [p[0] / r, p[1] / r, p[2] / r];
            let mut acc = Complex::new(T::zero(), T::zero());
            for (e, deg, c) in &self.terms {
                let mono = q[0].powi(e[0]) * q[1].powi(e[1]) * q[2].powi(e[2]);
                acc = acc + c * (mono * r.powi(deg - 2 * self.denom_power));
            }
            acc / (one + one / r2).powi(self.denom_power)
        }
    }
}

impl<C: Coefficient> PolyField<C> {
    /// Floating-point value at `p`.
    pub fn eval<T: Real>(&self, p: [T; 3]) -> Complex<T> {
        CompiledField::new(self).eval(p)
    }
}
