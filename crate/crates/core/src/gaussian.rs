//! Exact complex numbers with arbitrary-precision rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// `re + i·im` with `re`, `im` in lowest terms (positive denominators).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn from_integer(value: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(value)))
    }

    /// `numer / denom` as a real Gaussian rational. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn to_complex_f64(&self) -> Complex<f64> {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `a/b` with the denominator always written out.
pub(crate) fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussianRational::real(&self.re * &rhs.re),
            (true, false) => GaussianRational { re: &self.re * &rhs.re, im: &self.re * &rhs.im },
            (false, true) => GaussianRational { re: &self.re * &rhs.re, im: &self.im * &rhs.re },
            (false, false) => GaussianRational {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(mut self, rhs: GaussianRational) -> GaussianRational {
        self += &rhs;
        self
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(mut self, rhs: GaussianRational) -> GaussianRational {
        self -= &rhs;
        self
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the underlying rationals.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        &self * &inv
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        GaussianRational::real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(value: i64) -> Self {
        GaussianRational::from_integer(value)
    }
}

/// Canonical text: `a/b`, `c/di`, `a/b+c/di` or `a/b-c/di`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", format_rational(&self.im));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", format_rational(&self.re), sign, format_rational(&self.im.abs()))
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussianRational::real(parse_rational(s)?));
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last();
        match split {
            None => Ok(GaussianRational::new(BigRational::zero(), parse_rational(body)?)),
            Some(idx) => {
                let re = parse_rational(&body[..idx])?;
                let im_str = body[idx..].strip_prefix('+').unwrap_or(&body[idx..]);
                Ok(GaussianRational::new(re, parse_rational(im_str)?))
            }
        }
    }
}
