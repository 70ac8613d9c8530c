use std::ops::{Add, Mul, Neg, Sub};

use super::{Axis, Polynomial3};
use crate::scalar::Coefficient;

/// Canonical element `numerator / (1+p²)^denom_power`.
///
/// The numerator is never divisible by `1+p²` while `denom_power > 0`, and
/// the zero element always has `denom_power == 0`, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyField<C> {
    numerator: Polynomial3<C>,
    denom_power: u32,
}

fn weight_poly<C: Coefficient>(k: u32) -> Polynomial3<C> {
    Polynomial3::one_plus_sum_of_squares().pow(k)
}

impl<C: Coefficient> PolyField<C> {
    /// Normalizes `numerator / (1+p²)^denom_power`, cancelling every common
    /// factor of `1+p²`.
    pub fn new(numerator: Polynomial3<C>, denom_power: u32) -> Self {
        let mut numerator = numerator;
        let mut denom_power = denom_power;
        if numerator.is_zero() {
            return PolyField { numerator, denom_power: 0 };
        }
        while denom_power > 0 {
            match numerator.exact_div_one_plus_sum_of_squares() {
                Some(q) => {
                    numerator = q;
                    denom_power -= 1;
                }
                None => break,
            }
        }
        PolyField { numerator, denom_power }
    }

    /// Trusted constructor: caller guarantees canonical form.
    pub(crate) fn from_canonical(numerator: Polynomial3<C>, denom_power: u32) -> Self {
        debug_assert!(numerator.is_zero() <= (denom_power == 0));
        PolyField { numerator, denom_power }
    }

    pub fn zero() -> Self {
        PolyField { numerator: Polynomial3::zero(), denom_power: 0 }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        PolyField { numerator: Polynomial3::constant(c), denom_power: 0 }
    }

    pub fn coordinate(axis: Axis) -> Self {
        PolyField { numerator: Polynomial3::variable(axis.index()), denom_power: 0 }
    }

    pub fn from_polynomial(p: Polynomial3<C>) -> Self {
        PolyField { numerator: p, denom_power: 0 }
    }

    /// `p² = p1² + p2² + p3²`.
    pub fn momentum_squared() -> Self {
        Self::from_polynomial(Polynomial3::sum_of_squares())
    }

    /// `(1+p²)^power` for any integer power.
    pub fn weight(power: i32) -> Self {
        if power >= 0 {
            Self::from_polynomial(weight_poly(power as u32))
        } else {
            PolyField { numerator: Polynomial3::one(), denom_power: power.unsigned_abs() }
        }
    }

    pub fn numerator(&self) -> &Polynomial3<C> {
        &self.numerator
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Numerator rewritten over `(1+p²)^target`; `target >= denom_power`.
    pub(crate) fn numerator_over(&self, target: u32) -> Polynomial3<C> {
        debug_assert!(target >= self.denom_power);
        let diff = target - self.denom_power;
        if diff == 0 {
            self.numerator.clone()
        } else {
            &self.numerator * &weight_poly(diff)
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyField { numerator: self.numerator.scale(c), denom_power: self.denom_power }
    }

    /// Multiply by `(1+p²)^power`.
    pub fn mul_weight(&self, power: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if power >= 0 {
            let k = power as u32;
            if k <= self.denom_power {
                PolyField { numerator: self.numerator.clone(), denom_power: self.denom_power - k }
            } else {
                PolyField {
                    numerator: &self.numerator * &weight_poly(k - self.denom_power),
                    denom_power: 0,
                }
            }
        } else if self.denom_power == 0 {
            Self::new(self.numerator.clone(), power.unsigned_abs())
        } else {
            // Numerator is already coprime to 1+p².
            PolyField {
                numerator: self.numerator.clone(),
                denom_power: self.denom_power + power.unsigned_abs(),
            }
        }
    }

    pub fn mul_coordinate(&self, axis: Axis) -> Self {
        // p_i·P is divisible by 1+p² iff P is.
        PolyField { numerator: self.numerator.mul_variable(axis.index()), denom_power: self.denom_power }
    }

    /// `∂_i [P/(1+p²)^N] = [(∂_i P)(1+p²) − 2N p_i P] / (1+p²)^{N+1}`.
    pub fn partial(&self, axis: Axis) -> Self {
        let n = self.denom_power;
        let dp = self.numerator.partial(axis.index());
        if n == 0 {
            return PolyField { numerator: dp, denom_power: 0 };
        }
        let w = weight_poly::<C>(1);
        let numerator = &(&dp * &w)
            - &self.numerator.mul_variable(axis.index()).scale(&C::from_i64(2 * n as i64));
        Self::new(numerator, n + 1)
    }

    /// `(p·∇) [P/(1+p²)^N] = [(p·∇P)(1+p²) − 2N p² P] / (1+p²)^{N+1}`.
    pub fn euler_degree(&self) -> Self {
        let n = self.denom_power;
        let ep = self.numerator.euler();
        if n == 0 {
            return PolyField { numerator: ep, denom_power: 0 };
        }
        let w = weight_poly::<C>(1);
        let s = Polynomial3::<C>::sum_of_squares();
        let numerator = &(&ep * &w) - &(&s * &self.numerator).scale(&C::from_i64(2 * n as i64));
        Self::new(numerator, n + 1)
    }

    /// `Δ[P W^{-N}] = [ΔP·W² − 4N(p·∇P)W − 2N P(3W − 2(N+1)p²)] / W^{N+2}`, `W = 1+p²`.
    pub fn laplacian(&self) -> Self {
        let n = self.denom_power;
        let lp = self.numerator.laplacian();
        if n == 0 {
            return PolyField { numerator: lp, denom_power: 0 };
        }
        let w = weight_poly::<C>(1);
        let w2 = &w * &w;
        let s = Polynomial3::<C>::sum_of_squares();
        let n64 = n as i64;
        let inner = &w.scale(&C::from_i64(3)) - &s.scale(&C::from_i64(2 * (n64 + 1)));
        let numerator = &(&(&lp * &w2) - &(&self.numerator.euler() * &w).scale(&C::from_i64(4 * n64)))
            - &(&self.numerator * &inner).scale(&C::from_i64(2 * n64));
        Self::new(numerator, n + 2)
    }

    pub fn gradient(&self) -> VectorField<C> {
        VectorField { x: self.partial(Axis::X), y: self.partial(Axis::Y), z: self.partial(Axis::Z) }
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        PolyField { numerator: self.numerator.conj(), denom_power: self.denom_power }
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> PolyField<D> {
        PolyField::new(self.numerator.map_coefficients(f), self.denom_power)
    }
}

impl<C: Coefficient> Add for &PolyField<C> {
    type Output = PolyField<C>;
    fn add(self, rhs: Self) -> PolyField<C> {
        let n = self.denom_power.max(rhs.denom_power);
        PolyField::new(&self.numerator_over(n) + &rhs.numerator_over(n), n)
    }
}

impl<C: Coefficient> Sub for &PolyField<C> {
    type Output = PolyField<C>;
    fn sub(self, rhs: Self) -> PolyField<C> {
        let n = self.denom_power.max(rhs.denom_power);
        PolyField::new(&self.numerator_over(n) - &rhs.numerator_over(n), n)
    }
}

impl<C: Coefficient> Mul for &PolyField<C> {
    type Output = PolyField<C>;
    fn mul(self, rhs: Self) -> PolyField<C> {
        PolyField::new(&self.numerator * &rhs.numerator, self.denom_power + rhs.denom_power)
    }
}

impl<C: Coefficient> Neg for &PolyField<C> {
    type Output = PolyField<C>;
    fn neg(self) -> PolyField<C> {
        PolyField { numerator: -&self.numerator, denom_power: self.denom_power }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Coefficient> $tr for PolyField<C> {
            type Output = PolyField<C>;
            fn $method(self, rhs: Self) -> PolyField<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> Neg for PolyField<C> {
    type Output = PolyField<C>;
    fn neg(self) -> PolyField<C> {
        -&self
    }
}

/// One [`PolyField`] per momentum axis.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorField<C> {
    pub x: PolyField<C>,
    pub y: PolyField<C>,
    pub z: PolyField<C>,
}

impl<C: Coefficient> VectorField<C> {
    pub fn component(&self, axis: Axis) -> &PolyField<C> {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
        }
    }

    /// Σ a_i·b_i.
    pub fn dot(&self, other: &Self) -> PolyField<C> {
        Axis::ALL
            .iter()
            .map(|&a| self.component(a) * other.component(a))
            .fold(PolyField::zero(), |acc, t| &acc + &t)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}
