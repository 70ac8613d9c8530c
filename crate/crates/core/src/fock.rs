//! Stereographic projection of momentum space onto the unit 3-sphere in
//! four dimensions, and the objects that live on it.
//!
//! Convention: `ξ = 2p/(1+p²)`, `ζ = ξ₀ = (p²−1)/(p²+1)`. The origin maps
//! to the south pole `ζ = −1`, infinity to the north pole `ζ = +1`.

use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Axis, PolyField, Polynomial, Polynomial3};
use crate::scalar::{Coefficient, Real};

/// Point on the unit 3-sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint<T> {
    pub xi: [T; 3],
    pub xi0: T,
}

impl<T: Num + Clone> SpherePoint<T> {
    /// `ξ² + ξ₀² − 1`; exactly zero for projected rational points.
    pub fn constraint_defect(&self) -> T {
        let s = self.xi.iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone());
        s + self.xi0.clone() * self.xi0.clone() - T::one()
    }
}

fn norm_sq<T: Num + Clone>(p: &[T; 3]) -> T {
    p.iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone())
}

/// Works for any field: `f64`, `f32` or exact rationals.
pub fn stereographic_forward<T: Num + Clone>(p: &[T; 3]) -> SpherePoint<T> {
    let s = norm_sq(p);
    let one = T::one();
    let denom = one.clone() + s.clone();
    let two = one.clone() + one.clone();
    SpherePoint {
        xi: [
            two.clone() * p[0].clone() / denom.clone(),
            two.clone() * p[1].clone() / denom.clone(),
            two * p[2].clone() / denom.clone(),
        ],
        xi0: (s - one) / denom,
    }
}

/// `p = ξ/(1 − ξ₀)`; the north pole has no preimage.
pub fn stereographic_inverse<T: Num + Clone>(s: &SpherePoint<T>) -> Result<[T; 3]> {
    let d = T::one() - s.xi0.clone();
    if d.is_zero() {
        return Err(Error::OutOfDomain("the north pole has no finite preimage"));
    }
    Ok([s.xi[0].clone() / d.clone(), s.xi[1].clone() / d.clone(), s.xi[2].clone() / d])
}

/// `dS₃/d³p = 8/(1+p²)³`.
pub fn sphere_weight<T: Num + Clone + FromPrimitive>(p: &[T; 3]) -> T {
    let w = T::one() + norm_sq(p);
    T::from_u8(8).unwrap() / (w.clone() * w.clone() * w)
}

/// Relative defect of
/// `1/|p−p′|² = [2/(1+p²)] · 1/|P−P′|² · [2/(1+p′²)]`,
/// with `P`, `P′` the projected sphere points.
pub fn kernel_identity_residual<T: Real>(p: &[T; 3], p2: &[T; 3]) -> Result<T> {
    let d = [p[0] - p2[0], p[1] - p2[1], p[2] - p2[2]];
    let dist2 = norm_sq(&d);
    if dist2 == T::zero() {
        return Err(Error::OutOfDomain("the kernel is singular at coincident points"));
    }
    let lhs = T::one() / dist2;
    let a = stereographic_forward(p);
    let b = stereographic_forward(p2);
    let chord2 = (0..3).map(|i| (a.xi[i] - b.xi[i]).powi(2)).fold(T::zero(), |x, y| x + y)
        + (a.xi0 - b.xi0).powi(2);
    let two = T::one() + T::one();
    let rhs = two / (T::one() + norm_sq(p)) / chord2 * two / (T::one() + norm_sq(p2));
    Ok(((lhs - rhs) / lhs).abs())
}

/// Polynomial in `(ξ₁, ξ₂, ξ₃, ζ)`.
pub type SpherePolynomial<C> = Polynomial<C, 4>;

const ZETA: usize = 3;

/// Substitutes the projection into `f`: `f(2p/(1+p²), (p²−1)/(p²+1))`.
pub fn pullback<C: Coefficient>(f: &SpherePolynomial<C>) -> PolyField<C> {
    let Some(top) = f.degree() else {
        return PolyField::zero();
    };
    let w = Polynomial3::<C>::one_plus_sum_of_squares();
    let zeta_num = &Polynomial3::<C>::sum_of_squares() - &Polynomial3::one();
    let two = C::from_i64(2);
    // Common denominator (1+p²)^top.
    let mut numerator = Polynomial3::zero();
    for (m, c) in f.terms() {
        let e = m.exponents();
        let xi_deg = e[0] + e[1] + e[2];
        let mut term = Polynomial3::monomial([e[0], e[1], e[2]], c.clone());
        let mut factor = C::one();
        for _ in 0..xi_deg {
            factor = factor.mul_ref(&two);
        }
        term = term.scale(&factor);
        term = &term * &zeta_num.pow(e[ZETA]);
        term = &term * &w.pow(top - m.degree());
        numerator = &numerator + &term;
    }
    PolyField::new(numerator, top)
}

/// `i(ξ_axis ∂_ζ − ζ ∂_{ξ_axis}) f`.
pub fn rotation_generator<C: Coefficient>(axis: Axis, f: &SpherePolynomial<C>) -> SpherePolynomial<C> {
    let xi = axis.index();
    let rot = &f.partial(ZETA).mul_variable(xi) - &f.partial(xi).mul_variable(ZETA);
    rot.scale(&C::imaginary_unit())
}

/// All monomials `ξ₁^a ξ₂^b ξ₃^c ζ^d` of total degree at most `max_degree`.
pub fn sphere_monomials<C: Coefficient>(max_degree: u32) -> Vec<SpherePolynomial<C>> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for a in 0..=d {
            for b in 0..=d - a {
                for c in 0..=d - a - b {
                    out.push(SpherePolynomial::monomial([a, b, c, d - a - b - c], C::one()));
                }
            }
        }
    }
    out
}

/// Gegenbauer polynomial `C^α_k(x)` by the three-term recurrence
/// `k C_k = 2x(k+α−1) C_{k−1} − (k+2α−2) C_{k−2}`.
pub fn gegenbauer<T: Num + Clone + FromPrimitive>(alpha: T, k: u32, x: T) -> T {
    let int = |v: u32| T::from_u32(v).expect("small integers are representable");
    let two = int(2);
    let mut prev = T::one();
    if k == 0 {
        return prev;
    }
    let mut cur = two.clone() * alpha.clone() * x.clone();
    for j in 2..=k {
        let jt = int(j);
        let next = (two.clone() * x.clone() * (jt.clone() + alpha.clone() - T::one()) * cur.clone()
            - (jt.clone() + two.clone() * alpha.clone() - two.clone()) * prev)
            / jt;
        prev = cur;
        cur = next;
    }
    cur
}

/// Relative spread `(max − min)/|mean|` of
/// `F(−k, 2l+k+2; l+3/2; (1−x)/2) / C^{l+1}_k(x)` over `samples`.
///
/// The shared `(1−x²)^{l/2}` factor cancels and is not evaluated.
pub fn gauss_gegenbauer_spread<T: Real>(n: u32, l: u32, samples: &[T]) -> Result<T> {
    if l >= n {
        return Err(Error::Argument(format!("need l < n, got n={n}, l={l}")));
    }
    let k = n - l - 1;
    let hyper = crate::eigenbasis::hypergeom_poly::<T>(k, l);
    let alpha = T::from_u32(l + 1).unwrap();
    let two = T::one() + T::one();
    let ratios: Vec<T> = samples
        .iter()
        .map(|&x| hyper.eval((T::one() - x) / two) / gegenbauer(alpha, k, x))
        .collect();
    let max = ratios.iter().cloned().fold(T::neg_infinity(), T::max);
    let min = ratios.iter().cloned().fold(T::infinity(), T::min);
    let mean = ratios.iter().cloned().fold(T::zero(), |a, b| a + b) / T::from_usize_lossy(ratios.len());
    Ok((max - min) / mean.abs())
}

/// `count` midpoints of a uniform partition of (−1, 1).
pub fn default_zeta_samples<T: Real>(count: usize) -> Vec<T> {
    (0..count)
        .map(|j| {
            let t = T::from_f64_lossy((2 * j + 1) as f64 / (2 * count) as f64);
            t + t - T::one()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::runge_lenz_b;
    use crate::GaussianRational as G;
    use num_rational::BigRational;

    type S = SpherePolynomial<G>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn forward_examples() {
        let s = stereographic_forward(&[0.0, 0.0, 0.0]);
        assert_eq!(s, SpherePoint { xi: [0.0; 3], xi0: -1.0 });
        let s = stereographic_forward(&[q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(s.xi, [q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(s.xi0, q(0, 1));
        let far = stereographic_forward(&[0.0f64, 1e8, 0.0]);
        assert!((far.xi0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_examples() {
        let s = SpherePoint { xi: [q(0, 1), q(0, 1), q(3, 5)], xi0: q(4, 5) };
        assert_eq!(s.constraint_defect(), q(0, 1));
        let p = stereographic_inverse(&s).unwrap();
        assert_eq!(p, [q(0, 1), q(0, 1), q(3, 1)]);
        assert_eq!(stereographic_forward(&p), s);
        assert_eq!(stereographic_inverse(&SpherePoint { xi: [0.0; 3], xi0: -1.0 }).unwrap(), [0.0; 3]);
        let north = SpherePoint { xi: [0.0; 3], xi0: 1.0 };
        assert!(matches!(stereographic_inverse(&north), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn exact_constraint_on_rational_points() {
        let p = [q(1, 3), q(-7, 2), q(5, 11)];
        assert_eq!(stereographic_forward(&p).constraint_defect(), q(0, 1));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_identity_residual(&[1.0, 0.0, 0.0], &[0.0; 3]).unwrap() < 1e-15);
        assert!(kernel_identity_residual(&[2.0, 0.0, 0.0], &[-2.0, 0.0, 0.0]).unwrap() < 1e-15);
        assert!(kernel_identity_residual(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(sphere_weight(&[0.0, 0.0, 0.0]), 8.0);
        assert_eq!(sphere_weight(&[1.0, 0.0, 0.0]), 1.0);
        assert_eq!(sphere_weight(&[q(1, 1), q(1, 1), q(0, 1)]), q(8, 27));
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(pullback(&S::one()), PolyField::one());
        let zeta = pullback(&S::variable(ZETA));
        assert_eq!(zeta, PolyField::new(&Polynomial3::sum_of_squares() - &Polynomial3::one(), 1));
        assert_eq!(pullback(&S::sum_of_squares()), PolyField::one());
        assert!(pullback(&S::zero()).is_zero());
    }

    #[test]
    fn rotation_examples() {
        for axis in Axis::ALL {
            let r = rotation_generator(axis, &S::variable(ZETA));
            assert_eq!(r, S::variable(axis.index()).scale(&G::i()));
            assert!(rotation_generator(axis, &S::one()).is_zero());
        }
        assert_eq!(rotation_generator(Axis::X, &S::variable(0)), S::variable(ZETA).scale(&-G::i()));
    }

    #[test]
    fn rotation_matches_runge_lenz_on_low_degree() {
        for f in sphere_monomials::<G>(2) {
            for axis in Axis::ALL {
                let lhs = pullback(&rotation_generator(axis, &f));
                let rhs = runge_lenz_b::<G>(axis).apply(&pullback(&f));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn gegenbauer_examples() {
        for &x in &[-0.7f64, 0.0, 0.3] {
            assert_eq!(gegenbauer(2.5, 0, x), 1.0);
            assert!((gegenbauer(1.0, 2, x) - (4.0 * x * x - 1.0)).abs() < 1e-15);
        }
        assert_eq!(gegenbauer(1.0, 1, 0.5), 1.0);
        // Exact arithmetic path.
        assert_eq!(gegenbauer(q(1, 1), 2, q(1, 2)), q(0, 1));
    }

    #[test]
    fn gauss_gegenbauer_low_levels() {
        let samples = default_zeta_samples::<f64>(20);
        for n in 1..=5 {
            for l in 0..n {
                assert!(gauss_gegenbauer_spread(n, l, &samples).unwrap() < 1e-10);
            }
        }
        let samples32 = default_zeta_samples::<f32>(20);
        assert!(gauss_gegenbauer_spread(3, 0, &samples32).unwrap() < 1e-4);
    }
}
