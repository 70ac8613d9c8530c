//! Angular momentum, Runge-Lenz and Schrödinger operators in momentum space.
//!
//! Two function spaces appear: the momentum wavefunction `a(p)` and the
//! weighted form `b(p) = (1+p²)² a(p)`. The Runge-Lenz vector has one
//! differential form per space; they are related by conjugation with
//! `(1+p²)²`.

use crate::poly::{Axis, LinearOperator, PolyField, Polynomial3, VectorField};
use crate::scalar::Coefficient;

/// A vector operator, one [`LinearOperator`] per axis.
#[derive(Clone, Debug)]
pub struct OperatorTriple<C> {
    pub x: LinearOperator<C>,
    pub y: LinearOperator<C>,
    pub z: LinearOperator<C>,
}

impl<C: Coefficient> OperatorTriple<C> {
    pub fn from_fn(f: impl Fn(Axis) -> LinearOperator<C>) -> Self {
        OperatorTriple { x: f(Axis::X), y: f(Axis::Y), z: f(Axis::Z) }
    }

    pub fn component(&self, axis: Axis) -> &LinearOperator<C> {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
        }
    }

    /// `Σ_i self_i ∘ other_i`.
    pub fn dot(&self, other: &Self) -> LinearOperator<C> {
        LinearOperator::sum(Axis::ALL.iter().map(|&a| self.component(a).compose(other.component(a))).collect())
    }

    pub fn apply(&self, f: &PolyField<C>) -> VectorField<C> {
        VectorField { x: self.x.apply(f), y: self.y.apply(f), z: self.z.apply(f) }
    }
}

/// Reading of the product `(l̂+1)p` in the a-space Runge-Lenz operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RungeLenzOrdering {
    /// `f ↦ i(l̂+1)(p_i f) − i((p²−1)/2)∂_i f`. Conjugates exactly onto the
    /// b-space operator; this is the default.
    DegreeOutermost,
    /// `f ↦ i p_i (l̂+1) f − i((p²−1)/2)∂_i f`. Differs from the default by
    /// `−i p_i` and fails the conjugation identity.
    CoordinateOutermost,
}

impl RungeLenzOrdering {
    pub fn name(self) -> &'static str {
        match self {
            RungeLenzOrdering::DegreeOutermost => "degree-outermost",
            RungeLenzOrdering::CoordinateOutermost => "coordinate-outermost",
        }
    }
}

fn i_unit<C: Coefficient>() -> C {
    C::imaginary_unit()
}

/// `(p² − 1)/2` as a ring element.
fn half_p2_minus_one<C: Coefficient>() -> PolyField<C> {
    PolyField::from_polynomial(
        (&Polynomial3::sum_of_squares() - &Polynomial3::one()).scale(&C::from_ratio(1, 2)),
    )
}

/// `L_i = −i (p × ∇)_i`.
pub fn angular_momentum<C: Coefficient>(axis: Axis) -> LinearOperator<C> {
    let (j, k) = axis.cyclic();
    let pj_dk = LinearOperator::coordinate_mul(j).compose(&LinearOperator::partial(k));
    let pk_dj = LinearOperator::coordinate_mul(k).compose(&LinearOperator::partial(j));
    (&pj_dk - &pk_dj).scale(-i_unit::<C>())
}

pub fn angular_momentum_triple<C: Coefficient>() -> OperatorTriple<C> {
    OperatorTriple::from_fn(angular_momentum)
}

/// `L² = Σ L_i L_i`.
pub fn angular_momentum_squared<C: Coefficient>() -> LinearOperator<C> {
    let l = angular_momentum_triple::<C>();
    l.dot(&l)
}

/// Lowering operator `L₋ = L_x − i L_y`.
pub fn lowering_operator<C: Coefficient>() -> LinearOperator<C> {
    &angular_momentum(Axis::X) - &angular_momentum::<C>(Axis::Y).scale(i_unit())
}

/// A-space Runge-Lenz component with the default operator ordering.
pub fn runge_lenz_a<C: Coefficient>(axis: Axis) -> LinearOperator<C> {
    runge_lenz_a_with(axis, RungeLenzOrdering::DegreeOutermost)
}

/// A-space Runge-Lenz component `i(l̂+1)p − i((p²−1)/2)∇` with an explicit
/// ordering of the first term.
pub fn runge_lenz_a_with<C: Coefficient>(axis: Axis, ordering: RungeLenzOrdering) -> LinearOperator<C> {
    let degree_plus_one = &LinearOperator::euler_degree() + &LinearOperator::identity();
    let coord = LinearOperator::coordinate_mul(axis);
    let first = match ordering {
        RungeLenzOrdering::DegreeOutermost => degree_plus_one.compose(&coord),
        RungeLenzOrdering::CoordinateOutermost => coord.compose(&degree_plus_one),
    };
    let second = LinearOperator::ring_mul(half_p2_minus_one()).compose(&LinearOperator::partial(axis));
    (&first - &second).scale(i_unit())
}

/// B-space Runge-Lenz component `i p_i l̂ − i((p²−1)/2)∂_i`.
pub fn runge_lenz_b<C: Coefficient>(axis: Axis) -> LinearOperator<C> {
    let first = LinearOperator::coordinate_mul(axis).compose(&LinearOperator::euler_degree());
    let second = LinearOperator::ring_mul(half_p2_minus_one()).compose(&LinearOperator::partial(axis));
    (&first - &second).scale(i_unit())
}

pub fn runge_lenz_a_triple<C: Coefficient>() -> OperatorTriple<C> {
    OperatorTriple::from_fn(runge_lenz_a)
}

pub fn runge_lenz_b_triple<C: Coefficient>() -> OperatorTriple<C> {
    OperatorTriple::from_fn(runge_lenz_b)
}

/// Momentum-space Schrödinger operator on b-space functions,
/// `−((1+p²)²/4)Δ + ((1+p²)/2) l̂`, with eigenvalue `n² − 1` on the level-n
/// states.
pub fn hamiltonian_b<C: Coefficient>() -> LinearOperator<C> {
    let quarter_w2 = PolyField::<C>::weight(2).scale(&C::from_ratio(-1, 4));
    let half_w = PolyField::<C>::weight(1).scale(&C::from_ratio(1, 2));
    &LinearOperator::ring_mul(quarter_w2).compose(&LinearOperator::laplacian())
        + &LinearOperator::ring_mul(half_w).compose(&LinearOperator::euler_degree())
}

/// `L² + Â²` built by composing the component operators (b-space form).
pub fn casimir_sum<C: Coefficient>() -> LinearOperator<C> {
    let a = runge_lenz_b_triple::<C>();
    &angular_momentum_squared() + &a.dot(&a)
}

/// `A∘B − B∘A`.
pub fn commutator<C: Coefficient>(a: &LinearOperator<C>, b: &LinearOperator<C>) -> LinearOperator<C> {
    &a.compose(b) - &b.compose(a)
}

/// `f ↦ (1+p²)^power · op((1+p²)^{−power} f)`.
pub fn conjugate_by_weight<C: Coefficient>(op: &LinearOperator<C>, power: i32) -> LinearOperator<C> {
    LinearOperator::compose_all(vec![
        LinearOperator::ring_mul(PolyField::weight(power)),
        op.clone(),
        LinearOperator::ring_mul(PolyField::weight(-power)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianRational as G;

    type F = PolyField<G>;

    fn p(a: Axis) -> F {
        F::coordinate(a)
    }

    fn g(n: i64) -> G {
        G::from_integer(n)
    }

    #[test]
    fn lz_eigenvalue_on_top_state() {
        let f = &p(Axis::X) + &p(Axis::Y).scale(&G::i());
        assert_eq!(angular_momentum::<G>(Axis::Z).apply(&f), f);
        assert!(angular_momentum::<G>(Axis::Z).apply(&p(Axis::Z)).is_zero());
        assert!(angular_momentum::<G>(Axis::X).apply(&F::weight(-1)).is_zero());
    }

    #[test]
    fn runge_lenz_a_examples() {
        for axis in Axis::ALL {
            assert!(runge_lenz_a::<G>(axis).apply(&F::weight(-2)).is_zero());
            // i(l̂+1)(p_i) = 2i p_i; the alternative reading gives i p_i.
            assert_eq!(runge_lenz_a::<G>(axis).apply(&F::one()), p(axis).scale(&(G::i() * g(2))));
            assert_eq!(
                runge_lenz_a_with::<G>(axis, RungeLenzOrdering::CoordinateOutermost).apply(&F::one()),
                p(axis).scale(&G::i())
            );
        }
        // Â_3 p₃ = 3i p₃² − i(p²−1)/2
        let expected = &(&p(Axis::Z) * &p(Axis::Z)).scale(&(G::i() * g(3)))
            - &(&F::momentum_squared() - &F::one()).scale(&(G::i() * G::ratio(1, 2)));
        assert_eq!(runge_lenz_a::<G>(Axis::Z).apply(&p(Axis::Z)), expected);
    }

    #[test]
    fn runge_lenz_b_examples() {
        let zeta = F::new(&Polynomial3::sum_of_squares() - &Polynomial3::one(), 1);
        for axis in Axis::ALL {
            assert!(runge_lenz_b::<G>(axis).apply(&F::one()).is_zero());
            let expected = p(axis).mul_weight(-1).scale(&(G::i() * g(2)));
            assert_eq!(runge_lenz_b::<G>(axis).apply(&zeta), expected);
        }
        let img = runge_lenz_b::<G>(Axis::X).apply(&p(Axis::Z).mul_weight(-1));
        assert!(img.denom_power() <= 3);
    }

    #[test]
    fn hamiltonian_on_low_states() {
        let h = hamiltonian_b::<G>();
        assert!(h.apply(&F::one()).is_zero());
        let b200 = F::new(&Polynomial3::sum_of_squares() - &Polynomial3::one(), 1);
        assert_eq!(h.apply(&b200), b200.scale(&g(3)));
        for a in Axis::ALL {
            let b21 = p(a).mul_weight(-1);
            assert_eq!(h.apply(&b21), b21.scale(&g(3)));
        }
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let c = commutator(&LinearOperator::<G>::identity(), &runge_lenz_b(Axis::Y));
        assert!(c.apply(&p(Axis::X).mul_weight(-2)).is_zero());
    }

    #[test]
    fn conjugation_examples() {
        let f = (&p(Axis::X) * &p(Axis::Y)).mul_weight(-1);
        assert_eq!(conjugate_by_weight(&LinearOperator::<G>::identity(), 2).apply(&f), f);
        // (1+p²)∂₁(1+p²)⁻¹ 1 = −2p₁/(1+p²); power −1 flips the sign.
        let d1 = LinearOperator::<G>::partial(Axis::X);
        assert_eq!(conjugate_by_weight(&d1, 1).apply(&F::one()), p(Axis::X).mul_weight(-1).scale(&g(-2)));
        assert_eq!(conjugate_by_weight(&d1, -1).apply(&F::one()), p(Axis::X).mul_weight(-1).scale(&g(2)));
    }
}
