//! Momentum-space bound states of the unit-radius Coulomb problem.
//!
//! The level-(n, l, m) state in the weighted b-space is
//!
//! ```text
//! b(p) = Y_lm(p) · (1+p²)^{-l} · F(−k, 2l+k+2; l+3/2; 1/(1+p²)),   k = n−l−1,
//! ```
//!
//! where `Y_lm` is an unnormalized solid harmonic and `F` the terminating
//! Gauss series. The plain momentum wavefunction is `a = b/(1+p²)²`.
//! No normalization constants are applied anywhere; every coefficient stays
//! a Gaussian rational.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::operators::lowering_operator;
use crate::poly::{write_polynomial, PolyField, PolyFieldJson, Polynomial3};
use crate::scalar::{Coefficient, Real};

pub const STATE_SCHEMA_VERSION: u32 = 1;

/// Validated quantum numbers `n ≥ 1`, `0 ≤ l < n`, `|m| ≤ l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl QuantumNumbers {
    pub fn new(n: i64, l: i64, m: i64) -> Result<Self> {
        let err = |reason| Err(Error::QuantumNumbers { n, l, m, reason });
        if n < 1 {
            return err("n must be at least 1");
        }
        if l < 0 || l >= n {
            return err("l must satisfy 0 <= l < n");
        }
        if m.abs() > l {
            return err("m must satisfy |m| <= l");
        }
        Ok(QuantumNumbers { n: n as u32, l: l as u32, m: m as i32 })
    }

    /// Radial quantum number `k = n − l − 1`.
    pub fn k(&self) -> u32 {
        self.n - self.l - 1
    }

    /// Every valid triple with `n ≤ max_n`, ordered by (n, l, m).
    pub fn all_up_to(max_n: u32) -> Vec<QuantumNumbers> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for l in 0..n {
                for m in -(l as i32)..=(l as i32) {
                    out.push(QuantumNumbers { n, l, m });
                }
            }
        }
        out
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={}, m={})", self.n, self.l, self.m)
    }
}

/// Unnormalized solid harmonic: `Y_ll = (p1 + i p2)^l`, lower `m` obtained
/// by repeated application of `L₋ = L_x − i L_y`.
pub fn solid_harmonic<C: Coefficient>(l: u32, m: i32) -> Result<Polynomial3<C>> {
    if m.unsigned_abs() > l {
        return Err(Error::Argument(format!("solid harmonic needs |m| <= l, got l={l}, m={m}")));
    }
    let plus = &Polynomial3::variable(0) + &Polynomial3::variable(1).scale(&C::imaginary_unit());
    let mut y = PolyField::from_polynomial(plus.pow(l));
    let lower = lowering_operator::<C>();
    for _ in 0..(l as i32 - m) {
        y = lower.apply(&y);
    }
    debug_assert_eq!(y.denom_power(), 0);
    Ok(y.numerator().clone())
}

/// Coefficients `c_j` of `u^j` in the terminating Gauss series
/// `F(−k, 2l+k+2; l+3/2; u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeomCoeffs<T> {
    pub k: u32,
    pub l: u32,
    coeffs: Vec<T>,
}

impl<T: Num + Clone> HypergeomCoeffs<T> {
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Horner evaluation at `u`.
    pub fn eval(&self, u: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * u.clone() + c.clone())
    }
}

/// Gauss series with `α = −k`, `β = 2l+k+2`, `γ = l+3/2`, term by term
/// from the Pochhammer ratio `c_{j+1}/c_j = (α+j)(β+j)/((γ+j)(j+1))`.
pub fn hypergeom_poly<T: Num + Clone + FromPrimitive>(k: u32, l: u32) -> HypergeomCoeffs<T> {
    let int = |v: i64| T::from_i64(v).expect("small integers are representable");
    let alpha = -(k as i64);
    let beta = 2 * l as i64 + k as i64 + 2;
    let mut coeffs = vec![T::one()];
    for j in 0..k as i64 {
        let prev = coeffs.last().unwrap().clone();
        // (γ + j) = (2l + 3 + 2j)/2
        let num = int(alpha + j) * int(beta + j) * int(2);
        let den = int(2 * l as i64 + 3 + 2 * j) * int(j + 1);
        coeffs.push(prev * num / den);
    }
    HypergeomCoeffs { k, l, coeffs }
}

/// Unit-radius b-space state; its canonical denominator power is `l + k`.
pub fn state_b<C: Coefficient>(qn: QuantumNumbers) -> PolyField<C> {
    let k = qn.k();
    let y = solid_harmonic::<C>(qn.l, qn.m).expect("validated quantum numbers");
    let hyper = hypergeom_poly::<BigRational>(k, qn.l);
    let w = Polynomial3::<C>::one_plus_sum_of_squares();
    // Σ_j c_j (1+p²)^{k−j}, by Horner in (1+p²).
    let mut radial = Polynomial3::<C>::zero();
    for c in hyper.coeffs() {
        radial = &(&radial * &w) + &Polynomial3::constant(C::from_rational(c));
    }
    PolyField::new(&y * &radial, qn.l + k)
}

/// Unit-radius a-space state, `b/(1+p²)²`.
pub fn state_a<C: Coefficient>(qn: QuantumNumbers) -> PolyField<C> {
    state_b::<C>(qn).mul_weight(-2)
}

/// Which of the two momentum representations a field lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    A,
    B,
}

/// Quantum numbers with both momentum representations.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState<C> {
    pub numbers: QuantumNumbers,
    pub b: PolyField<C>,
    pub a: PolyField<C>,
}

impl<C: Coefficient> QuantumState<C> {
    pub fn new(numbers: QuantumNumbers) -> Self {
        let b = state_b(numbers);
        let a = b.mul_weight(-2);
        QuantumState { numbers, b, a }
    }

    pub fn from_numbers(n: i64, l: i64, m: i64) -> Result<Self> {
        Ok(Self::new(QuantumNumbers::new(n, l, m)?))
    }

    pub fn field(&self, space: Space) -> &PolyField<C> {
        match space {
            Space::A => &self.a,
            Space::B => &self.b,
        }
    }
}

/// `f(scale·p)` for a ring element `f`: represented as
/// `numerator(p) / (1 + scale²p²)^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledField<C> {
    unit: PolyField<C>,
    numerator: Polynomial3<C>,
    scale: u32,
}

/// Substitute `p → n·p`.
pub fn rescale_physical<C: Coefficient>(f: &PolyField<C>, n: u32) -> ScaledField<C> {
    let numerator = f.numerator().scale_variables(&C::from_i64(n as i64));
    ScaledField { unit: f.clone(), numerator, scale: n }
}

impl<C: Coefficient> ScaledField<C> {
    /// Builds `numerator / (1 + scale² p²)^denom_power` directly.
    pub fn from_parts(numerator: Polynomial3<C>, denom_power: u32, scale: u32) -> Result<Self> {
        if scale == 0 {
            return Err(Error::Argument("scale must be positive".into()));
        }
        // Undo the substitution to recover the unit-radius field.
        let inv = C::from_rational(&BigRational::new(BigInt::one(), BigInt::from(scale)));
        let unit = PolyField::new(numerator.scale_variables(&inv), denom_power);
        Ok(rescale_physical(&unit, scale))
    }

    pub fn numerator(&self) -> &Polynomial3<C> {
        &self.numerator
    }

    pub fn denom_power(&self) -> u32 {
        self.unit.denom_power()
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// The unscaled field `f` with `self(p) = f(scale·p)`.
    pub fn unit(&self) -> &PolyField<C> {
        &self.unit
    }

    pub fn eval<T: Real>(&self, p: [T; 3]) -> num_complex::Complex<T> {
        let s = T::from_f64_lossy(self.scale as f64);
        self.unit.eval([p[0] * s, p[1] * s, p[2] * s])
    }
}

impl ScaledField<GaussianRational> {
    /// The constant `c` with `self = c · other`, if one exists.
    pub fn proportionality_constant(&self, other: &Self) -> Option<GaussianRational> {
        proportionality_constant(&self.unit, &other.unit).filter(|_| self.scale == other.scale)
    }

    pub fn to_json(&self) -> PolyFieldJson {
        let f = PolyField::from_canonical(self.numerator.clone(), self.denom_power());
        f.to_json()
    }
}

impl fmt::Display for ScaledField<GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        write_polynomial(f, &self.numerator, &["p1", "p2", "p3"])?;
        write!(f, "]/(1+{}p^2)^{}", self.scale * self.scale, self.denom_power())
    }
}

/// The constant `c` with `f = c · g`, if one exists (`g ≠ 0`).
pub fn proportionality_constant(
    f: &PolyField<GaussianRational>,
    g: &PolyField<GaussianRational>,
) -> Option<GaussianRational> {
    let (m, gc) = g.numerator().terms().next()?;
    let c = f.numerator().coefficient(m.0) * gc.inv()?;
    (f == &g.scale(&c)).then_some(c)
}

/// Exact coordinates of `f` in the span of `basis`, or `None` if `f` lies
/// outside it. Gaussian elimination over the Gaussian rationals.
pub fn decompose_in_basis(
    f: &PolyField<GaussianRational>,
    basis: &[PolyField<GaussianRational>],
) -> Option<Vec<GaussianRational>> {
    let n = basis.iter().map(PolyField::denom_power).chain([f.denom_power()]).max().unwrap_or(0);
    let columns: Vec<Polynomial3<GaussianRational>> = basis.iter().map(|b| b.numerator_over(n)).collect();
    let target = f.numerator_over(n);
    let mut monomials: Vec<[u32; 3]> = columns
        .iter()
        .chain([&target])
        .flat_map(|p| p.terms().map(|(m, _)| m.0).collect::<Vec<_>>())
        .collect();
    monomials.sort();
    monomials.dedup();
    let cols = basis.len();
    // Augmented matrix, one row per monomial.
    let mut rows: Vec<Vec<GaussianRational>> = monomials
        .iter()
        .map(|&e| {
            let mut row: Vec<_> = columns.iter().map(|c| c.coefficient(e)).collect();
            row.push(target.coefficient(e));
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row[c..=cols].iter_mut().zip(&pivot[c..=cols]) {
                    *x -= &(&factor * y);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut solution = vec![GaussianRational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        solution[c] = rows[i][cols].clone();
    }
    Some(solution)
}

/// `Y_lm(s·p) · (1+s²p²)^{−(l+e)} · Σ_j c_j (1+s²p²)^{−j}` as text, with the
/// Gauss series left unexpanded; `e` is 2 in a-space and 0 in b-space.
pub fn factored_text(qn: QuantumNumbers, space: Space, scale: u32) -> String {
    let s = GaussianRational::from_integer(scale as i64);
    let weight = if scale == 1 { "(1+p^2)".to_string() } else { format!("(1+{}p^2)", scale * scale) };
    let inverse_power = |j: u32| match j {
        0 => String::new(),
        1 => format!("/{weight}"),
        _ => format!("/{weight}^{j}"),
    };
    let mut factors = Vec::new();
    let y = solid_harmonic::<GaussianRational>(qn.l, qn.m).expect("validated quantum numbers").scale_variables(&s);
    if y != Polynomial3::one() {
        factors.push(format!("[{y}]"));
    }
    let lead = qn.l + if space == Space::A { 2 } else { 0 };
    if lead > 0 {
        factors.push(format!("1{}", inverse_power(lead)));
    }
    let hyper = hypergeom_poly::<BigRational>(qn.k(), qn.l);
    if hyper.coeffs().len() > 1 {
        let mut series = String::new();
        for (j, c) in hyper.coeffs().iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (j, mag.is_integer()) {
                (0, _) => format!("{mag}"),
                (_, true) => format!("{mag}{}", inverse_power(j as u32)),
                (_, false) => format!("({mag}){}", inverse_power(j as u32)),
            };
            if j == 0 {
                series += &format!("{}{body}", if c.is_negative() { "-" } else { "" });
            } else {
                series += &format!(" {sign} {body}");
            }
        }
        factors.push(format!("({series})"));
    }
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join(" * ")
    }
}

/// JSON envelope for an exported state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    #[serde(rename = "schemaVersion")]
    pub schema_version: u32,
    pub n: u32,
    pub l: u32,
    pub m: i32,
    pub k: u32,
    pub space: Space,
    /// Momentum scale: the denominator is `(1 + scale² p²)^denomPower`.
    pub scale: u32,
    pub field: PolyFieldJson,
}

impl QuantumState<GaussianRational> {
    pub fn to_json(&self, space: Space, physical: bool) -> StateJson {
        let qn = self.numbers;
        let field = self.field(space);
        let (scale, json) = if physical {
            (qn.n, rescale_physical(field, qn.n).to_json())
        } else {
            (1, field.to_json())
        };
        StateJson {
            schema_version: STATE_SCHEMA_VERSION,
            n: qn.n,
            l: qn.l,
            m: qn.m,
            k: qn.k(),
            space,
            scale,
            field: json,
        }
    }
}

/// The m = 0 member of the level-(n, l) multiplet, evaluated on the z-axis.
pub fn radial_profile<T: Real>(n: u32, l: u32, space: Space) -> Result<impl Fn(T) -> num_complex::Complex<T>> {
    let qn = QuantumNumbers::new(n as i64, l as i64, 0)?;
    let state = QuantumState::<GaussianRational>::new(qn);
    let compiled = crate::poly::CompiledField::<T>::new(state.field(space));
    Ok(move |r: T| compiled.eval([T::zero(), T::zero(), r]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Axis;
    use crate::operators::{angular_momentum, angular_momentum_squared, hamiltonian_b, runge_lenz_b};

    type G = GaussianRational;
    type F = PolyField<G>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qn(n: i64, l: i64, m: i64) -> QuantumNumbers {
        QuantumNumbers::new(n, l, m).unwrap()
    }

    #[test]
    fn quantum_number_validation() {
        assert!(QuantumNumbers::new(2, 2, 0).is_err());
        assert!(QuantumNumbers::new(0, 0, 0).is_err());
        assert!(QuantumNumbers::new(3, 1, 2).is_err());
        assert!(QuantumNumbers::new(3, -1, 0).is_err());
        assert_eq!(QuantumNumbers::all_up_to(3).len(), 1 + 4 + 9);
    }

    #[test]
    fn solid_harmonic_examples() {
        assert_eq!(solid_harmonic::<G>(0, 0).unwrap(), Polynomial3::one());
        let y11 = solid_harmonic::<G>(1, 1).unwrap();
        assert_eq!(y11, &Polynomial3::variable(0) + &Polynomial3::variable(1).scale(&G::i()));
        // One lowering: L₋(p1 + i p2) = −2 p3.
        let y10 = solid_harmonic::<G>(1, 0).unwrap();
        assert_eq!(y10, Polynomial3::variable(2).scale(&G::from_integer(-2)));
        // Two lowerings of (p1 + i p2)² ∝ 2p3² − p1² − p2².
        let y20 = solid_harmonic::<G>(2, 0).unwrap();
        let shape = Polynomial3::from_terms([
            ([0, 0, 2], G::from_integer(2)),
            ([2, 0, 0], G::from_integer(-1)),
            ([0, 2, 0], G::from_integer(-1)),
        ]);
        let c = proportionality_constant(&F::from_polynomial(y20.clone()), &F::from_polynomial(shape));
        assert!(c.is_some());
        assert!(y20.laplacian().is_zero());
        assert!(solid_harmonic::<G>(1, 2).is_err());
    }

    #[test]
    fn harmonics_are_harmonic_and_homogeneous() {
        for l in 0..=6 {
            for m in -(l as i32)..=(l as i32) {
                let y = solid_harmonic::<G>(l, m).unwrap();
                assert!(y.laplacian().is_zero(), "l={l} m={m}");
                assert!(y.is_homogeneous());
                assert_eq!(y.degree(), Some(l));
            }
        }
    }

    #[test]
    fn hypergeom_examples() {
        for l in 0..5 {
            assert_eq!(hypergeom_poly::<BigRational>(0, l).coeffs(), &[BigRational::one()]);
        }
        let h = hypergeom_poly::<BigRational>(1, 0);
        assert_eq!(h.coeffs(), &[BigRational::one(), q(-2, 1)]);
        let h = hypergeom_poly::<BigRational>(2, 0);
        assert_eq!(h.coeffs(), &[BigRational::one(), q(-16, 3), q(16, 3)]);
        let hf = hypergeom_poly::<f64>(2, 0);
        assert!((hf.coeffs()[1] + 16.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn hypergeom_signs_alternate() {
        for k in 0..8 {
            for l in 0..6 {
                let h = hypergeom_poly::<BigRational>(k, l);
                assert_eq!(h.coeffs().len(), k as usize + 1);
                for (j, c) in h.coeffs().iter().enumerate() {
                    assert_eq!(num_traits::Signed::is_negative(c), j % 2 == 1);
                }
            }
        }
    }

    #[test]
    fn state_examples() {
        assert_eq!(state_b::<G>(qn(1, 0, 0)), F::one());
        let b200 = F::new(&Polynomial3::sum_of_squares() - &Polynomial3::one(), 1);
        assert_eq!(state_b::<G>(qn(2, 0, 0)), b200);
        for n in 1..=5 {
            let l = n - 1;
            for m in -l..=l {
                let y = solid_harmonic::<G>(l as u32, m as i32).unwrap();
                assert_eq!(state_b::<G>(qn(n, l, m)), F::new(y.clone(), l as u32));
                assert_eq!(state_a::<G>(qn(n, l, m)), F::new(y, n as u32 + 1));
            }
        }
        assert_eq!(state_a::<G>(qn(1, 0, 0)), F::weight(-2));
        // (1/(1+p²)²)(1 − 2/(1+p²))
        let a200 = &F::weight(-2) * &(&F::one() - &F::weight(-1).scale(&G::from_integer(2)));
        assert_eq!(state_a::<G>(qn(2, 0, 0)), a200);
    }

    #[test]
    fn denominator_power_is_l_plus_k() {
        for q in QuantumNumbers::all_up_to(6) {
            let s = QuantumState::<G>::new(q);
            assert_eq!(s.b.denom_power(), q.l + q.k());
            assert_eq!(s.a, s.b.mul_weight(-2));
        }
    }

    #[test]
    fn states_are_angular_eigenfunctions() {
        let lz = angular_momentum::<G>(Axis::Z);
        let l2 = angular_momentum_squared::<G>();
        let h = hamiltonian_b::<G>();
        for q in QuantumNumbers::all_up_to(4) {
            let b = state_b::<G>(q);
            assert_eq!(lz.apply(&b), b.scale(&G::from_integer(q.m as i64)), "{q}");
            assert_eq!(l2.apply(&b), b.scale(&G::from_integer((q.l * (q.l + 1)) as i64)), "{q}");
            assert_eq!(h.apply(&b), b.scale(&G::from_integer((q.n * q.n - 1) as i64)), "{q}");
        }
    }

    #[test]
    fn rescale_examples() {
        let a200 = state_a::<G>(qn(2, 0, 0));
        let phys = rescale_physical(&a200, 2);
        // (1/(1+4p²)²)(1 − 2/(1+4p²)) = (4p² − 1)/(1+4p²)³
        let expected = ScaledField::from_parts(
            &Polynomial3::sum_of_squares().scale(&G::from_integer(4)) - &Polynomial3::one(),
            3,
            2,
        )
        .unwrap();
        assert_eq!(phys.proportionality_constant(&expected), Some(G::one()));
        assert_eq!(phys.to_string(), "[(-1/1) + (4/1)*p3^2 + (4/1)*p2^2 + (4/1)*p1^2]/(1+4p^2)^3");
        assert_eq!(rescale_physical(&a200, 1).unit(), &a200);
        assert_eq!(rescale_physical(&a200, 1).numerator(), a200.numerator());
    }

    #[test]
    fn multiplet_closure_for_n2() {
        let basis: Vec<F> = (-1..=1).map(|m| state_b::<G>(qn(2, 1, m))).collect();
        let b200 = state_b::<G>(qn(2, 0, 0));
        let az = runge_lenz_b::<G>(Axis::Z);
        let coords = decompose_in_basis(&az.apply(&b200), &basis).unwrap();
        // Â_z b200 = 2i p3/(1+p²) = −i · b210 with b210 = −2p3/(1+p²).
        assert_eq!(coords, vec![G::zero(), -G::i(), G::zero()]);
        for b in &basis {
            assert!(decompose_in_basis(&az.apply(b), std::slice::from_ref(&b200)).is_some());
        }
        // Outside the span.
        assert!(decompose_in_basis(&F::coordinate(Axis::X), std::slice::from_ref(&b200)).is_none());
    }

    #[test]
    fn factored_forms() {
        let qn = |n, l, m| QuantumNumbers::new(n, l, m).unwrap();
        assert_eq!(factored_text(qn(1, 0, 0), Space::B, 1), "1");
        assert_eq!(factored_text(qn(1, 0, 0), Space::A, 1), "1/(1+p^2)^2");
        assert_eq!(factored_text(qn(2, 0, 0), Space::A, 2), "1/(1+4p^2)^2 * (1 - 2/(1+4p^2))");
        assert_eq!(factored_text(qn(2, 1, 1), Space::A, 2), "[(2/1i)*p2 + (2/1)*p1] * 1/(1+4p^2)^3");
        assert_eq!(factored_text(qn(3, 0, 0), Space::B, 1), "(1 - (16/3)/(1+p^2) + (16/3)/(1+p^2)^2)");
    }
}
