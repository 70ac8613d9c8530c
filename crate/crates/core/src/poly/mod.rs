//! Multivariate polynomials over a [`Coefficient`] ring and the canonical
//! rational-function ring `P(p)/(1+p²)^N` built on top of them.

mod eval;
mod field;
mod operator;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use eval::{round_to_precision, CompiledField, ExactValue};
pub use field::{PolyField, VectorField};
pub use operator::{build_operator, LinearOperator, OperatorSpec, ScalarJson};
pub use text::{PolyFieldJson, TermJson};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// A momentum axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Zero-based index.
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    /// One-based axis number as used on the command line and in JSON.
    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u8) -> Result<Axis> {
        match n {
            1 => Ok(Axis::X),
            2 => Ok(Axis::Y),
            3 => Ok(Axis::Z),
            _ => Err(Error::Argument(format!("axis must be 1, 2 or 3, got {n}"))),
        }
    }

    /// The two axes following `self` cyclically: `(j, k)` with ε_{self,j,k} = +1.
    pub fn cyclic(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::Z, Axis::X),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }
}

/// Exponent vector of a monomial in `V` variables.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the first variable, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial<const V: usize>(pub [u32; V]);

impl<const V: usize> Monomial<V> {
    pub fn one() -> Self {
        Monomial([0; V])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32; V] {
        &self.0
    }

    fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }
}

impl<const V: usize> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl<const V: usize> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `V` variables. No stored coefficient is zero.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<C, const V: usize> {
    terms: BTreeMap<Monomial<V>, C>,
}

/// Polynomial in the momentum components `(p1, p2, p3)`.
pub type Polynomial3<C> = Polynomial<C, 3>;

impl<C: Coefficient, const V: usize> Polynomial<C, V> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0; V], c)
    }

    pub fn monomial(exponents: [u32; V], c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exponents), c);
        }
        Polynomial { terms }
    }

    /// The variable with zero-based index `var`.
    pub fn variable(var: usize) -> Self {
        let mut e = [0; V];
        e[var] = 1;
        Self::monomial(e, C::one())
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms<I: IntoIterator<Item = ([u32; V], C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(Monomial(e), &c);
        }
        p
    }

    /// `Σ x_i²`.
    pub fn sum_of_squares() -> Self {
        Self::from_terms((0..V).map(|i| {
            let mut e = [0; V];
            e[i] = 2;
            (e, C::one())
        }))
    }

    /// `1 + Σ x_i²`.
    pub fn one_plus_sum_of_squares() -> Self {
        Self::sum_of_squares() + Self::one()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: [u32; V]) -> C {
        self.terms.get(&Monomial(exponents)).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    fn add_term(&mut self, m: Monomial<V>, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn sub_term(&mut self, m: Monomial<V>, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.sub_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, -c.clone());
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (*m, x.mul_ref(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Polynomial { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by the monomial `x^exponents`.
    pub fn shift(&self, exponents: [u32; V]) -> Self {
        let s = Monomial(exponents);
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.mul(&s), c.clone())).collect() }
    }

    pub fn mul_variable(&self, var: usize) -> Self {
        let mut e = [0; V];
        e[var] = 1;
        self.shift(e)
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let k = m.0[var];
            if k == 0 {
                continue;
            }
            let mut e = m.0;
            e[var] -= 1;
            out.add_term(Monomial(e), &c.mul_ref(&C::from_i64(k as i64)));
        }
        out
    }

    /// Euler degree operator `Σ x_i ∂_i`: scales each term by its degree.
    pub fn euler(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() > 0)
            .map(|(m, c)| (*m, c.mul_ref(&C::from_i64(m.degree() as i64))))
            .collect();
        Polynomial { terms }
    }

    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for var in 0..V {
                let k = m.0[var];
                if k < 2 {
                    continue;
                }
                let mut e = m.0;
                e[var] -= 2;
                out.add_term(Monomial(e), &c.mul_ref(&C::from_i64((k * (k - 1)) as i64)));
            }
        }
        out
    }

    /// Substitute `x → λx`: each term is multiplied by `λ^degree`.
    pub fn scale_variables(&self, lambda: &C) -> Self {
        let mut powers = vec![C::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let d = m.degree() as usize;
            while powers.len() <= d {
                let next = powers.last().unwrap().mul_ref(lambda);
                powers.push(next);
            }
            out.add_term(*m, &c.mul_ref(&powers[d]));
        }
        out
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D, V> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.0, f(c))))
    }

    pub fn conj(&self) -> Self {
        self.map_coefficients(|c| c.conj())
    }

    /// Value of the polynomial at the point with `x_j = i` and all other
    /// coordinates zero, a zero of `1 + Σ x_i²`.
    fn value_at_imaginary_axis(&self, var: usize) -> C {
        let i = C::imaginary_unit();
        let minus_i = -i.clone();
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != var && e > 0) {
                continue;
            }
            let term = match m.0[var] % 4 {
                0 => c.clone(),
                1 => c.mul_ref(&i),
                2 => -c.clone(),
                _ => c.mul_ref(&minus_i),
            };
            acc.add_assign_ref(&term);
        }
        acc
    }

    /// Exact quotient by `1 + Σ x_i²`, or `None` when it does not divide.
    ///
    /// Multivariate division against the single divisor, whose graded-lex
    /// leading term is `x_1²`; the remainder is zero iff the divisor divides.
    pub fn exact_div_one_plus_sum_of_squares(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if V == 0 {
            return None;
        }
        for var in 0..V {
            if !self.value_at_imaginary_axis(var).is_zero() {
                return None;
            }
        }
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some((lead, c)) = rem.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if lead.0[0] < 2 {
                return None;
            }
            let mut q = lead.0;
            q[0] -= 2;
            // rem -= c·x^q·(1 + Σ x_i²)
            rem.sub_term(Monomial(q), &c);
            for var in 0..V {
                let mut e = q;
                e[var] += 2;
                rem.sub_term(Monomial(e), &c);
            }
            quotient.add_term(Monomial(q), &c);
        }
        Some(quotient)
    }

    /// Evaluate with a caller-supplied coefficient embedding.
    pub fn eval_with<T>(&self, point: &[T; V], embed: impl Fn(&C) -> T) -> T
    where
        T: Clone + num_traits::Zero + num_traits::One + Mul<Output = T> + Add<Output = T>,
    {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut term = embed(c);
            for (x, &e) in point.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }
}

impl<C: Coefficient, const V: usize> Add for &Polynomial<C, V> {
    type Output = Polynomial<C, V>;
    fn add(self, rhs: Self) -> Polynomial<C, V> {
        let (mut out, other) =
            if self.num_terms() >= rhs.num_terms() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<C: Coefficient, const V: usize> Sub for &Polynomial<C, V> {
    type Output = Polynomial<C, V>;
    fn sub(self, rhs: Self) -> Polynomial<C, V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.sub_term(*m, c);
        }
        out
    }
}

impl<C: Coefficient, const V: usize> Mul for &Polynomial<C, V> {
    type Output = Polynomial<C, V>;
    fn mul(self, rhs: Self) -> Polynomial<C, V> {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &ca.mul_ref(cb));
            }
        }
        out
    }
}

impl<C: Coefficient, const V: usize> Neg for &Polynomial<C, V> {
    type Output = Polynomial<C, V>;
    fn neg(self) -> Polynomial<C, V> {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<C: Coefficient, const V: usize> $tr for Polynomial<C, V> {
            type Output = Polynomial<C, V>;
            fn $method(self, rhs: Self) -> Polynomial<C, V> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<C: Coefficient, const V: usize> Neg for Polynomial<C, V> {
    type Output = Polynomial<C, V>;
    fn neg(self) -> Polynomial<C, V> {
        -&self
    }
}

/// Writes `(c)*x^a*y^b + ...` in ascending graded-lex order using `names`.
pub(crate) fn write_polynomial<C, const V: usize>(
    f: &mut fmt::Formatter<'_>,
    p: &Polynomial<C, V>,
    names: &[&str; V],
) -> fmt::Result
where
    C: Coefficient + fmt::Display,
{
    if p.is_zero() {
        return write!(f, "0");
    }
    for (idx, (m, c)) in p.terms().enumerate() {
        if idx > 0 {
            write!(f, " + ")?;
        }
        write!(f, "({c})")?;
        for (name, &e) in names.iter().zip(m.0.iter()) {
            match e {
                0 => {}
                1 => write!(f, "*{name}")?,
                _ => write!(f, "*{name}^{e}")?,
            }
        }
    }
    Ok(())
}

impl<C: Coefficient + fmt::Display> fmt::Display for Polynomial<C, 3> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_polynomial(f, self, &["p1", "p2", "p3"])
    }
}
