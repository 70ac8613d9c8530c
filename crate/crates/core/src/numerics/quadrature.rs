use std::ops::{Add, Mul};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Fixed-rule family used on every panel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    GaussLegendre,
}

/// Quadrature configuration shared by the numerical checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuadratureSpec {
    /// Nodes per panel.
    pub nodes: usize,
    /// Radial breakpoints; the last one starts the mapped tail.
    pub domain_split: Vec<f64>,
    pub scheme: Scheme,
    /// Allowed disagreement between a rule and its node-doubled refinement.
    pub precision_target: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            nodes: 32,
            domain_split: vec![0.5, 1.0, 2.0, 4.0, 8.0, 16.0],
            scheme: Scheme::GaussLegendre,
            precision_target: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub const MIN_NODES: usize = 16;

    pub fn validate(&self) -> Result<()> {
        if self.nodes < Self::MIN_NODES {
            return Err(Error::Quadrature(format!("need at least {} nodes, got {}", Self::MIN_NODES, self.nodes)));
        }
        if self.domain_split.iter().any(|b| !b.is_finite() || *b <= 0.0) {
            return Err(Error::Quadrature("breakpoints must be finite and positive".into()));
        }
        if self.domain_split.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Quadrature("breakpoints must be strictly increasing".into()));
        }
        if self.precision_target.is_nan() || self.precision_target <= 0.0 {
            return Err(Error::Quadrature("precision target must be positive".into()));
        }
        Ok(())
    }

    pub fn with_nodes(&self, nodes: usize) -> Self {
        QuadratureSpec { nodes, ..self.clone() }
    }

    pub fn refined(&self) -> Self {
        self.with_nodes(self.nodes * 2)
    }

    pub fn rule<T: Real>(&self) -> GaussLegendre<T> {
        match self.scheme {
            Scheme::GaussLegendre => GaussLegendre::new(self.nodes),
        }
    }

    /// Breakpoints merged with `extra`, sorted and deduplicated, with 0 in
    /// front.
    pub fn radial_breakpoints(&self, extra: &[f64]) -> Vec<f64> {
        let mut pts: Vec<f64> = self.domain_split.iter().chain(extra).copied().filter(|&x| x > 0.0).collect();
        pts.push(0.0);
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1.0));
        pts
    }
}

/// Gauss-Legendre rule on [−1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Roots of `P_n` by Newton iteration in `f64`, then converted.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a rule needs at least one node");
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre {
            nodes: nodes.into_iter().map(T::from_f64_lossy).collect(),
            weights: weights.into_iter().map(T::from_f64_lossy).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `∫_a^b f`.
    pub fn integrate<V, F>(&self, a: T, b: T, mut f: F) -> V
    where
        V: Zero + Add<Output = V> + Mul<T, Output = V>,
        F: FnMut(T) -> V,
    {
        let two = T::one() + T::one();
        let half = (b - a) / two;
        let mid = (a + b) / two;
        let mut acc = V::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * *x) * (*w * half);
        }
        acc
    }

    /// Sum over consecutive panels `[pts[i], pts[i+1]]`.
    pub fn integrate_panels<V, F>(&self, pts: &[T], mut f: F) -> V
    where
        V: Zero + Add<Output = V> + Mul<T, Output = V>,
        F: FnMut(T) -> V,
    {
        pts.windows(2).fold(V::zero(), |acc, w| acc + self.integrate(w[0], w[1], &mut f))
    }

    /// `∫_start^∞ f` through `r = start + t/(1−t)`.
    pub fn integrate_tail<V, F>(&self, start: T, mut f: F) -> V
    where
        V: Zero + Add<Output = V> + Mul<T, Output = V>,
        F: FnMut(T) -> V,
    {
        self.integrate(T::zero(), T::one(), |t| {
            let s = T::one() - t;
            f(start + t / s) * (T::one() / (s * s))
        })
    }

    /// `∫_0^∞ f` over the given breakpoints (starting at 0) plus the tail.
    pub fn integrate_radial<V, F>(&self, breakpoints: &[T], mut f: F) -> V
    where
        V: Zero + Add<Output = V> + Mul<T, Output = V>,
        F: FnMut(T) -> V,
    {
        let last = *breakpoints.last().expect("at least the origin");
        self.integrate_panels(breakpoints, &mut f) + self.integrate_tail(last, &mut f)
    }
}

/// `P_n(x)` and `P_n'(x)`.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Breakpoints on `[a, b]` refined geometrically toward `b` (`toward_end`)
/// or toward `a`, for integrands with a logarithmic endpoint singularity.
///
/// The innermost sliver of relative width `ratio^levels` is left out; its
/// contribution is of order `ratio^levels · |ln(ratio^levels)|`.
pub fn graded_panels<T: Real>(a: T, b: T, ratio: T, levels: usize, toward_end: bool) -> Vec<T> {
    let width = b - a;
    let mut offsets = vec![T::one()];
    let mut cur = T::one();
    for _ in 0..levels {
        cur = cur * ratio;
        offsets.push(cur);
    }
    if toward_end {
        let mut pts: Vec<T> = offsets.iter().map(|&o| b - width * o).collect();
        pts[0] = a;
        pts
    } else {
        let mut pts: Vec<T> = offsets.iter().rev().map(|&o| a + width * o).collect();
        let last = pts.len() - 1;
        pts[last] = b;
        pts
    }
}

/// Mean of `f` over the unit sphere by a Gauss-Legendre × trapezoid product
/// rule, exact for polynomials in the direction of total degree ≤ `degree`.
pub fn sphere_average<T: Real, F: FnMut([T; 3]) -> T>(degree: u32, mut f: F) -> T {
    let polar = GaussLegendre::<T>::new(degree as usize / 2 + 1);
    let azimuthal = degree as usize + 1;
    let step = T::from_f64_lossy(std::f64::consts::TAU / azimuthal as f64);
    let two = T::one() + T::one();
    let mut acc = T::zero();
    for (c, w) in polar.nodes().iter().zip(polar.weights()) {
        let s = (T::one() - *c * *c).sqrt();
        let mut ring = T::zero();
        for j in 0..azimuthal {
            let (sp, cp) = (step * T::from_usize(j).unwrap()).sin_cos();
            ring = ring + f([s * cp, s * sp, *c]);
        }
        acc = acc + ring * *w / T::from_usize(azimuthal).unwrap();
    }
    acc / two
}

/// A value computed with a rule and with its node-doubled refinement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Refinement<V> {
    pub coarse: V,
    pub fine: V,
}

impl<T: Real> Refinement<T> {
    /// `|fine − coarse| / max(|fine|, floor)`.
    pub fn relative_change(&self, floor: T) -> T {
        (self.fine - self.coarse).abs() / self.fine.abs().max(floor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_and_weights() {
        let g = GaussLegendre::<f64>::new(5);
        assert!((g.weights().iter().sum::<f64>() - 2.0).abs() < 1e-14);
        assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
        // Exact on polynomials of degree 2n − 1.
        let v: f64 = g.integrate(-1.0, 2.0, |x| x.powi(9) - 3.0 * x.powi(4));
        let exact = (2f64.powi(10) - 1.0) / 10.0 - 3.0 * (2f64.powi(5) + 1.0) / 5.0;
        assert!((v - exact).abs() < 1e-11 * exact.abs());
        let g32 = GaussLegendre::<f32>::new(20);
        assert!((g32.weights().iter().sum::<f32>() - 2.0).abs() < 1e-5);
    }

    #[test]
    fn odd_rule_has_zero_node() {
        let g = GaussLegendre::<f64>::new(17);
        assert!(g.nodes()[8].abs() < 1e-15);
    }

    #[test]
    fn tail_and_radial() {
        let g = GaussLegendre::<f64>::new(32);
        let v: f64 = g.integrate_tail(0.0, |r| 1.0 / (1.0 + r * r));
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let pts = [0.0, 1.0, 3.0];
        let v: f64 = g.integrate_radial(&pts, |r| (1.0 + r).powi(-4));
        assert!((v - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn log_singularity_with_grading() {
        let g = GaussLegendre::<f64>::new(16);
        let pts = graded_panels(0.0, 1.0, 0.15, 17, true);
        assert_eq!(pts[0], 0.0);
        assert!(1.0 - *pts.last().unwrap() < 1e-13);
        let v: f64 = g.integrate_panels(&pts, |x| (1.0 - x).ln());
        assert!((v + 1.0).abs() < 1e-12);
        let pts = graded_panels(0.0, 2.0, 0.15, 17, false);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        let v: f64 = g.integrate_panels(&pts, |x| x.ln());
        assert!((v - (2.0 * 2f64.ln() - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn sphere_averages() {
        let avg = |deg, f: fn([f64; 3]) -> f64| sphere_average(deg, f);
        assert!((avg(0, |_| 1.0) - 1.0).abs() < 1e-15);
        assert!((avg(2, |x| x[2] * x[2]) - 1.0 / 3.0).abs() < 1e-15);
        assert!((avg(2, |x| x[0] * x[1])).abs() < 1e-15);
        assert!((avg(4, |x| x[0].powi(4)) - 0.2).abs() < 1e-15);
        // |p1 + i p2|^6 = sin^6, mean 16/35.
        assert!((avg(6, |x| (x[0] * x[0] + x[1] * x[1]).powi(3)) - 16.0 / 35.0).abs() < 1e-15);
    }

    #[test]
    fn validation_rules() {
        assert!(QuadratureSpec::default().validate().is_ok());
        assert!(QuadratureSpec::default().with_nodes(8).validate().is_err());
        let mut s = QuadratureSpec { domain_split: vec![1.0, 1.0], ..QuadratureSpec::default() };
        assert!(s.validate().is_err());
        s.domain_split = vec![2.0, 1.0];
        assert!(s.validate().is_err());
        s.domain_split = vec![];
        assert!(s.validate().is_ok());
        assert_eq!(s.radial_breakpoints(&[3.0, 1.0]), vec![0.0, 1.0, 3.0]);
    }

    #[test]
    fn serialized_shape() {
        let json = serde_json::to_value(QuadratureSpec::default()).unwrap();
        assert_eq!(json["scheme"], "gauss-legendre");
        assert_eq!(json["nodes"], 32);
        assert!(json["domainSplit"].is_array());
    }
}
