use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::quadrature::{graded_panels, QuadratureSpec, Refinement};
use super::special::{legendre_q, spherical_bessel_j};
use crate::eigenbasis::{radial_profile, solid_harmonic, QuantumNumbers, QuantumState, Space};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::poly::{CompiledField, PolyField};
use crate::scalar::Real;

/// Outcome of one numerical or exact check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub metadata: BTreeMap<String, Value>,
}

impl CheckReport {
    /// `passed` is derived; a NaN residual never passes.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        CheckReport { name: name.into(), residual, tolerance, passed: residual <= tolerance, metadata: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    /// A check that either holds exactly or does not.
    pub fn exact(name: impl Into<String>, holds: bool) -> Self {
        CheckReport::new(name, if holds { 0.0 } else { 1.0 }, 0.0)
    }
}

/// Default tolerances for every numerical check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tolerances {
    pub integral: f64,
    pub fourier: f64,
    pub area: f64,
    pub area_coarse: f64,
    pub overlap: f64,
    pub kernel: f64,
    pub gegenbauer: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            integral: 1e-6,
            fourier: 1e-8,
            area: 1e-8,
            area_coarse: 1e-6,
            overlap: 1e-8,
            kernel: 1e-12,
            gegenbauer: 1e-10,
        }
    }
}

impl Tolerances {
    /// Loosened set for single-precision runs.
    pub fn single_precision() -> Self {
        Tolerances {
            integral: 1e-3,
            fourier: 1e-4,
            area: 1e-5,
            area_coarse: 1e-4,
            overlap: 1e-4,
            kernel: 1e-5,
            gegenbauer: 1e-4,
        }
    }

    pub const NAMES: [&'static str; 7] = ["integral", "fourier", "area", "area-coarse", "overlap", "kernel", "gegenbauer"];

    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "integral" => self.integral,
            "fourier" => self.fourier,
            "area" => self.area,
            "area-coarse" => self.area_coarse,
            "overlap" => self.overlap,
            "kernel" => self.kernel,
            "gegenbauer" => self.gegenbauer,
            _ => return None,
        })
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Argument(format!("tolerance {name} must be positive, got {value}")));
        }
        let slot = match name {
            "integral" => &mut self.integral,
            "fourier" => &mut self.fourier,
            "area" => &mut self.area,
            "area-coarse" => &mut self.area_coarse,
            "overlap" => &mut self.overlap,
            "kernel" => &mut self.kernel,
            "gegenbauer" => &mut self.gegenbauer,
            _ => return Err(Error::Argument(format!("unknown tolerance name {name:?}"))),
        };
        *slot = value;
        Ok(())
    }
}

/// Maximum that propagates NaN instead of skipping it.
fn nan_max<T: Real>(a: T, b: T) -> T {
    if a.is_nan() || b.is_nan() {
        T::nan()
    } else {
        a.max(b)
    }
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64_lossy()
}

fn linspace<T: Real>(a: f64, b: f64, count: usize) -> Vec<T> {
    (0..count).map(|j| T::from_f64_lossy(a + (b - a) * j as f64 / (count - 1) as f64)).collect()
}

/// Momenta at which the integral equation is sampled.
pub const INTEGRAL_GRID: (f64, f64, usize) = (0.1, 6.0, 24);

/// Per-momentum pieces of the integral equation.
struct IntegralSample<T> {
    /// `(p²+1) a(p)`
    local: Complex<T>,
    /// `(2π/p) ∫ p′ a(p′) Q_l(z) dp′`, the angular-reduced kernel integral.
    kernel: Complex<T>,
}

fn integral_samples<T: Real, F>(l: u32, profile: &F, spec: &QuadratureSpec) -> Vec<IntegralSample<T>>
where
    F: Fn(T) -> Complex<T>,
{
    let rule = spec.rule::<T>();
    let sigma = T::from_f64_lossy(0.15);
    // Grade down to a few ulps of the panel width.
    let levels = ((T::epsilon() * T::from_u32(4).unwrap()).ln() / sigma.ln()).floor().to_usize().unwrap_or(8);
    let two_pi = T::PI() + T::PI();
    let (lo, hi, count) = INTEGRAL_GRID;
    linspace::<T>(lo, hi, count)
        .into_iter()
        .map(|p| {
            // Integrand in terms of q and its exact offset u = |p − q|.
            let at = |q: T, u: T| profile(q) * (q * legendre_q(l, u * u / ((p + p) * q)));
            let plain = |q: T| at(q, (p - q).abs());
            let pts: Vec<T> = spec.radial_breakpoints(&[to_f64(p)]).into_iter().map(T::from_f64_lossy).collect();
            let mut total = Complex::new(T::zero(), T::zero());
            for w in pts.windows(2) {
                let (a, b) = (w[0], w[1]);
                total = total
                    + if b == p {
                        rule.integrate_panels(&graded_panels(T::zero(), b - a, sigma, levels, false), |u| at(p - u, u))
                    } else if a == p {
                        rule.integrate_panels(&graded_panels(T::zero(), b - a, sigma, levels, false), |u| at(p + u, u))
                    } else {
                        rule.integrate(a, b, plain)
                    };
            }
            let last = *pts.last().unwrap();
            if last == p {
                // Singular point at the start of the tail: grade one unit panel first.
                let panel = graded_panels(T::zero(), T::one(), sigma, levels, false);
                total = total + rule.integrate_panels(&panel, |u| at(p + u, u)) + rule.integrate_tail(p + T::one(), plain);
            } else {
                total = total + rule.integrate_tail(last, plain);
            }
            IntegralSample { local: profile(p) * (p * p + T::one()), kernel: total * (two_pi / p) }
        })
        .collect()
}

/// Integral equation `(p²+1)a(p) − (n/π²)∫ a(p′)d³p′/|p−p′|² = 0` for an
/// arbitrary radial profile carrying angular momentum `l`.
pub fn integral_equation_residual_for_profile<T, F>(
    name: &str,
    n: u32,
    l: u32,
    profile: F,
    spec: &QuadratureSpec,
    tolerance: f64,
) -> Result<CheckReport>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    spec.validate()?;
    let prefactor = T::from_u32(n).unwrap() / (T::PI() * T::PI());
    let coarse = integral_samples(l, &profile, spec);
    let fine = integral_samples(l, &profile, &spec.refined());
    let scale = fine.iter().map(|s| s.local.norm()).fold(T::zero(), nan_max);
    let lhs = |s: &IntegralSample<T>| s.local - s.kernel * prefactor;
    let res = Refinement {
        coarse: coarse.iter().map(|s| lhs(s).norm()).fold(T::zero(), nan_max) / scale,
        fine: fine.iter().map(|s| lhs(s).norm()).fold(T::zero(), nan_max) / scale,
    };
    let disagreement = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (c.kernel - f.kernel).norm() * prefactor)
        .fold(T::zero(), nan_max)
        / scale;
    // Least-squares c in (p²+1)a = c·K[a], reported as c·π²/n.
    let num = fine.iter().map(|s| (s.kernel.conj() * s.local).re).fold(T::zero(), |a, b| a + b);
    let den = fine.iter().map(|s| s.kernel.norm_sqr()).fold(T::zero(), |a, b| a + b);
    let measured = num / den / prefactor;
    let residual = to_f64(nan_max(res.fine, disagreement));
    Ok(CheckReport::new(name, residual, tolerance)
        .with("n", n)
        .with("l", l)
        .with("prefactor", "n/pi^2")
        .with("measuredPrefactorRatio", to_f64(measured))
        .with("residualCoarse", to_f64(res.coarse))
        .with("residualFine", to_f64(res.fine))
        .with("refinementDisagreement", to_f64(disagreement))
        .with("converged", to_f64(disagreement) <= tolerance)
        .with("nodes", spec.nodes)
        .with("gridPoints", INTEGRAL_GRID.2))
}

/// The integral equation on the unit-radius level-(n, l) state.
pub fn integral_equation_residual<T: Real>(n: u32, l: u32, spec: &QuadratureSpec, tolerance: f64) -> Result<CheckReport> {
    let profile = radial_profile::<T>(n, l, Space::A)?;
    integral_equation_residual_for_profile(&format!("integral-equation n={n} l={l}"), n, l, profile, spec, tolerance)
}

/// Momenta at which the radial transform is compared.
pub const FOURIER_GRID: (f64, f64, usize) = (0.1, 4.0, 20);

fn bessel_transform<T: Real>(l: u32, p: T, spec: &QuadratureSpec) -> T {
    let rule = spec.rule::<T>();
    let extra: Vec<f64> = (1..=48).map(f64::from).collect();
    let pts: Vec<T> = spec.radial_breakpoints(&extra).into_iter().map(T::from_f64_lossy).collect();
    rule.integrate_radial(&pts, |r: T| r.powi(l as i32 + 2) * (-r).exp() * spherical_bessel_j(l, p * r))
}

/// Spread `(max − min)/|mean|` of the ratio between the radial transform of
/// `r^l e^{−r}` and `target` over the sample momenta.
pub fn fourier_ratio_spread<T, F>(name: &str, l: u32, target: F, spec: &QuadratureSpec, tolerance: f64) -> Result<CheckReport>
where
    T: Real,
    F: Fn(T) -> T,
{
    spec.validate()?;
    let (lo, hi, count) = FOURIER_GRID;
    let momenta = linspace::<T>(lo, hi, count);
    let coarse: Vec<T> = momenta.iter().map(|&p| bessel_transform(l, p, spec)).collect();
    let fine: Vec<T> = momenta.iter().map(|&p| bessel_transform(l, p, &spec.refined())).collect();
    let spread = |vals: &[T]| {
        let ratios: Vec<T> = vals.iter().zip(&momenta).map(|(v, &p)| *v / target(p)).collect();
        let max = ratios.iter().cloned().fold(T::neg_infinity(), nan_max);
        let min = ratios.iter().cloned().fold(T::infinity(), |a, b| if a.is_nan() || b.is_nan() { T::nan() } else { a.min(b) });
        let mean = ratios.iter().cloned().fold(T::zero(), |a, b| a + b) / T::from_usize_lossy(ratios.len());
        (max - min) / mean.abs()
    };
    let scale = fine.iter().map(|v| v.abs()).fold(T::zero(), nan_max);
    let disagreement = coarse.iter().zip(&fine).map(|(c, f)| (*c - *f).abs()).fold(T::zero(), nan_max) / scale;
    let res = Refinement { coarse: spread(&coarse), fine: spread(&fine) };
    Ok(CheckReport::new(name, to_f64(nan_max(res.fine, disagreement)), tolerance)
        .with("l", l)
        .with("residualCoarse", to_f64(res.coarse))
        .with("residualFine", to_f64(res.fine))
        .with("refinementDisagreement", to_f64(disagreement))
        .with("samples", count))
}

/// Radial transform of the circular level-n state against the symbolic
/// momentum-space radial part.
pub fn fourier_radial_check<T: Real>(n: u32, spec: &QuadratureSpec, tolerance: f64) -> Result<CheckReport> {
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let profile = radial_profile::<T>(n, n - 1, Space::A)?;
    fourier_ratio_spread(&format!("fourier n={n}"), n - 1, move |p| profile(p).re, spec, tolerance)
}

/// Result of a radial measure integral with divergence detection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureIntegral {
    /// Estimates at `nodes`, `2·nodes` and `4·nodes`.
    pub estimates: [f64; 3],
    pub diverged: bool,
}

/// `∫ weight(|p|) d³p` by radial quadrature.
///
/// Declared divergent when successive refinements stop contracting, i.e.
/// the second correction is not smaller than half the first while both
/// exceed the precision target.
pub fn radial_measure_integral<T, F>(weight: F, spec: &QuadratureSpec) -> Result<MeasureIntegral>
where
    T: Real,
    F: Fn(T) -> T,
{
    spec.validate()?;
    let four_pi = T::from_u32(4).unwrap() * T::PI();
    let mut estimates = [0.0; 3];
    for (i, nodes) in [spec.nodes, 2 * spec.nodes, 4 * spec.nodes].into_iter().enumerate() {
        let s = spec.with_nodes(nodes);
        let pts: Vec<T> = s.radial_breakpoints(&[]).into_iter().map(T::from_f64_lossy).collect();
        let v: T = s.rule::<T>().integrate_radial(&pts, |r: T| four_pi * r * r * weight(r));
        estimates[i] = to_f64(v);
    }
    let d1 = (estimates[1] - estimates[0]).abs();
    let d2 = (estimates[2] - estimates[1]).abs();
    // Differences below the scalar's round-off floor carry no information.
    let floor = 100.0 * to_f64(T::epsilon());
    let target = spec.precision_target.max(floor) * estimates[2].abs().max(1.0);
    let diverged = estimates.iter().any(|e| !e.is_finite()) || (d2 > target && d2 >= 0.5 * d1);
    Ok(MeasureIntegral { estimates, diverged })
}

/// `2π²`, the area of the unit 3-sphere.
pub fn sphere_area<T: Real>() -> T {
    T::from_u32(2).unwrap() * T::PI() * T::PI()
}

/// `∫ weight d³p` compared with `2π²`.
pub fn sphere_measure_check<T, F>(name: &str, weight: F, spec: &QuadratureSpec, tolerance: f64) -> Result<CheckReport>
where
    T: Real,
    F: Fn(T) -> T,
{
    let m = radial_measure_integral(weight, spec)?;
    let target = to_f64(sphere_area::<T>());
    let rel = |v: f64| (v - target).abs() / target;
    let residual = if m.diverged { f64::INFINITY } else { rel(m.estimates[0]) };
    let mut report = CheckReport::new(name, residual, tolerance)
        .with("value", m.estimates[0])
        .with("target", target)
        .with("diverged", m.diverged)
        .with("nodes", spec.nodes)
        .with("residualRefined", rel(m.estimates[1]));
    if m.diverged {
        report = report.with("estimates", json!(m.estimates));
    }
    Ok(report)
}

/// `∫ 8/(1+p²)³ d³p = 2π²`.
pub fn sphere_area_check<T: Real>(spec: &QuadratureSpec, tolerance: f64) -> Result<CheckReport> {
    sphere_measure_check(
        &format!("sphere-area nodes={}", spec.nodes),
        |r: T| crate::fock::sphere_weight(&[r, T::zero(), T::zero()]),
        spec,
        tolerance,
    )
}

const PROBE_DIRECTIONS: [[f64; 3]; 3] = [[0.267, 0.535, 0.802], [0.577, -0.211, 0.789], [-0.123, 0.912, 0.391]];

/// `∫|Y(Ω)|² dΩ` by Gauss-Legendre in `cos θ` times the trapezoid rule in `φ`;
/// both are exact for the polynomial degrees involved.
fn harmonic_norm<T: Real>(y: &CompiledField<T>, spec: &QuadratureSpec) -> T {
    let rule = spec.rule::<T>();
    let nphi = 2 * spec.nodes;
    let dphi = (T::PI() + T::PI()) / T::from_usize_lossy(nphi);
    let mut acc = T::zero();
    for (c, w) in rule.nodes().iter().zip(rule.weights()) {
        let s = (T::one() - *c * *c).sqrt();
        for j in 0..nphi {
            let phi = dphi * T::from_usize_lossy(j);
            let (sp, cp) = phi.sin_cos();
            acc = acc + y.eval([s * cp, s * sp, *c]).norm_sqr() * *w * dphi;
        }
    }
    acc
}

fn unit<T: Real>(d: [f64; 3]) -> [T; 3] {
    let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    [T::from_f64_lossy(d[0] / r), T::from_f64_lossy(d[1] / r), T::from_f64_lossy(d[2] / r)]
}

/// `∫ conj(b₁) b₂ · 8/(1+p²)³ d³p` for unit-radius b-space states.
///
/// Returns exactly zero when `(l, m)` differ. Otherwise the integral
/// factors into `∫|Y|²dΩ` times a radial integral along a probe direction.
pub fn state_overlap<T: Real>(
    s1: &QuantumState<GaussianRational>,
    s2: &QuantumState<GaussianRational>,
    spec: &QuadratureSpec,
) -> Result<Complex<T>> {
    spec.validate()?;
    let (q1, q2) = (s1.numbers, s2.numbers);
    if q1.l != q2.l || q1.m != q2.m {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    Ok(radial_overlap(s1, s2, spec, q1))
}

fn radial_overlap<T: Real>(
    s1: &QuantumState<GaussianRational>,
    s2: &QuantumState<GaussianRational>,
    spec: &QuadratureSpec,
    qn: QuantumNumbers,
) -> Complex<T> {
    let y = CompiledField::<T>::new(&PolyField::from_polynomial(
        solid_harmonic::<GaussianRational>(qn.l, qn.m).expect("validated quantum numbers"),
    ));
    let angular = harmonic_norm(&y, spec);
    let mean = angular / (T::from_u32(4).unwrap() * T::PI());
    let dir = PROBE_DIRECTIONS
        .iter()
        .map(|d| unit::<T>(*d))
        .find(|d| y.eval(*d).norm_sqr() > T::from_f64_lossy(1e-3) * mean)
        .expect("a probe direction avoids the nodal set");
    let y_dir = y.eval(dir).norm_sqr();
    let b1 = CompiledField::<T>::new(&s1.b);
    let b2 = CompiledField::<T>::new(&s2.b);
    let pts: Vec<T> = spec.radial_breakpoints(&[]).into_iter().map(T::from_f64_lossy).collect();
    let radial: Complex<T> = spec.rule::<T>().integrate_radial(&pts, |r: T| {
        let p = [dir[0] * r, dir[1] * r, dir[2] * r];
        b1.eval(p).conj() * b2.eval(p) * (r * r * crate::fock::sphere_weight(&[r, T::zero(), T::zero()]))
    });
    radial * (angular / y_dir)
}

/// Largest `|M_ij| / sqrt(M_ii M_jj)` over `i ≠ j` for all states with
/// `n ≤ max_n`.
pub fn overlap_matrix_check<T: Real>(max_n: u32, spec: &QuadratureSpec, tolerance: f64) -> Result<CheckReport> {
    spec.validate()?;
    let states: Vec<QuantumState<GaussianRational>> =
        QuantumNumbers::all_up_to(max_n).into_iter().map(QuantumState::new).collect();
    let diag: Vec<Complex<T>> =
        states.iter().map(|s| state_overlap::<T>(s, s, spec)).collect::<Result<_>>()?;
    let diag_refined: Vec<Complex<T>> =
        states.iter().map(|s| state_overlap::<T>(s, s, &spec.refined())).collect::<Result<_>>()?;
    let mut worst = T::zero();
    let mut worst_pair = String::new();
    let mut exact_zeros = 0usize;
    for i in 0..states.len() {
        for j in 0..states.len() {
            if i == j {
                continue;
            }
            let o = state_overlap::<T>(&states[i], &states[j], spec)?;
            if o.re == T::zero() && o.im == T::zero() {
                exact_zeros += 1;
            }
            let rel = o.norm() / (diag[i].norm() * diag[j].norm()).sqrt();
            if rel.is_nan() || rel > worst {
                worst = rel;
                worst_pair = format!("{} vs {}", states[i].numbers, states[j].numbers);
            }
        }
    }
    let diag_ok = diag.iter().all(|d| d.re > T::zero() && d.im.abs() <= T::epsilon().sqrt() * d.re);
    let disagreement = diag
        .iter()
        .zip(&diag_refined)
        .map(|(a, b)| (*a - *b).norm() / b.norm())
        .fold(T::zero(), nan_max);
    let residual = if diag_ok { to_f64(nan_max(worst, disagreement)) } else { f64::INFINITY };
    Ok(CheckReport::new(format!("overlap-matrix n<={max_n}"), residual, tolerance)
        .with("states", states.len())
        .with("worstPair", worst_pair)
        .with("exactZeroPairs", exact_zeros)
        .with("diagonalPositive", diag_ok)
        .with("refinementDisagreement", to_f64(disagreement)))
}
