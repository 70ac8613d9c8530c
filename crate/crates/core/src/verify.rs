//! Verification suites: exact operator identities on finite spanning sets
//! plus the numerical cross-checks, aggregated into [`CheckReport`]s.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigenbasis::{
    decompose_in_basis, proportionality_constant, rescale_physical, solid_harmonic, state_a, state_b, QuantumNumbers,
    ScaledField,
};
use crate::error::{Error, Result};
use crate::fock::{
    default_zeta_samples, gauss_gegenbauer_spread, kernel_identity_residual, pullback, rotation_generator,
    sphere_monomials, stereographic_forward, stereographic_inverse,
};
use crate::gaussian::GaussianRational;
use crate::numerics::{
    fourier_radial_check, fourier_ratio_spread, integral_equation_residual, integral_equation_residual_for_profile,
    overlap_matrix_check, radial_measure_integral, sphere_area_check, sphere_measure_check, CheckReport,
    QuadratureSpec, Tolerances,
};
use crate::operators::{
    angular_momentum, angular_momentum_squared, casimir_sum, commutator, conjugate_by_weight, hamiltonian_b,
    runge_lenz_a_with, runge_lenz_b, RungeLenzOrdering,
};
use crate::poly::{Axis, LinearOperator, PolyField, Polynomial3};

type G = GaussianRational;
type F = PolyField<G>;
type Op = LinearOperator<G>;

/// One exact identity evaluated on one test element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentityRecord {
    pub identity: String,
    pub test_element: String,
    pub residual_is_zero: bool,
}

/// Named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Eigen,
    Commutators,
    Casimir,
    Conjugation,
    Rotation,
    Kernel,
    Integral,
    Fourier,
    Gegenbauer,
    Overlap,
    Measure,
    Examples,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Eigen,
        Suite::Commutators,
        Suite::Casimir,
        Suite::Conjugation,
        Suite::Rotation,
        Suite::Kernel,
        Suite::Integral,
        Suite::Fourier,
        Suite::Gegenbauer,
        Suite::Overlap,
        Suite::Measure,
        Suite::Examples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Eigen => "eigen",
            Suite::Commutators => "commutators",
            Suite::Casimir => "casimir",
            Suite::Conjugation => "conjugation",
            Suite::Rotation => "rotation",
            Suite::Kernel => "kernel",
            Suite::Integral => "integral",
            Suite::Fourier => "fourier",
            Suite::Gegenbauer => "gegenbauer",
            Suite::Overlap => "overlap",
            Suite::Measure => "measure",
            Suite::Examples => "examples",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_selection(name: &str) -> Result<Vec<Suite>> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        name.parse().map(|s| vec![s])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            Error::Argument(format!("unknown suite {s:?}; expected one of {} or all", names.join(", ")))
        })
    }
}

/// Knobs shared by every suite. `None` selects the per-suite default.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub max_n: Option<u32>,
    pub degree: Option<u32>,
    pub denom_power: u32,
    pub n: Option<u32>,
    pub l: Option<u32>,
    pub tolerances: Tolerances,
    pub quadrature: QuadratureSpec,
    pub kernel_pairs: usize,
    pub seed: u64,
    pub inject_failure: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: None,
            degree: None,
            denom_power: 3,
            n: None,
            l: None,
            tolerances: Tolerances::default(),
            quadrature: QuadratureSpec::default(),
            kernel_pairs: 1000,
            seed: 0x5eed,
            inject_failure: false,
        }
    }
}

/// Reports and exact-identity records of one or more suites.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub reports: Vec<CheckReport>,
    pub records: Vec<IdentityRecord>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    fn extend(&mut self, other: Outcome) {
        self.reports.extend(other.reports);
        self.records.extend(other.records);
    }
}

/// Runs `suites` in order.
pub fn run(suites: &[Suite], config: &VerifyConfig) -> Result<Outcome> {
    config.quadrature.validate()?;
    if config.max_n == Some(0) {
        return Err(Error::Argument("max-n must be at least 1".into()));
    }
    let mut out = Outcome::default();
    for &suite in suites {
        out.extend(run_suite(suite, config)?);
    }
    if config.inject_failure {
        out.reports.push(CheckReport::new("injected failure", 1.0, 0.0).with("injected", true));
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<Outcome> {
    match suite {
        Suite::Eigen => Ok(eigen(config.max_n.unwrap_or(6))),
        Suite::Commutators => Ok(commutators(config)),
        Suite::Casimir => Ok(casimir(config)),
        Suite::Conjugation => Ok(conjugation(config)),
        Suite::Rotation => Ok(rotation(config.degree.unwrap_or(3))),
        Suite::Kernel => Ok(kernel(config)),
        Suite::Integral => integral(config),
        Suite::Fourier => fourier(config),
        Suite::Gegenbauer => gegenbauer(config),
        Suite::Overlap => overlap(config),
        Suite::Measure => measure(config),
        Suite::Examples => examples(),
    }
}

/// Every `p^e/(1+p²)^N` with `|e| ≤ degree`, `N ≤ denom_power`.
pub fn generators(degree: u32, denom_power: u32) -> Vec<F> {
    let mut out = Vec::new();
    for n in 0..=denom_power {
        for d in 0..=degree {
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    out.push(F::new(Polynomial3::monomial([a, b, d - a - b], G::one()), n));
                }
            }
        }
    }
    out
}

/// Evaluates `lhs − rhs` on every generator, one record per generator.
fn identity_on(name: &str, lhs: &Op, rhs: &Op, set: &[F]) -> (CheckReport, Vec<IdentityRecord>) {
    let diff = lhs - rhs;
    let records: Vec<IdentityRecord> = set
        .par_iter()
        .map(|f| IdentityRecord {
            identity: name.to_string(),
            test_element: f.to_string(),
            residual_is_zero: diff.apply(f).is_zero(),
        })
        .collect();
    let failures = records.iter().filter(|r| !r.residual_is_zero).count();
    let report = CheckReport::exact(name, failures == 0).with("testElements", set.len()).with("failures", failures);
    (report, records)
}

fn push_identity(out: &mut Outcome, name: &str, lhs: &Op, rhs: &Op, set: &[F]) {
    let (report, records) = identity_on(name, lhs, rhs, set);
    out.reports.push(report);
    out.records.extend(records);
}

fn zero_op() -> Op {
    Op::identity().scale(G::zero())
}

fn int(n: i64) -> G {
    G::from_integer(n)
}

fn eigen(max_n: u32) -> Outcome {
    let h = hamiltonian_b::<G>();
    let lz = angular_momentum::<G>(Axis::Z);
    let l2 = angular_momentum_squared::<G>();
    let rows: Vec<(CheckReport, IdentityRecord)> = QuantumNumbers::all_up_to(max_n)
        .par_iter()
        .map(|&qn| {
            let b = state_b::<G>(qn);
            let expected = int((qn.n * qn.n) as i64 - 1);
            let hb = h.apply(&b);
            let measured = proportionality_constant(&hb, &b);
            let holds = hb == b.scale(&expected);
            let lz_ok = lz.apply(&b) == b.scale(&int(qn.m as i64));
            let l2_ok = l2.apply(&b) == b.scale(&int((qn.l * (qn.l + 1)) as i64));
            let name = format!("eigenvalue {qn}");
            let report = CheckReport::exact(&name, holds && lz_ok && l2_ok)
                .with("eigenvalue", measured.map_or_else(|| "none".to_string(), |c| c.to_string()))
                .with("expected", expected.to_string())
                .with("lzEigenvalue", lz_ok)
                .with("l2Eigenvalue", l2_ok);
            let record =
                IdentityRecord { identity: "H b = (n^2-1) b".into(), test_element: qn.to_string(), residual_is_zero: holds };
            (report, record)
        })
        .collect();
    let (reports, records) = rows.into_iter().unzip();
    Outcome { reports, records }
}

fn levi_civita(i: Axis, k: Axis) -> Option<(Axis, i64)> {
    if i == k {
        return None;
    }
    let (j, l) = i.cyclic();
    if j == k {
        Some((l, 1))
    } else {
        Some((j, -1))
    }
}

/// `Σ_l iε_{ikl} X_l`.
fn epsilon_rhs(i: Axis, k: Axis, x: impl Fn(Axis) -> Op) -> Op {
    match levi_civita(i, k) {
        None => zero_op(),
        Some((l, sign)) => x(l).scale(G::i() * int(sign)),
    }
}

fn commutator_identities(out: &mut Outcome, space: &str, a: &impl Fn(Axis) -> Op, set: &[F]) {
    for i in Axis::ALL {
        for k in Axis::ALL {
            let lhs = commutator(&angular_momentum(i), &a(k));
            let rhs = epsilon_rhs(i, k, a);
            push_identity(out, &format!("[L{}, A{}] = i eps A ({space})", i.number(), k.number()), &lhs, &rhs, set);
            let lhs = commutator(&a(i), &a(k));
            let rhs = epsilon_rhs(i, k, angular_momentum);
            push_identity(out, &format!("[A{}, A{}] = i eps L ({space})", i.number(), k.number()), &lhs, &rhs, set);
        }
    }
    let zero = zero_op();
    let al = Op::sum(Axis::ALL.iter().map(|&i| a(i).compose(&angular_momentum(i))).collect());
    let la = Op::sum(Axis::ALL.iter().map(|&i| angular_momentum(i).compose(&a(i))).collect());
    push_identity(out, &format!("sum A_i L_i = 0 ({space})"), &al, &zero, set);
    push_identity(out, &format!("sum L_i A_i = 0 ({space})"), &la, &zero, set);
}

fn commutators(config: &VerifyConfig) -> Outcome {
    let set = generators(config.degree.unwrap_or(4), config.denom_power);
    let mut out = Outcome::default();
    commutator_identities(&mut out, "b-space", &runge_lenz_b::<G>, &set);
    let a_space = |axis| runge_lenz_a_with::<G>(axis, RungeLenzOrdering::DegreeOutermost);
    commutator_identities(&mut out, "a-space", &a_space, &set);
    out.reports.push(multiplet_closure());
    out
}

/// `A_z` maps the level-2 multiplet into itself.
fn multiplet_closure() -> CheckReport {
    let qn = |l, m| QuantumNumbers::new(2, l, m).expect("valid level-2 numbers");
    let p_states: Vec<F> = (-1..=1).map(|m| state_b(qn(1, m))).collect();
    let az = runge_lenz_b::<G>(Axis::Z);
    let s = state_b::<G>(qn(0, 0));
    let forward = decompose_in_basis(&az.apply(&s), &p_states);
    let backward: Vec<_> = p_states.iter().map(|p| decompose_in_basis(&az.apply(p), std::slice::from_ref(&s))).collect();
    let holds = forward.is_some() && backward.iter().all(Option::is_some);
    CheckReport::exact("multiplet closure n=2 under A3", holds).with(
        "coordinates",
        forward.map_or_else(|| "none".into(), |c| c.iter().map(G::to_string).collect::<Vec<_>>().join(", ")),
    )
}

fn casimir(config: &VerifyConfig) -> Outcome {
    let set = generators(config.degree.unwrap_or(4), config.denom_power);
    let mut out = Outcome::default();
    let cas = casimir_sum::<G>();
    push_identity(&mut out, "L^2 + A^2 = H (composed vs closed form)", &cas, &hamiltonian_b(), &set);
    let measured: Vec<(QuantumNumbers, Option<G>)> = QuantumNumbers::all_up_to(config.max_n.unwrap_or(4))
        .par_iter()
        .map(|&qn| {
            let b = state_b::<G>(qn);
            (qn, proportionality_constant(&cas.apply(&b), &b))
        })
        .collect();
    let mut all_positive = true;
    let mut values = Vec::new();
    for (qn, c) in &measured {
        let expected = int((qn.n * qn.n) as i64 - 1);
        all_positive &= c.as_ref() == Some(&expected);
        values.push(format!("{qn}: {}", c.as_ref().map_or_else(|| "none".to_string(), G::to_string)));
    }
    let negative_sign_matches = measured.iter().all(|(qn, c)| c.as_ref() == Some(&int(1 - (qn.n * qn.n) as i64)));
    out.reports.push(
        CheckReport::exact("casimir eigenvalue on eigenstates", all_positive)
            .with("measured", values)
            .with("measuredSign", "+(n^2-1)")
            .with("conflictingStatement", "-(n^2-1)")
            .with("conflictingStatementHolds", negative_sign_matches),
    );
    out
}

fn conjugation(config: &VerifyConfig) -> Outcome {
    let set = generators(config.degree.unwrap_or(4), config.denom_power);
    let mut out = Outcome::default();
    for axis in Axis::ALL {
        let a = runge_lenz_a_with::<G>(axis, RungeLenzOrdering::DegreeOutermost);
        let name = format!("(1+p^2)^2 A{} (1+p^2)^-2 = B{} ({})", axis.number(), axis.number(), RungeLenzOrdering::DegreeOutermost.name());
        push_identity(&mut out, &name, &conjugate_by_weight(&a, 2), &runge_lenz_b(axis), &set);
    }
    // The other reading must be rejected by the same identity.
    let mut rejected = 0;
    for axis in Axis::ALL {
        let a = runge_lenz_a_with::<G>(axis, RungeLenzOrdering::CoordinateOutermost);
        let (report, _) = identity_on("alternative", &conjugate_by_weight(&a, 2), &runge_lenz_b(axis), &set);
        rejected += usize::from(!report.passed);
    }
    out.reports.push(
        CheckReport::exact("conjugation rejects the coordinate-outermost ordering", rejected == 3)
            .with("pinnedOrdering", RungeLenzOrdering::DegreeOutermost.name())
            .with("rejectedOrdering", RungeLenzOrdering::CoordinateOutermost.name()),
    );
    out
}

fn rotation(degree: u32) -> Outcome {
    let monomials = sphere_monomials::<G>(degree);
    let mut out = Outcome::default();
    for axis in Axis::ALL {
        let b = runge_lenz_b::<G>(axis);
        let name = format!("pullback(R{} f) = A{} pullback(f)", axis.number(), axis.number());
        let records: Vec<IdentityRecord> = monomials
            .par_iter()
            .map(|f| {
                let lhs = pullback(&rotation_generator(axis, f));
                let rhs = b.apply(&pullback(f));
                IdentityRecord { identity: name.clone(), test_element: sphere_monomial_text(f), residual_is_zero: lhs == rhs }
            })
            .collect();
        let failures = records.iter().filter(|r| !r.residual_is_zero).count();
        out.reports.push(
            CheckReport::exact(&name, failures == 0)
                .with("degree", degree)
                .with("testElements", records.len())
                .with("failures", failures),
        );
        out.records.extend(records);
    }
    let constraint = crate::fock::SpherePolynomial::<G>::sum_of_squares();
    out.reports.push(CheckReport::exact("pullback of the sphere constraint is 1", pullback(&constraint) == F::one()));
    out
}

fn sphere_monomial_text(f: &crate::fock::SpherePolynomial<G>) -> String {
    let names = ["xi1", "xi2", "xi3", "zeta"];
    let (m, _) = f.terms().next().expect("monomial");
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn random_ball_point(rng: &mut ChaCha8Rng, radius: f64) -> [f64; 3] {
    loop {
        let p = [
            rng.random_range(-radius..=radius),
            rng.random_range(-radius..=radius),
            rng.random_range(-radius..=radius),
        ];
        if p.iter().map(|x| x * x).sum::<f64>() <= radius * radius {
            return p;
        }
    }
}

fn kernel(config: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst: f64 = 0.0;
    let mut worst_roundtrip: f64 = 0.0;
    let mut errors = 0usize;
    for _ in 0..config.kernel_pairs {
        let p = random_ball_point(&mut rng, 5.0);
        let q = random_ball_point(&mut rng, 5.0);
        match kernel_identity_residual(&p, &q) {
            Ok(r) => worst = if r.is_nan() { f64::NAN } else { worst.max(r) },
            Err(_) => errors += 1,
        }
        match stereographic_inverse(&stereographic_forward(&p)) {
            Ok(back) => {
                let e = (0..3).map(|i| (back[i] - p[i]).abs()).fold(0.0, f64::max);
                worst_roundtrip = worst_roundtrip.max(e);
            }
            Err(_) => errors += 1,
        }
    }
    let tol = config.tolerances.kernel;
    let residual = if errors > 0 { f64::INFINITY } else { worst };
    Outcome {
        reports: vec![
            CheckReport::new("kernel identity", residual, tol)
                .with("pairs", config.kernel_pairs)
                .with("radius", 5.0)
                .with("seed", config.seed),
            CheckReport::new("stereographic round trip", worst_roundtrip, tol).with("points", config.kernel_pairs),
        ],
        records: vec![],
    }
}

/// Turns a "must fail" measurement into a report whose residual is
/// `threshold / measured`, so that `passed` means the control was caught.
pub fn negative_control(name: &str, measured: f64, threshold: f64) -> CheckReport {
    let ratio = if measured.is_nan() { f64::INFINITY } else { threshold / measured };
    CheckReport::new(name, ratio, 1.0).with("measured", measured).with("threshold", threshold).with("kind", "negative-control")
}

const INTEGRAL_STATES: [(u32, u32); 4] = [(1, 0), (2, 0), (2, 1), (3, 0)];

fn integral(config: &VerifyConfig) -> Result<Outcome> {
    let states: Vec<(u32, u32)> = match (config.n, config.l) {
        (Some(n), l) => vec![(n, l.unwrap_or(0))],
        (None, Some(_)) => return Err(Error::Argument("--l requires --n".into())),
        (None, None) => INTEGRAL_STATES.to_vec(),
    };
    let tol = config.tolerances.integral;
    let spec = &config.quadrature;
    let mut reports: Vec<CheckReport> = states
        .par_iter()
        .map(|&(n, l)| integral_equation_residual::<f64>(n, l, spec, tol))
        .collect::<Result<_>>()?;
    let base = crate::eigenbasis::radial_profile::<f64>(1, 0, crate::eigenbasis::Space::A)?;
    let control = integral_equation_residual_for_profile(
        "control",
        1,
        0,
        |p: f64| base(p) * (1.0 + 0.1 * p * p),
        spec,
        tol,
    )?;
    reports.push(negative_control("integral-equation perturbed ground state", control.residual, 1e-2));
    Ok(Outcome { reports, records: vec![] })
}

fn fourier(config: &VerifyConfig) -> Result<Outcome> {
    let levels: Vec<u32> = match config.n {
        Some(n) => vec![n],
        None => (1..=config.max_n.unwrap_or(3)).collect(),
    };
    let spec = &config.quadrature;
    let tol = config.tolerances.fourier;
    let mut reports: Vec<CheckReport> =
        levels.par_iter().map(|&n| fourier_radial_check::<f64>(n, spec, tol)).collect::<Result<_>>()?;
    let wrong = fourier_ratio_spread("control", 0, |p: f64| (1.0 + p * p).powi(-3), spec, tol)?;
    reports.push(negative_control("fourier ground state against 1/(1+p^2)^3", wrong.residual, 1e-1));
    Ok(Outcome { reports, records: vec![] })
}

fn gegenbauer(config: &VerifyConfig) -> Result<Outcome> {
    let max_n = config.max_n.unwrap_or(5);
    let samples = default_zeta_samples::<f64>(20);
    let mut worst: f64 = 0.0;
    let mut worst_at = String::new();
    for n in 1..=max_n {
        for l in 0..n {
            let s = gauss_gegenbauer_spread(n, l, &samples)?;
            if s.is_nan() || s > worst {
                worst = s;
                worst_at = format!("n={n} l={l}");
            }
        }
    }
    Ok(Outcome {
        reports: vec![CheckReport::new(format!("gauss-gegenbauer proportionality n<={max_n}"), worst, config.tolerances.gegenbauer)
            .with("worst", worst_at)
            .with("samples", samples.len())],
        records: vec![],
    })
}

fn overlap(config: &VerifyConfig) -> Result<Outcome> {
    let r = overlap_matrix_check::<f64>(config.max_n.unwrap_or(4), &config.quadrature, config.tolerances.overlap)?;
    Ok(Outcome { reports: vec![r], records: vec![] })
}

fn measure(config: &VerifyConfig) -> Result<Outcome> {
    let spec = &config.quadrature;
    let tol = &config.tolerances;
    let mut reports = vec![sphere_area_check::<f64>(spec, tol.area)?];
    let halved = spec.with_nodes((spec.nodes / 2).max(QuadratureSpec::MIN_NODES));
    reports.push(sphere_area_check::<f64>(&halved, tol.area_coarse)?);
    let wrong = sphere_measure_check("control", |r: f64| 8.0 / (1.0 + r * r).powi(2), spec, tol.area)?;
    let integrable = radial_measure_integral(|r: f64| 8.0 / (1.0 + r * r).powi(2), spec)?;
    reports.push(
        negative_control("sphere area with weight 8/(1+p^2)^2", wrong.residual, tol.area)
            .with("value", integrable.estimates[2])
            .with("valueOverPiSquared", integrable.estimates[2] / std::f64::consts::PI.powi(2)),
    );
    let divergent = radial_measure_integral(|r: f64| 8.0 / (1.0 + r * r), spec)?;
    reports.push(
        CheckReport::exact("divergence detected for weight 8/(1+p^2)", divergent.diverged)
            .with("estimates", divergent.estimates.to_vec()),
    );
    Ok(Outcome { reports, records: vec![] })
}

/// `(1 + scale²p²)^k` as a polynomial.
fn scaled_weight_pow(scale: u32, k: u32) -> Polynomial3<G> {
    let s2 = int((scale * scale) as i64);
    (&Polynomial3::one() + &Polynomial3::sum_of_squares().scale(&s2)).pow(k)
}

/// The constant `c` with `f = c · target/(1+scale²p²)^power`, compared
/// in the physical variable without undoing the rescaling.
pub fn scaled_match(f: &ScaledField<G>, target: &Polynomial3<G>, power: u32) -> Option<G> {
    let n = f.denom_power().max(power);
    let lhs = f.numerator() * &scaled_weight_pow(f.scale(), n - f.denom_power());
    let rhs = target * &scaled_weight_pow(f.scale(), n - power);
    let (m, c) = rhs.terms().next()?;
    let ratio = lhs.coefficient(m.0) * c.inv()?;
    (lhs == rhs.scale(&ratio) && !ratio.is_zero()).then_some(ratio)
}

fn examples() -> Result<Outcome> {
    let mut reports = Vec::new();
    // a₂₀₀ at physical scale: 1/(1+4p²)²·(1 − 2/(1+4p²)) = (4p² − 1)/(1+4p²)³.
    let a200 = rescale_physical(&state_a::<G>(QuantumNumbers::new(2, 0, 0)?), 2);
    let target = &Polynomial3::sum_of_squares().scale(&int(4)) - &Polynomial3::one();
    let c = scaled_match(&a200, &target, 3);
    reports.push(
        CheckReport::exact("physical a(2,0,0) matches the worked example", c.is_some())
            .with("constant", c.map_or_else(|| "none".into(), |c| c.to_string()))
            .with("field", a200.to_string()),
    );
    for n in 1..=5u32 {
        let l = n - 1;
        let mut constants = Vec::new();
        let mut holds = true;
        for m in -(l as i32)..=l as i32 {
            let a = rescale_physical(&state_a::<G>(QuantumNumbers::new(n as i64, l as i64, m as i64)?), n);
            let y = solid_harmonic::<G>(l, m)?;
            match scaled_match(&a, &y, n + 1) {
                Some(c) => constants.push(format!("m={m}: {c}")),
                None => holds = false,
            }
        }
        reports.push(
            CheckReport::exact(format!("physical circular state n={n} matches Y/(1+n^2p^2)^(n+1)"), holds)
                .with("constants", constants),
        );
    }
    Ok(Outcome { reports, records: vec![] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_selection("all").unwrap().len(), Suite::ALL.len());
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn generator_count() {
        // C(4+3, 3) monomials times 4 denominator powers.
        assert_eq!(generators(4, 3).len(), 35 * 4);
        assert_eq!(generators(0, 0), vec![F::one()]);
    }

    #[test]
    fn levi_civita_signs() {
        assert_eq!(levi_civita(Axis::X, Axis::Y), Some((Axis::Z, 1)));
        assert_eq!(levi_civita(Axis::Y, Axis::X), Some((Axis::Z, -1)));
        assert_eq!(levi_civita(Axis::Z, Axis::X), Some((Axis::Y, 1)));
        assert_eq!(levi_civita(Axis::Y, Axis::Y), None);
    }

    #[test]
    fn small_commutator_run() {
        let config = VerifyConfig { degree: Some(2), denom_power: 1, ..VerifyConfig::default() };
        let out = run(&[Suite::Commutators], &config).unwrap();
        assert!(out.passed(), "{:?}", out.reports.iter().filter(|r| !r.passed).collect::<Vec<_>>());
        assert!(out.records.iter().all(|r| r.residual_is_zero));
    }

    #[test]
    fn injected_failure_flips_status() {
        let config = VerifyConfig { inject_failure: true, ..VerifyConfig::default() };
        let out = run(&[Suite::Examples], &config).unwrap();
        assert!(!out.passed());
        let config = VerifyConfig::default();
        assert!(run(&[Suite::Examples], &config).unwrap().passed());
    }

    #[test]
    fn record_json_shape() {
        let r = IdentityRecord { identity: "x".into(), test_element: "1".into(), residual_is_zero: true };
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v, serde_json::json!({"identity": "x", "testElement": "1", "residualIsZero": true}));
    }

    #[test]
    fn scaled_match_rejects_wrong_power() {
        let a200 = rescale_physical(&state_a::<G>(QuantumNumbers::new(2, 0, 0).unwrap()), 2);
        let target = &Polynomial3::sum_of_squares().scale(&int(4)) - &Polynomial3::one();
        assert!(scaled_match(&a200, &target, 3).is_some());
        assert!(scaled_match(&a200, &target, 2).is_none());
        assert!(scaled_match(&a200, &Polynomial3::one(), 3).is_none());
    }
}
