//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always visible in
//! `cargo test` output; the process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rlenz::numerics::CheckReport;
use rlenz::verify::{self, Suite, VerifyConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [Suite],
    config: fn() -> VerifyConfig,
    time_limit: Option<Duration>,
}

fn defaults() -> VerifyConfig {
    VerifyConfig::default()
}

fn eigen_config() -> VerifyConfig {
    VerifyConfig { max_n: Some(6), ..VerifyConfig::default() }
}

fn algebra_config() -> VerifyConfig {
    VerifyConfig { degree: Some(4), denom_power: 3, ..VerifyConfig::default() }
}

fn rotation_config() -> VerifyConfig {
    VerifyConfig { degree: Some(3), ..VerifyConfig::default() }
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "exact eigenvalue n^2-1 on every state_b, n<=6",
            suites: &[Suite::Eigen],
            config: eigen_config,
            time_limit: Some(Duration::from_secs(10)),
        },
        Criterion {
            id: 2,
            title: "so(4) commutators and orthogonality on generators deg<=4, N<=3",
            suites: &[Suite::Commutators],
            config: algebra_config,
            time_limit: None,
        },
        Criterion {
            id: 3,
            title: "casimir closed form on generators; eigenvalue sign reported",
            suites: &[Suite::Casimir],
            config: algebra_config,
            time_limit: None,
        },
        Criterion {
            id: 4,
            title: "weight conjugation maps a-space runge-lenz to b-space",
            suites: &[Suite::Conjugation],
            config: algebra_config,
            time_limit: None,
        },
        Criterion {
            id: 5,
            title: "fock rotation correspondence, sphere monomials deg<=3",
            suites: &[Suite::Rotation],
            config: rotation_config,
            time_limit: None,
        },
        Criterion {
            id: 6,
            title: "physical a200 and circular states n<=5 up to one constant",
            suites: &[Suite::Examples],
            config: defaults,
            time_limit: None,
        },
        Criterion {
            id: 7,
            title: "integral equation residual <= 1e-6, control >= 1e-2",
            suites: &[Suite::Integral],
            config: defaults,
            time_limit: Some(Duration::from_secs(30)),
        },
        Criterion {
            id: 8,
            title: "kernel identity <= 1e-12 over 1000 pairs",
            suites: &[Suite::Kernel],
            config: defaults,
            time_limit: None,
        },
        Criterion {
            id: 9,
            title: "sphere area 2pi^2 within 1e-8; gauss-gegenbauer within 1e-10, n<=5",
            suites: &[Suite::Measure, Suite::Gegenbauer],
            config: defaults,
            time_limit: None,
        },
        Criterion {
            id: 10,
            title: "fourier ratio spread <= 1e-8, n<=3",
            suites: &[Suite::Fourier],
            config: defaults,
            time_limit: None,
        },
        Criterion {
            id: 11,
            title: "overlap matrix n<=4 diagonal within 1e-8",
            suites: &[Suite::Overlap],
            config: defaults,
            time_limit: None,
        },
    ]
}

fn is_control(r: &CheckReport) -> bool {
    r.metadata.get("kind").and_then(|k| k.as_str()) == Some("negative-control")
}

fn worst(reports: &[CheckReport]) -> Option<&CheckReport> {
    reports.iter().filter(|r| r.tolerance > 0.0 && !is_control(r)).max_by(|a, b| (a.residual / a.tolerance).total_cmp(&(b.residual / b.tolerance)))
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = verify::run(c.suites, &(c.config)());
        let elapsed = start.elapsed();
        let (ok, detail) = match &outcome {
            Err(e) => (false, format!("error: {e}")),
            Ok(out) => {
                let mut detail = format!("{} checks", out.reports.len());
                if !out.records.is_empty() {
                    let zero = out.records.iter().filter(|r| r.residual_is_zero).count();
                    detail += &format!(", {zero}/{} identities zero", out.records.len());
                }
                if let Some(w) = worst(&out.reports) {
                    detail += &format!(", worst {} = {:.3e} (tol {:.0e})", w.name, w.residual, w.tolerance);
                }
                for r in out.reports.iter().filter(|r| is_control(r)) {
                    let measured = r.metadata.get("measured").and_then(|m| m.as_f64()).unwrap_or(f64::NAN);
                    detail += &format!(", control {} = {measured:.3e}", r.name);
                }
                for r in out.reports.iter().filter(|r| !r.passed) {
                    detail += &format!("; failed: {}", r.name);
                }
                if let Some(sign) = out.reports.iter().find_map(|r| r.metadata.get("measuredSign")) {
                    detail += &format!(", measured eigenvalue {sign}");
                }
                (out.passed(), detail)
            }
        };
        let in_time = c.time_limit.is_none_or(|limit| elapsed <= limit);
        let limit = c.time_limit.map(|l| format!(" / {}s", l.as_secs())).unwrap_or_default();
        let pass = ok && in_time;
        failed += usize::from(!pass);
        println!(
            "{} [{:>2}] {} ({}; {:.2}s{})",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            detail,
            elapsed.as_secs_f64(),
            limit
        );
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
