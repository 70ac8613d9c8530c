//! `rlenz`: build momentum-space Coulomb states, run the verification
//! suites, and emit density samples.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rlenz::eigenbasis::{factored_text, rescale_physical, QuantumState, Space};
use rlenz::fock::sphere_weight;
use rlenz::numerics::{sphere_average, CheckReport, Tolerances};
use rlenz::poly::CompiledField;
use rlenz::verify::{self, Outcome, Suite, VerifyConfig};
use rlenz::GaussianRational;

const SCHEMA_VERSION: u32 = 1;
const MAX_SAMPLES: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "rlenz", version, about = "Exact and numeric checks of the momentum-space Coulomb problem")]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Profile {
    Default,
    Single,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the a- and b-space fields of one state.
    State {
        #[command(flatten)]
        numbers: NumbersArgs,

        /// Also print the physically rescaled forms (p -> n p).
        #[arg(long)]
        physical: bool,
    },

    /// Run one verification suite, or `all`.
    Verify(VerifyArgs),

    /// Emit `p,density,sphere_weight` rows for the physically rescaled state.
    Sample {
        #[command(flatten)]
        numbers: NumbersArgs,

        #[arg(long, default_value_t = 0.0)]
        p_min: f64,

        #[arg(long, default_value_t = 5.0)]
        p_max: f64,

        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
}

#[derive(Debug, Args)]
struct NumbersArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    l: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    m: i64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    /// eigen, commutators, casimir, conjugation, rotation, kernel, integral,
    /// fourier, gegenbauer, overlap, measure, examples, or all.
    suite: String,

    #[arg(long)]
    max_n: Option<u32>,

    /// Numerator degree of the test generators, or sphere monomial degree.
    #[arg(long)]
    degree: Option<u32>,

    #[arg(long, default_value_t = 3)]
    denom_power: u32,

    #[arg(long)]
    n: Option<u32>,

    #[arg(long)]
    l: Option<u32>,

    /// Gauss-Legendre nodes per panel.
    #[arg(long)]
    nodes: Option<usize>,

    /// Number of random point pairs for the kernel suite.
    #[arg(long)]
    pairs: Option<usize>,

    #[arg(long)]
    seed: Option<u64>,

    /// Tolerance profile the `--tol-*` flags override.
    #[arg(long, value_enum, env = "RLENZ_TOLERANCE_PROFILE", default_value = "default")]
    tolerance_profile: Profile,

    #[arg(long)]
    tol_integral: Option<f64>,
    #[arg(long)]
    tol_fourier: Option<f64>,
    #[arg(long)]
    tol_area: Option<f64>,
    #[arg(long)]
    tol_area_coarse: Option<f64>,
    #[arg(long)]
    tol_overlap: Option<f64>,
    #[arg(long)]
    tol_kernel: Option<f64>,
    #[arg(long)]
    tol_gegenbauer: Option<f64>,

    /// Include every exact identity record in the output.
    #[arg(long)]
    records: bool,

    #[arg(long, hide = true)]
    inject_failure: bool,
}

impl VerifyArgs {
    fn tolerances(&self) -> rlenz::Result<Tolerances> {
        let mut tol = match self.tolerance_profile {
            Profile::Default => Tolerances::default(),
            Profile::Single => Tolerances::single_precision(),
        };
        let overrides = [
            ("integral", self.tol_integral),
            ("fourier", self.tol_fourier),
            ("area", self.tol_area),
            ("area-coarse", self.tol_area_coarse),
            ("overlap", self.tol_overlap),
            ("kernel", self.tol_kernel),
            ("gegenbauer", self.tol_gegenbauer),
        ];
        for (name, value) in overrides {
            if let Some(v) = value {
                tol.set(name, v)?;
            }
        }
        Ok(tol)
    }

    fn config(&self) -> rlenz::Result<VerifyConfig> {
        let mut config = VerifyConfig {
            max_n: self.max_n,
            degree: self.degree,
            denom_power: self.denom_power,
            n: self.n,
            l: self.l,
            tolerances: self.tolerances()?,
            inject_failure: self.inject_failure,
            ..VerifyConfig::default()
        };
        if let Some(nodes) = self.nodes {
            config.quadrature = config.quadrature.with_nodes(nodes);
        }
        if let Some(pairs) = self.pairs {
            config.kernel_pairs = pairs;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        Ok(config)
    }
}

enum Failure {
    Usage(String),
    Checks,
    Runtime(anyhow::Error),
}

impl From<rlenz::Error> for Failure {
    fn from(e: rlenz::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::State { numbers, physical } => cmd_state(&cli, numbers, *physical),
        Command::Verify(args) => cmd_verify(&cli, args),
        Command::Sample { numbers, p_min, p_max, step } => cmd_sample(&cli, numbers, *p_min, *p_max, *step),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("Usage: rlenz <state|verify|sample> [OPTIONS]; see `rlenz --help`");
            ExitCode::from(2)
        }
    }
}

fn format_for(cli: &Cli, default: Format, allowed: &[Format], command: &str) -> Result<Format, Failure> {
    let format = cli.format.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(Failure::Usage(format!("`{command}` does not support --format {format:?}").to_lowercase()))
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    let written = match &cli.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).context("writing to stdout")
        }
    };
    written.map_err(Failure::Runtime)
}

fn cmd_state(cli: &Cli, args: &NumbersArgs, physical: bool) -> Result<(), Failure> {
    let format = format_for(cli, Format::Text, &[Format::Text, Format::Json], "state")?;
    let state = QuantumState::<GaussianRational>::from_numbers(args.n, args.l, args.m)?;
    let qn = state.numbers;
    let body = match format {
        Format::Json => {
            let form = |scaled: bool| {
                let scale = if scaled { qn.n } else { 1 };
                json!({
                    "a": state.to_json(Space::A, scaled),
                    "b": state.to_json(Space::B, scaled),
                    "aFactored": factored_text(qn, Space::A, scale),
                    "bFactored": factored_text(qn, Space::B, scale),
                })
            };
            let mut doc = json!({
                "schemaVersion": SCHEMA_VERSION,
                "n": qn.n,
                "l": qn.l,
                "m": qn.m,
                "unit": form(false),
            });
            if physical {
                doc["physical"] = form(true);
            }
            to_json_text(&doc)?
        }
        _ => {
            let mut s = format!("state {qn}\nunit radius\n");
            let _ = writeln!(s, "  b = {}", state.b);
            let _ = writeln!(s, "  a = {}", state.a);
            let _ = writeln!(s, "  b = {}", factored_text(qn, Space::B, 1));
            let _ = writeln!(s, "  a = {}", factored_text(qn, Space::A, 1));
            if physical {
                let _ = writeln!(s, "physical (p -> {}p)", qn.n);
                let _ = writeln!(s, "  b = {}", rescale_physical(&state.b, qn.n));
                let _ = writeln!(s, "  a = {}", rescale_physical(&state.a, qn.n));
                let _ = writeln!(s, "  b = {}", factored_text(qn, Space::B, qn.n));
                let _ = writeln!(s, "  a = {}", factored_text(qn, Space::A, qn.n));
            }
            s
        }
    };
    emit(cli, &body)
}

fn to_json_text(value: &Value) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| Failure::Runtime(e.into()))
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<(), Failure> {
    let format = format_for(cli, Format::Text, &[Format::Text, Format::Json], "verify")?;
    let suites = Suite::parse_selection(&args.suite)?;
    let config = args.config()?;
    let outcome = verify::run(&suites, &config)?;
    let body = match format {
        Format::Json => to_json_text(&verify_json(&suites, &outcome, args.records))?,
        _ => verify_text(&outcome, args.records),
    };
    emit(cli, &body)?;
    if outcome.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn verify_json(suites: &[Suite], outcome: &Outcome, records: bool) -> Value {
    let mut doc = json!({
        "schemaVersion": SCHEMA_VERSION,
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "passed": outcome.passed(),
        "failures": outcome.reports.iter().filter(|r| !r.passed).count(),
        "reports": outcome.reports,
    });
    if records {
        doc["records"] = json!(outcome.records);
    }
    doc
}

fn report_line(r: &CheckReport) -> String {
    let mut line = format!(
        "{} {}  residual={:e} tolerance={:e}",
        if r.passed { "PASS" } else { "FAIL" },
        r.name,
        r.residual,
        r.tolerance
    );
    if !r.metadata.is_empty() {
        let meta = serde_json::to_string(&r.metadata).unwrap_or_default();
        let _ = write!(line, "  {meta}");
    }
    line
}

fn verify_text(outcome: &Outcome, records: bool) -> String {
    let mut s = String::new();
    for r in &outcome.reports {
        let _ = writeln!(s, "{}", report_line(r));
    }
    if records {
        for r in &outcome.records {
            let mark = if r.residual_is_zero { "zero" } else { "NONZERO" };
            let _ = writeln!(s, "  {mark} {} on {}", r.identity, r.test_element);
        }
    }
    let failed = outcome.reports.iter().filter(|r| !r.passed).count();
    let _ = writeln!(
        s,
        "{}: {} checks, {} failed, {} exact identities",
        if failed == 0 { "ok" } else { "FAILED" },
        outcome.reports.len(),
        failed,
        outcome.records.len()
    );
    s
}

/// `p_min + i·step` for every grid point up to `p_max`, rounded to twelve
/// significant digits so that the printed grid is clean.
fn grid(p_min: f64, p_max: f64, step: f64) -> Result<Vec<f64>, Failure> {
    if !(p_min.is_finite() && p_max.is_finite() && step.is_finite()) {
        return Err(Failure::Usage("grid bounds and step must be finite".into()));
    }
    if p_min < 0.0 || p_max < p_min {
        return Err(Failure::Usage(format!("need 0 <= p-min <= p-max, got [{p_min}, {p_max}]")));
    }
    if step <= 0.0 {
        return Err(Failure::Usage(format!("step must be positive, got {step}")));
    }
    let count = ((p_max - p_min) / step * (1.0 + 1e-12)).floor() + 1.0;
    if count > MAX_SAMPLES as f64 {
        return Err(Failure::Usage(format!("grid has more than {MAX_SAMPLES} points")));
    }
    Ok((0..count as usize)
        .map(|i| {
            let p = p_min + i as f64 * step;
            format!("{p:.11e}").parse().expect("formatted float parses")
        })
        .collect())
}

fn cmd_sample(cli: &Cli, args: &NumbersArgs, p_min: f64, p_max: f64, step: f64) -> Result<(), Failure> {
    format_for(cli, Format::Csv, &[Format::Csv], "sample")?;
    let state = QuantumState::<GaussianRational>::from_numbers(args.n, args.l, args.m)?;
    let points = grid(p_min, p_max, step)?;
    let n = state.numbers.n as f64;
    let a = CompiledField::<f64>::new(&state.a);
    // |a|² on a sphere is the solid harmonic squared times a radial factor.
    let degree = 2 * state.numbers.l;
    let mut s = String::from("p,density,sphere_weight\n");
    for p in points {
        let r = n * p;
        let density = sphere_average(degree, |u| a.eval([r * u[0], r * u[1], r * u[2]]).norm_sqr());
        let weight: f64 = sphere_weight(&[r, 0.0, 0.0]);
        let _ = writeln!(s, "{p},{density:e},{weight:e}");
    }
    emit(cli, &s)
}
