//! Batch command-line interface.
//!
//! Subcommands: `poly`, `verify`, `spectrum`, `gram`, `eval`, `limit`.
//! Exit codes: 0 success, 1 verification failure, 2 invalid input or range,
//! 3 degenerate Rodrigues constant. Output is deterministic for fixed flags.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::json;

use crate::algebra::rational::{self, format_rational, int, parse_rational, Rational};
use crate::algebra::{BiPoly, SurfaceMagneticParams, WeightedFn};
use crate::error::Error;
use crate::limits::{self, ConvergenceReport, CrossCheckReport};
use crate::operators::{self, OperatorReport};
use crate::polynomials::{self, RouteLabel};
use crate::probes::random_probes;
use crate::spectral::{self, MomentResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "twisted-landau",
    about = "Exact Landau-level eigenfunctions of the twisted Laplacian on constant-curvature surfaces"
)]
pub struct Cli {
    /// Curvature as an exact rational "p/q".
    #[arg(long, global = true, allow_hyphen_values = true, default_value = "-1")]
    pub kappa: String,

    /// Field strength as an exact rational "p/q".
    #[arg(long, global = true, allow_hyphen_values = true, default_value = "3")]
    pub nu: String,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print P_{m,n} (or H_{m,n}) by the chosen route.
    Poly(PolyArgs),
    /// Run the exact identity suites.
    Verify(VerifyArgs),
    /// List Landau levels with eigenvalues and level dimensions.
    Spectrum(SpectrumArgs),
    /// Exact Gram matrix of eigenfunctions, in multiples of π.
    Gram(GramArgs),
    /// Evaluate an eigenfunction on a rectangular grid (CSV).
    Eval(EvalArgs),
    /// Flat-limit convergence of P_{m,n} to H_{m,n}.
    Limit(LimitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Ladder,
    D,
    Mixed,
    Jacobi,
    Hermite,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(short = 'm', default_value_t = 0)]
    pub m: u32,
    #[arg(short = 'n', default_value_t = 0)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = RouteArg::Ladder)]
    pub route: RouteArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Operators,
    Eigen,
    Routes,
    Jacobi,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Highest level checked; default min(6, level bound).
    #[arg(long)]
    pub m_max: Option<u32>,
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
    /// Random probes per operator identity.
    #[arg(long, default_value_t = 100)]
    pub probes: usize,
    /// Highest degree for the Jacobi identities.
    #[arg(long, default_value_t = 10)]
    pub jmax: u32,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Highest level listed when the spectrum is unbounded.
    #[arg(long, default_value_t = 10)]
    pub cap: u32,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    /// Eigenfunction index "m,n"; repeat for each entry.
    #[arg(long = "entry", short = 'e', required = true, value_parser = parse_pair)]
    pub entries: Vec<(u32, u32)>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(short = 'm', default_value_t = 0)]
    pub m: u32,
    #[arg(short = 'n', default_value_t = 0)]
    pub n: u32,
    /// Half-width of the square grid centred at 0; default stays inside the disc.
    #[arg(long)]
    pub extent: Option<f64>,
    /// Grid points per axis.
    #[arg(long, default_value_t = 11)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long, default_value_t = 3)]
    pub m_max: u32,
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
    /// Restrict to a single level.
    #[arg(short = 'm')]
    pub m: Option<u32>,
    /// Restrict to a single n.
    #[arg(short = 'n')]
    pub n: Option<u32>,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"m,n\", got {s:?}"))?;
    let m = a.trim().parse().map_err(|_| format!("bad m in {s:?}"))?;
    let n = b.trim().parse().map_err(|_| format!("bad n in {s:?}"))?;
    Ok((m, n))
}

/// A command failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UndefinedConstant { .. } => EXIT_DEGENERATE,
            Error::CrossCheck(_) | Error::NonCancellingWeight(_) => EXIT_VERIFY_FAILED,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Rendered output plus the exit code it should produce.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text).map_err(|e| e.to_string()),
                None => stdout.write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INVALID;
            }
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let kappa = parse_rational(&cli.kappa)?;
    let nu = parse_rational(&cli.nu)?;
    // The limit command takes its own curvature sequence; only ν must be sane there.
    if let Command::Limit(args) = &cli.command {
        return cmd_limit(&nu, args, cli.format);
    }
    let params = SurfaceMagneticParams::new(kappa, nu)?;
    match &cli.command {
        Command::Poly(a) => cmd_poly(&params, a, cli.format),
        Command::Verify(a) => cmd_verify(&params, a, cli.seed, cli.format),
        Command::Spectrum(a) => cmd_spectrum(&params, a, cli.format),
        Command::Gram(a) => cmd_gram(&params, a, cli.format),
        Command::Eval(a) => cmd_eval(&params, a),
        Command::Limit(_) => unreachable!(),
    }
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_poly(params: &SurfaceMagneticParams, a: &PolyArgs, format: Format) -> Result<Outcome, Failure> {
    let poly = match a.route {
        RouteArg::Hermite => polynomials::complex_hermite(a.m, a.n, params.nu())?,
        RouteArg::Ladder => polynomials::p_via(RouteLabel::Ladder, params, a.m, a.n)?,
        RouteArg::D => polynomials::p_via(RouteLabel::RodriguesD, params, a.m, a.n)?,
        RouteArg::Mixed => polynomials::p_via(RouteLabel::RodriguesMixed, params, a.m, a.n)?,
        RouteArg::Jacobi => polynomials::p_via(RouteLabel::JacobiClosed, params, a.m, a.n)?,
    };
    Ok(Outcome::ok(render_poly(&poly, format)))
}

fn render_poly(poly: &BiPoly, format: Format) -> String {
    match format {
        Format::Human => format!("{poly}\n"),
        Format::Json => json_text(poly),
        Format::Csv => {
            let mut s = String::from("i,j,c\n");
            for (i, j, c) in poly.terms() {
                s.push_str(&format!("{i},{j},{}\n", format_rational(c)));
            }
            s
        }
    }
}

#[derive(Debug, Serialize)]
struct EigenSummary {
    checked: usize,
    failures: Vec<(u32, u32)>,
}

#[derive(Debug, Serialize)]
struct JacobiSummary {
    jmax: u32,
    parameter_pairs: usize,
    contiguous_failures: Vec<String>,
    derivative_failures: Vec<String>,
    ode_failures: Vec<String>,
}

impl JacobiSummary {
    fn passed(&self) -> bool {
        self.contiguous_failures.is_empty() && self.derivative_failures.is_empty() && self.ode_failures.is_empty()
    }
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    #[serde(with = "rational::serde_str")]
    kappa: Rational,
    #[serde(with = "rational::serde_str")]
    nu: Rational,
    seed: u64,
    passed: bool,
    operator_reports: Vec<OperatorReport>,
    eigen: Option<EigenSummary>,
    crosscheck: Option<CrossCheckReport>,
    jacobi: Option<JacobiSummary>,
}

/// Parameter set for the Jacobi identities.
pub fn jacobi_parameter_set() -> Vec<Rational> {
    vec![
        rational::rat(-7, 2),
        int(-2),
        rational::rat(-1, 2),
        int(0),
        int(1),
        rational::rat(5, 2),
    ]
}

/// Operator identity reports on `count` seeded probes: factorization,
/// intertwining, the `D_κ` power formula (m ≤ 6), the ladder/`D_κ` bridge, and
/// the null space of `∇*_{b+κ}` on lowest-level generators.
pub fn operator_suite(params: &SurfaceMagneticParams, m_max: u32, n_max: u32, count: usize, seed: u64) -> Vec<OperatorReport> {
    let kappa = params.kappa().clone();
    let probes = random_probes(&kappa, count, seed);
    let mut reports = vec![
        operators::verify_factorization(params, &probes),
        operators::verify_intertwining(params, &probes),
    ];
    if !kappa.is_zero() {
        for m in 0..=6 {
            reports.push(operators::verify_d_power(m, &kappa, &probes));
        }
        for m in 0..=m_max.min(3) {
            reports.push(operators::verify_ladder_bridge(params, m, &probes));
        }
    }
    reports.push(null_space_report(params, m_max, n_max));
    reports
}

/// `∇*_{b+κ}` annihilates the level-zero generators of `𝔏^b`, `b = ν + mκ`.
fn null_space_report(params: &SurfaceMagneticParams, m_max: u32, n_max: u32) -> OperatorReport {
    let kappa = params.kappa().clone();
    let mut gens = Vec::new();
    let mut indices = Vec::new();
    for m in 0..=m_max {
        let b = params.nu() + &kappa * Rational::from_integer(m.into());
        for n in 0..=n_max {
            let mono = BiPoly::monomial(n, 0, Rational::from_integer(1.into()));
            gens.push(if kappa.is_zero() {
                WeightedFn::exp(-b.clone(), mono)
            } else {
                WeightedFn::power(kappa.clone(), -(&b / &kappa), mono)
            });
            indices.push(b.clone());
        }
    }
    let mut idx = 0;
    OperatorReport::run("lowest_level_null_space", &gens, |f| {
        let b = &indices[idx];
        idx += 1;
        let lhs = operators::nabla_star(&(b + &kappa), f, &kappa)?;
        Ok((lhs, f.zero_like()))
    })
}

fn jacobi_suite(jmax: u32) -> JacobiSummary {
    let set = jacobi_parameter_set();
    let mut s = JacobiSummary {
        jmax,
        parameter_pairs: set.len() * set.len(),
        contiguous_failures: vec![],
        derivative_failures: vec![],
        ode_failures: vec![],
    };
    for a in &set {
        for b in &set {
            let tag = |j: u32| format!("j={j} a={} b={}", format_rational(a), format_rational(b));
            for j in 0..=jmax {
                if !polynomials::jacobi_contiguous_check(j, a, b) {
                    s.contiguous_failures.push(tag(j));
                }
                if !polynomials::jacobi_derivative_check(j, a, b) {
                    s.derivative_failures.push(tag(j));
                }
            }
            for l in 0..=8 {
                if !polynomials::jacobi_ode_residual(l, a, b).corrected.is_zero() {
                    s.ode_failures.push(tag(l));
                }
            }
        }
    }
    s
}

fn eigen_suite(params: &SurfaceMagneticParams, m_max: u32, n_max: u32) -> Result<EigenSummary, Failure> {
    let mut summary = EigenSummary {
        checked: 0,
        failures: vec![],
    };
    for m in 0..=m_max {
        let top = spectral::level_spec(params, m)?.cap(n_max);
        for n in 0..=top {
            summary.checked += 1;
            if !spectral::verify_eigen(params, m, n)? {
                summary.failures.push((m, n));
            }
        }
    }
    Ok(summary)
}

fn cmd_verify(params: &SurfaceMagneticParams, a: &VerifyArgs, seed: u64, format: Format) -> Result<Outcome, Failure> {
    let bound = params.level_bound();
    let m_max = match a.m_max {
        Some(m) => {
            params.check_level(m)?;
            m
        }
        None => bound.cap(6),
    };
    let want = |s: Suite| a.suite == Suite::All || a.suite == s;
    let mut report = VerifyReport {
        kappa: params.kappa().clone(),
        nu: params.nu().clone(),
        seed,
        passed: true,
        operator_reports: vec![],
        eigen: None,
        crosscheck: None,
        jacobi: None,
    };
    if want(Suite::Operators) {
        report.operator_reports = operator_suite(params, m_max, a.n_max, a.probes, seed);
    }
    if want(Suite::Eigen) {
        report.eigen = Some(eigen_suite(params, m_max, a.n_max)?);
    }
    if want(Suite::Routes) {
        report.crosscheck = Some(limits::route_crosscheck(params, m_max, a.n_max)?);
    }
    if want(Suite::Jacobi) {
        report.jacobi = Some(jacobi_suite(a.jmax));
    }
    report.passed = report.operator_reports.iter().all(|r| r.all_passed)
        && report.eigen.as_ref().is_none_or(|e| e.failures.is_empty())
        && report.crosscheck.as_ref().is_none_or(|c| c.passed())
        && report.jacobi.as_ref().is_none_or(|j| j.passed());

    let text = match format {
        Format::Json => json_text(&report),
        Format::Human | Format::Csv => render_verify_human(&report),
    };
    Ok(Outcome {
        text,
        code: if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_verify_human(r: &VerifyReport) -> String {
    let mut s = format!(
        "kappa = {}, nu = {}, seed = {}\n",
        format_rational(&r.kappa),
        format_rational(&r.nu),
        r.seed
    );
    for op in &r.operator_reports {
        s.push_str(&format!("{} {} ({} probes)\n", mark(op.all_passed), op.identity, op.probe_count));
        if let Some(f) = &op.first_failure {
            s.push_str(&format!("  probe {}\n  lhs {}\n  rhs {}\n", f.probe, f.lhs, f.rhs));
        }
    }
    if let Some(e) = &r.eigen {
        s.push_str(&format!("{} eigen ({} functions)\n", mark(e.failures.is_empty()), e.checked));
        for (m, n) in &e.failures {
            s.push_str(&format!("  failed at (m, n) = ({m}, {n})\n"));
        }
    }
    if let Some(c) = &r.crosscheck {
        s.push_str(&format!("{} routes ({} cells)\n", mark(c.passed()), c.entries.len()));
        for e in c.entries.iter().filter(|e| e.m > e.n) {
            s.push_str(&format!(
                "  jacobi/ladder ratio at ({}, {}) = {}\n",
                e.m,
                e.n,
                e.jacobi_ratio.as_deref().unwrap_or("not proportional")
            ));
        }
        let undefined = c.entries.iter().filter(|e| !e.mixed_defined).count();
        if undefined > 0 {
            s.push_str(&format!("  mixed Rodrigues constant vanishes on {undefined} cells\n"));
        }
        if let Some(e) = c.first_failure() {
            s.push_str(&format!("  first failure at (m, n) = ({}, {})\n", e.m, e.n));
        }
    }
    if let Some(j) = &r.jacobi {
        s.push_str(&format!(
            "{} jacobi (j <= {}, {} parameter pairs)\n",
            mark(j.passed()),
            j.jmax,
            j.parameter_pairs
        ));
    }
    s.push_str(if r.passed { "all checks passed\n" } else { "verification FAILED\n" });
    s
}

fn cmd_spectrum(params: &SurfaceMagneticParams, a: &SpectrumArgs, format: Format) -> Result<Outcome, Failure> {
    let rows = spectral::spectrum(params, a.cap)?;
    let dim = |d: Option<u64>| d.map_or_else(|| "inf".to_string(), |v| v.to_string());
    let text = match format {
        Format::Csv => {
            let mut s = String::from("m,eigenvalue,level_dimension\n");
            for r in &rows {
                s.push_str(&format!("{},{},{}\n", r.m, format_rational(&r.eigenvalue), dim(r.dimension)));
            }
            s
        }
        Format::Json => json_text(
            &rows
                .iter()
                .map(|r| json!({"m": r.m, "eigenvalue": format_rational(&r.eigenvalue), "level_dimension": dim(r.dimension)}))
                .collect::<Vec<_>>(),
        ),
        Format::Human => {
            let mut s = String::from("m  eigenvalue  dimension\n");
            for r in &rows {
                s.push_str(&format!("{:<2} {:<11} {}\n", r.m, format_rational(&r.eigenvalue), dim(r.dimension)));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_gram(params: &SurfaceMagneticParams, a: &GramArgs, format: Format) -> Result<Outcome, Failure> {
    let g = spectral::gram_matrix(params, &a.entries)?;
    let cell = |r: &MomentResult| match r {
        MomentResult::Finite(v) => format_rational(&v.q),
        MomentResult::Divergent => "divergent".to_string(),
    };
    let text = match format {
        Format::Json => json_text(&g),
        Format::Csv => g
            .iter()
            .map(|row| row.iter().map(cell).collect::<Vec<_>>().join(",") + "\n")
            .collect(),
        Format::Human => {
            let mut s = String::new();
            for row in &g {
                let cells: Vec<String> = row.iter().map(|r| r.to_string()).collect();
                s.push_str(&format!("[{}]\n", cells.join(", ")));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

/// 17 significant digits.
fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn cmd_eval(params: &SurfaceMagneticParams, a: &EvalArgs) -> Result<Outcome, Failure> {
    let phi = spectral::eigenfunction(params, a.m, a.n)?;
    let kappa = rational::to_f64(params.kappa());
    let extent = match a.extent {
        Some(e) => e,
        None if params.kappa().is_negative() => 0.7 / (-kappa).sqrt(),
        None => 2.0,
    };
    if !(extent.is_finite() && extent >= 0.0) || a.points == 0 {
        return Err(Failure {
            code: EXIT_INVALID,
            message: "grid extent must be a nonnegative number and points > 0".into(),
        });
    }
    if params.kappa().is_negative() && 1.0 + kappa * 2.0 * extent * extent <= 0.0 {
        return Err(Failure {
            code: EXIT_INVALID,
            message: format!("grid of half-width {extent} escapes the disc of radius {}", 1.0 / (-kappa).sqrt()),
        });
    }
    let coord = |k: usize| {
        if a.points == 1 {
            0.0
        } else {
            -extent + 2.0 * extent * k as f64 / (a.points - 1) as f64
        }
    };
    let mut s = String::from("x,y,re,im,abs2\n");
    for iy in 0..a.points {
        for ix in 0..a.points {
            let (x, y) = (coord(ix), coord(iy));
            let v = phi.eval(Complex64::new(x, y))?;
            s.push_str(&format!("{},{},{},{},{}\n", sci(x), sci(y), sci(v.re), sci(v.im), sci(v.norm_sqr())));
        }
    }
    Ok(Outcome::ok(s))
}

fn cmd_limit(nu: &Rational, a: &LimitArgs, format: Format) -> Result<Outcome, Failure> {
    if !nu.is_positive() {
        return Err(Error::InvalidParams("nu must be positive".into()).into());
    }
    let seq = limits::default_kappa_sequence(nu)?;
    let ms: Vec<u32> = a.m.map_or_else(|| (0..=a.m_max).collect(), |m| vec![m]);
    let ns: Vec<u32> = a.n.map_or_else(|| (0..=a.n_max).collect(), |n| vec![n]);
    let mut reports: Vec<ConvergenceReport> = Vec::new();
    for &m in &ms {
        for &n in &ns {
            reports.push(limits::hermite_limit_probe(nu, m, n, &seq)?);
        }
    }
    let all = reports.iter().all(|r| r.extrapolated_match);
    let text = match format {
        Format::Json => json_text(&reports),
        Format::Csv => {
            let mut s = String::from("m,n,kappa,diff\n");
            for r in &reports {
                for p in &r.points {
                    s.push_str(&format!("{},{},{},{}\n", r.m, r.n, format_rational(&p.kappa), sci(p.diff)));
                }
            }
            s
        }
        Format::Human => {
            let mut s = String::new();
            for r in &reports {
                let order = r.order.map_or_else(|| "exact".to_string(), |o| format!("{o:.6}"));
                s.push_str(&format!(
                    "{} (m, n) = ({}, {}): order {}, final diff {}, extrapolated diff {}\n",
                    mark(r.extrapolated_match),
                    r.m,
                    r.n,
                    order,
                    sci(r.points.last().map_or(0.0, |p| p.diff)),
                    sci(r.extrapolated_diff)
                ));
            }
            s
        }
    };
    Ok(Outcome {
        text,
        code: if all { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}
