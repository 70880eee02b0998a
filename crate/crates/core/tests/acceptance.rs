//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::Rng;

use twisted_landau::algebra::rational::to_f64;
use twisted_landau::cli::jacobi_parameter_set;
use twisted_landau::limits::{default_kappa_sequence, hermite_limit_probe, route_crosscheck};
use twisted_landau::operators::{
    nabla_star, verify_d_power, verify_factorization, verify_intertwining, OperatorReport,
};
use twisted_landau::polynomials::{
    jacobi_contiguous_check, jacobi_derivative_check, jacobi_ode_residual, ladder_eigenfunction,
};
use twisted_landau::prelude::*;
use twisted_landau::probes::{random_probes, rng};
use twisted_landau::spectral::{
    eigenfunction, gram_matrix, level_spec, norm_sq, verify_eigen, MomentResult, PiRational,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

/// κ ∈ {−2, −1, −1/2} × ν ∈ {2, 3, 9/2} where valid, and κ ∈ {1/2, 1, 2}
/// with 2ν/κ ∈ {1, 2, 4}.
fn curved_grid() -> Vec<SurfaceMagneticParams> {
    let mut out = Vec::new();
    for k in ["-2", "-1", "-1/2"] {
        for nu in ["2", "3", "9/2"] {
            if let Ok(p) = SurfaceMagneticParams::new(q(k), q(nu)) {
                out.push(p);
            }
        }
    }
    for k in ["1/2", "1", "2"] {
        for ratio in [1, 2, 4] {
            let kappa = q(k);
            let nu = &kappa * rat(ratio, 2);
            out.push(SurfaceMagneticParams::new(kappa, nu).unwrap());
        }
    }
    out
}

fn flat_grid() -> Vec<SurfaceMagneticParams> {
    ["1", "2", "3", "9/2"]
        .iter()
        .map(|nu| SurfaceMagneticParams::new(Rational::zero(), q(nu)).unwrap())
        .collect()
}

fn m_top(p: &SurfaceMagneticParams) -> u32 {
    p.level_bound().cap(6)
}

fn cells(p: &SurfaceMagneticParams, n_max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for m in 0..=m_top(p) {
        let top = level_spec(p, m).unwrap().cap(n_max);
        out.extend((0..=top).map(|n| (m, n)));
    }
    out
}

/// On the sphere the criterion's range is `n <= 2ν/κ + m`, where every route
/// is defined; cells up to `2ν/κ + 2m` are checked too, without the mixed route.
fn c1_routes() -> Outcome {
    let start = Instant::now();
    let grid = curved_grid();
    let (mut count, mut extra) = (0, 0);
    for p in &grid {
        let report = match route_crosscheck(p, m_top(p), 8) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("{p}: {e}")),
        };
        let in_range = |m: u32, n: u32| match p.nu_over_kappa() {
            Some(t) if p.kappa().is_positive() => Rational::from_integer(n.into()) <= rat(2, 1) * t + rat(m as i64, 1),
            _ => true,
        };
        for e in &report.entries {
            let jacobi_ok = match &e.jacobi_ratio {
                Some(r) => e.m > e.n || r == "1",
                None => false,
            };
            let mixed_ok = e.mixed_defined || !in_range(e.m, e.n);
            if !(e.routes_equal && jacobi_ok && mixed_ok) {
                return outcome(false, format!("{p} at (m, n) = ({}, {}): {e:?}", e.m, e.n));
            }
            if in_range(e.m, e.n) {
                count += 1;
            } else {
                extra += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        secs < 60.0,
        format!("{} parameter sets, {count} cells (+{extra} beyond the mixed range), {secs:.1}s", grid.len()),
    )
}

fn c2_eigen() -> Outcome {
    let mut count = 0;
    for p in curved_grid().iter().chain(flat_grid().iter()) {
        for (m, n) in cells(p, 8) {
            count += 1;
            match verify_eigen(p, m, n) {
                Ok(true) => {}
                Ok(false) => return outcome(false, format!("{p} (m, n) = ({m}, {n})")),
                Err(e) => return outcome(false, format!("{p} (m, n) = ({m}, {n}): {e}")),
            }
        }
    }
    outcome(true, format!("{count} eigenfunctions, flat cases included"))
}

fn c3_operators() -> Outcome {
    let mut reports: Vec<(String, OperatorReport)> = Vec::new();
    for (i, p) in curved_grid().iter().chain(flat_grid().iter()).enumerate() {
        let probes = random_probes(p.kappa(), 100, 1000 + i as u64);
        reports.push((p.to_string(), verify_factorization(p, &probes)));
        reports.push((p.to_string(), verify_intertwining(p, &probes)));
    }
    for (i, k) in ["-2", "-1", "-1/2", "1/2", "1", "2"].iter().enumerate() {
        let probes = random_probes(&q(k), 100, 2000 + i as u64);
        for m in 0..=6 {
            reports.push((format!("kappa = {k}"), verify_d_power(m, &q(k), &probes)));
        }
    }
    let fewest = reports.iter().map(|r| r.1.probe_count).min().unwrap_or(0);
    if let Some((p, r)) = reports.iter().find(|r| !r.1.all_passed) {
        return outcome(false, format!("{} at {p}: {:?}", r.identity, r.first_failure));
    }
    outcome(
        fewest >= 100,
        format!("{} identity runs, {fewest} probes each", reports.len()),
    )
}

fn c4_gram() -> Outcome {
    let p = SurfaceMagneticParams::new(rat(-1, 1), rat(3, 1)).unwrap();
    let entries: Vec<(u32, u32)> = (0..=2).flat_map(|m| (0..=4).map(move |n| (m, n))).collect();
    let g = match gram_matrix(&p, &entries) {
        Ok(g) => g,
        Err(e) => return outcome(false, e.to_string()),
    };
    for (i, row) in g.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let ok = match cell {
                MomentResult::Finite(v) if i == j => v.q.is_positive(),
                MomentResult::Finite(v) => v.is_zero(),
                MomentResult::Divergent => false,
            };
            if !ok {
                return outcome(false, format!("entry {:?} x {:?} = {cell}", entries[i], entries[j]));
            }
        }
    }
    let first = &g[0][0];
    outcome(
        *first == MomentResult::Finite(PiRational::new(rat(1, 5))),
        format!("15 x 15 diagonal, <Phi00, Phi00> = {first}"),
    )
}

fn c5_disc_boundary() -> Outcome {
    let p = SurfaceMagneticParams::new(rat(-1, 1), rat(3, 1)).unwrap();
    for m in 0..=3 {
        for n in 0..=5 {
            let phi = ladder_eigenfunction(&p, m, n).unwrap();
            let finite = norm_sq(&phi).unwrap().is_finite();
            if finite != (m <= 2) {
                return outcome(false, format!("(m, n) = ({m}, {n}) finite = {finite}"));
            }
        }
    }
    outcome(true, "finite for m <= 2, divergent at m = 3, n <= 5")
}

fn c6_sphere_dimension() -> Outcome {
    let p = SurfaceMagneticParams::new(rat(1, 1), rat(1, 1)).unwrap();
    for m in 0..=4 {
        let finite = finite_count(&p, m);
        let edge = norm_sq(&ladder_eigenfunction(&p, m, m + 3).unwrap()).unwrap();
        if finite != u64::from(m) + 3 || edge.is_finite() {
            return outcome(false, format!("m = {m}: {finite} finite elements, n = {} has norm {edge}", m + 3));
        }
    }
    outcome(true, "m + 3 finite elements, n = m + 3 divergent, m <= 4")
}

fn finite_count(p: &SurfaceMagneticParams, m: u32) -> u64 {
    (0..=2 * m + 12)
        .filter(|&n| norm_sq(&ladder_eigenfunction(p, m, n).unwrap()).unwrap().is_finite())
        .count() as u64
}

/// What does hold at κ = 1, ν = 1: 2m + 3 finite elements, matching `level_spec`.
fn c6_observed() -> Outcome {
    let p = SurfaceMagneticParams::new(rat(1, 1), rat(1, 1)).unwrap();
    for m in 0..=4 {
        let finite = finite_count(&p, m);
        let edge = norm_sq(&ladder_eigenfunction(&p, m, 2 * m + 3).unwrap()).unwrap();
        if Some(finite) != level_spec(&p, m).unwrap().dimension() || finite != u64::from(2 * m + 3) || edge.is_finite() {
            return outcome(false, format!("m = {m}: {finite} finite"));
        }
    }
    outcome(true, "2 + 2m + 1 finite elements, n = 2m + 3 divergent, m <= 4")
}

/// What does hold at κ = −1, ν = 3, m = 3: E_3 = E_2, and the ladder lands in
/// level 2 (zero for n = 0, a multiple of Φ_{2,n−1} otherwise).
fn c5_observed() -> Outcome {
    let p = SurfaceMagneticParams::new(rat(-1, 1), rat(3, 1)).unwrap();
    for n in 0..=5 {
        let phi = ladder_eigenfunction(&p, 3, n).unwrap();
        let ok = if n == 0 {
            phi.is_zero()
        } else {
            phi.ratio_to(&eigenfunction(&p, 2, n - 1).unwrap()).is_some()
        };
        if !ok {
            return outcome(false, format!("n = {n}: {phi}"));
        }
    }
    outcome(true, "m = 3 reproduces level 2 (E_3 = E_2 = 9)")
}

/// Literal reading, plus the κ → 0 extrapolated comparison as a second line.
fn c7_hermite_limit() -> (Outcome, Outcome) {
    let nu = rat(1, 1);
    let seq = default_kappa_sequence(&nu).unwrap();
    let mut literal_fail = None;
    let mut extrapolated_fail = None;
    let mut worst_final = 0.0_f64;
    let mut worst_extra = 0.0_f64;
    for m in 0..=3 {
        for n in 0..=3 {
            let r = hermite_limit_probe(&nu, m, n, &seq).unwrap();
            let h = complex_hermite_max(m, n, &nu);
            let bound = 1e-8 * (1.0 + h);
            let last = r.points.last().unwrap().diff;
            let order_ok = r.order.is_none_or(|o| o >= 0.9);
            let exact_11 = (m, n) != (1, 1) || r.points.iter().all(|pt| pt.diff == to_f64(&pt.kappa.abs()));
            worst_final = worst_final.max(last / (1.0 + h));
            worst_extra = worst_extra.max(r.extrapolated_diff / (1.0 + h));
            if literal_fail.is_none() && !(r.monotone() && order_ok && last <= bound && exact_11) {
                literal_fail = Some(format!(
                    "(m, n) = ({m}, {n}): monotone {}, order {:?}, final diff {last:e} vs bound {bound:e}",
                    r.monotone(),
                    r.order
                ));
            }
            if extrapolated_fail.is_none() && !(r.extrapolated_match && order_ok && exact_11) {
                extrapolated_fail = Some(format!("(m, n) = ({m}, {n}): {r:?}"));
            }
        }
    }
    (
        match literal_fail {
            Some(d) => outcome(false, d),
            None => outcome(true, format!("worst final diff / (1 + max) = {worst_final:e}")),
        },
        match extrapolated_fail {
            Some(d) => outcome(false, d),
            None => outcome(true, format!("worst extrapolated diff / (1 + max) = {worst_extra:e}")),
        },
    )
}

fn complex_hermite_max(m: u32, n: u32, nu: &Rational) -> f64 {
    twisted_landau::polynomials::complex_hermite(m, n, nu).unwrap().max_abs_coeff()
}

fn c8_jacobi() -> Outcome {
    let set = jacobi_parameter_set();
    for a in &set {
        for b in &set {
            for j in 0..=10 {
                if !jacobi_contiguous_check(j, a, b) || !jacobi_derivative_check(j, a, b) {
                    return outcome(false, format!("j = {j}, a = {a}, b = {b}"));
                }
            }
            for l in 0..=8 {
                if !jacobi_ode_residual(l, a, b).corrected.is_zero() {
                    return outcome(false, format!("ODE at l = {l}, a = {a}, b = {b}"));
                }
            }
        }
    }
    outcome(true, "36 parameter pairs, j <= 10, ODE l <= 8")
}

/// Applies `∇*_{b + shift}` to `(1+κ|z|²)^{−b/κ} z^n` over the grid.
fn annihilation(shift_by_kappa: bool) -> Outcome {
    let mut count = 0;
    for p in &curved_grid() {
        let kappa = p.kappa();
        for m in 0..=m_top(p) {
            let b = p.nu() + kappa * Rational::from_integer(m.into());
            let alpha = if shift_by_kappa { &b + kappa } else { b.clone() };
            for n in 0..=10 {
                let gen = WeightedFn::power(kappa.clone(), -(&b / kappa), BiPoly::monomial(n, 0, rat(1, 1)));
                let out = nabla_star(&alpha, &gen, kappa).unwrap();
                count += 1;
                if !out.is_zero() {
                    return outcome(false, format!("{p}, m = {m}, n = {n}: result {out}"));
                }
            }
        }
    }
    outcome(true, format!("{count} generators"))
}

/// Polar-form oracle: `Σ c r^{i+j} e^{i(i−j)θ}` times the weight, plus the
/// magnitude sum used as the relative scale.
fn oracle(f: &WeightedFn, z: Complex64) -> (Complex64, f64) {
    let (r, theta) = z.to_polar();
    let u = r * r;
    let w = match f.weight() {
        Weight::Power { kappa, s } => (to_f64(s) * (1.0 + to_f64(kappa) * u).ln()).exp(),
        Weight::Exp { c } => (to_f64(c) * u).exp(),
    };
    let mut sum = Complex64::zero();
    let mut scale = 0.0;
    for (i, j, c) in f.poly().terms() {
        let mag = to_f64(c) * r.powi((i + j) as i32);
        sum += Complex64::from_polar(mag, theta * (i as f64 - j as f64));
        scale += mag.abs();
    }
    (sum * w, scale * w)
}

fn c10_numeric() -> Outcome {
    let mut checked = 0;
    let mut worst = 0.0_f64;
    for (idx, p) in curved_grid().iter().chain(flat_grid().iter()).enumerate() {
        let kappa = to_f64(p.kappa());
        let radius = if kappa < 0.0 { 0.95 / (-kappa).sqrt() } else if kappa > 0.0 { 2.0 / kappa.sqrt() } else { 2.0 };
        let mut g = rng(3000 + idx as u64);
        let points: Vec<Complex64> = (0..100)
            .map(|_| Complex64::from_polar(radius * g.gen::<f64>().sqrt(), g.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        for (m, n) in cells(p, 8) {
            let phi = eigenfunction(p, m, n).unwrap();
            for &z in &points {
                let got = phi.eval(z).unwrap();
                let (want, scale) = oracle(&phi, z);
                let rel = (got - want).norm() / scale.max(f64::MIN_POSITIVE);
                worst = worst.max(rel);
                checked += 1;
                if rel > 1e-10 {
                    return outcome(false, format!("{p} (m, n) = ({m}, {n}) at {z}: {got} vs {want}"));
                }
            }
        }
    }
    let cli = cli_reproducible();
    outcome(
        cli.is_ok(),
        format!(
            "{checked} evaluations, worst relative error {worst:e}; CLI {}",
            cli.err().unwrap_or_else(|| "byte-identical".into())
        ),
    )
}

fn cli_reproducible() -> std::result::Result<(), String> {
    let runs: [&[&str]; 8] = [
        &["poly", "--kappa", "-1/2", "--nu", "3", "-m", "2", "-n", "5", "--format", "json"],
        &["poly", "--kappa", "1", "--nu", "2", "-m", "3", "-n", "2", "--route", "mixed"],
        &["verify", "--kappa", "-1", "--nu", "3", "--seed", "7", "--probes", "20", "--format", "json"],
        &["spectrum", "--kappa", "1", "--nu", "1", "--format", "csv"],
        &["gram", "--kappa", "-1", "--nu", "3", "-e", "0,0", "-e", "1,1", "-e", "2,3"],
        &["eval", "--kappa", "-1", "--nu", "3", "-m", "1", "-n", "2"],
        &["eval", "--kappa", "0", "--nu", "1", "-m", "2", "-n", "1", "--format", "csv"],
        &["limit", "--nu", "1", "--m-max", "2", "--n-max", "2", "--format", "json"],
    ];
    for args in runs {
        let go = || {
            Command::new(env!("CARGO_BIN_EXE_twisted-landau"))
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (go()?, go()?);
        if !a.status.success() {
            return Err(format!("{args:?} exited with {}", a.status));
        }
        if a.stdout != b.stdout || a.stdout.is_empty() {
            return Err(format!("{args:?} differs between runs"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let (c7, c7x) = c7_hermite_limit();
    let lines: Vec<(&str, Outcome, bool)> = vec![
        ("1  route agreement", c1_routes(), true),
        ("2  eigen-identity", c2_eigen(), true),
        ("3  operator identities", c3_operators(), true),
        ("4  orthogonality", c4_gram(), true),
        ("5  L2 boundary (disc)", c5_disc_boundary(), true),
        ("5+ disc, m = 3 ladder output", c5_observed(), false),
        ("6  sphere dimension", c6_sphere_dimension(), true),
        ("6+ sphere dimension 2 nu / kappa + 2m + 1", c6_observed(), false),
        ("7  Hermite limit", c7, true),
        ("7+ Hermite limit, extrapolated to kappa = 0", c7x, false),
        ("8  Jacobi identities", c8_jacobi(), true),
        ("9  annihilation by nabla*_b", annihilation(false), true),
        ("9+ annihilation by nabla*_(b+kappa)", annihilation(true), false),
        ("10 numeric consistency", c10_numeric(), true),
    ];
    let mut failed = 0;
    for (name, o, counted) in &lines {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {name:<45} {tag}  {}", o.detail);
        if *counted && !o.passed {
            failed += 1;
        }
    }
    println!("{failed} of 10 criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
