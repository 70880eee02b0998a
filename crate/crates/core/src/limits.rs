//! The flat limit κ → 0 and the cross-route consistency harness.
//!
//! The limit is checked coefficient-wise on a shrinking sequence of exact
//! curvatures. Each coefficient of `P_{m,n}^{ν;κ}` is a polynomial in κ, so
//! besides the raw differences we also extrapolate the sequence to κ = 0
//! (Neville) and compare that with `H_{m,n}^ν`.

use std::collections::BTreeSet;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{self, format_rational, pow_i, rat, Rational};
use crate::algebra::{validate, BiPoly, SurfaceMagneticParams};
use crate::error::{Error, Result};
use crate::polynomials::{complex_hermite, p_via, p_via_ladder, RouteLabel};
use crate::spectral::level_spec;

/// Relative tolerance for the extrapolated κ → 0 comparison.
pub const LIMIT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitPoint {
    #[serde(with = "rational::serde_str")]
    pub kappa: Rational,
    pub diff: f64,
}

/// Convergence of `P_{m,n}^{ν;κ}` to `H_{m,n}^ν` along a κ sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub m: u32,
    pub n: u32,
    #[serde(with = "rational::serde_str")]
    pub nu: Rational,
    pub points: Vec<LimitPoint>,
    /// Least-squares slope of `log diff` against `log |κ|`; `null` when every
    /// difference is exactly zero.
    pub order: Option<f64>,
    /// Largest coefficient difference between the κ → 0 extrapolation and `H`.
    pub extrapolated_diff: f64,
    #[serde(rename = "match")]
    pub extrapolated_match: bool,
}

impl ConvergenceReport {
    pub fn diffs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.diff)
    }

    /// Differences strictly decrease, or are all exactly zero.
    pub fn monotone(&self) -> bool {
        let d: Vec<f64> = self.diffs().collect();
        d.iter().all(|&x| x == 0.0) || d.windows(2).all(|w| w[1] < w[0])
    }
}

/// `κ = sign · 2^{−k}` for `k = 4..=12`, negative unless that is invalid for ν.
pub fn default_kappa_sequence(nu: &Rational) -> Result<Vec<Rational>> {
    for sign in [-1i64, 1] {
        let seq: Vec<Rational> = (4..=12).map(|k| rat(sign, 1i64 << k)).collect();
        if seq.iter().all(|k| validate(k, nu).valid) {
            return Ok(seq);
        }
    }
    Err(Error::InvalidParams(format!(
        "no dyadic curvature sequence is valid for nu = {}",
        format_rational(nu)
    )))
}

fn max_coeff_diff(a: &BiPoly, b: &BiPoly) -> f64 {
    (a - b).max_abs_coeff()
}

/// Value at 0 of the interpolating polynomial through `(xs[i], ys[i])`.
fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p.first().copied().unwrap_or(f64::NAN)
}

fn fit_order(points: &[LimitPoint]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.diff > 0.0)
        .map(|p| (rational::to_f64(&p.kappa.abs()).ln(), p.diff.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Compares `P_{m,n}^{ν;κ}` (ladder route) with `H_{m,n}^ν` for each κ.
pub fn hermite_limit_probe(nu: &Rational, m: u32, n: u32, kappa_seq: &[Rational]) -> Result<ConvergenceReport> {
    if kappa_seq.is_empty() {
        return Err(Error::InvalidParams("empty curvature sequence".into()));
    }
    if kappa_seq.windows(2).any(|w| w[1].abs() >= w[0].abs()) {
        return Err(Error::InvalidParams(
            "curvature sequence must shrink strictly in magnitude".into(),
        ));
    }
    let hermite = complex_hermite(m, n, nu)?;
    let mut polys = Vec::with_capacity(kappa_seq.len());
    let mut points = Vec::with_capacity(kappa_seq.len());
    for kappa in kappa_seq {
        if kappa.is_zero() {
            return Err(Error::InvalidParams("curvature sequence must avoid 0".into()));
        }
        let params = SurfaceMagneticParams::new(kappa.clone(), nu.clone())?;
        let p = p_via_ladder(&params, m, n)?;
        points.push(LimitPoint {
            kappa: kappa.clone(),
            diff: max_coeff_diff(&p, &hermite),
        });
        polys.push(p);
    }

    let keys: BTreeSet<(u32, u32)> = polys
        .iter()
        .chain(std::iter::once(&hermite))
        .flat_map(|p| p.terms().map(|(i, j, _)| (i, j)))
        .collect();
    let xs: Vec<f64> = kappa_seq.iter().map(rational::to_f64).collect();
    let extrapolated_diff = keys
        .iter()
        .map(|&(i, j)| {
            let ys: Vec<f64> = polys.iter().map(|p| rational::to_f64(&p.coeff(i, j))).collect();
            (neville_at_zero(&xs, &ys) - rational::to_f64(&hermite.coeff(i, j))).abs()
        })
        .fold(0.0, f64::max);

    let mut report = ConvergenceReport {
        m,
        n,
        nu: nu.clone(),
        order: fit_order(&points),
        points,
        extrapolated_diff,
        extrapolated_match: false,
    };
    report.extrapolated_match = report.monotone()
        && extrapolated_diff <= LIMIT_TOLERANCE * (1.0 + hermite.max_abs_coeff());
    Ok(report)
}

/// `max_z |(1+κ|z|²)^{ν/κ+m} − e^{ν|z|²}|` over the sample points, per κ.
pub fn weight_limit_check(nu: &Rational, m: u32, kappa_seq: &[Rational], sample_points: &[Complex64]) -> Result<Vec<f64>> {
    let nu_f = rational::to_f64(nu);
    kappa_seq
        .iter()
        .map(|kappa| {
            if kappa.is_zero() {
                return Err(Error::InvalidParams("curvature sequence must avoid 0".into()));
            }
            let k = rational::to_f64(kappa);
            let expo = rational::to_f64(&(nu / kappa + Rational::from_integer(m.into())));
            sample_points.iter().try_fold(0.0f64, |acc, z| {
                let u = z.norm_sqr();
                if 1.0 + k * u <= 0.0 {
                    return Err(Error::Domain(format!(
                        "1 + kappa |z|^2 <= 0 at z = {z} for kappa = {}",
                        format_rational(kappa)
                    )));
                }
                let curved = (expo * (k * u).ln_1p()).exp();
                Ok(acc.max((curved - (nu_f * u).exp()).abs()))
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckEntry {
    pub m: u32,
    pub n: u32,
    pub routes_equal: bool,
    /// `false` where the mixed Rodrigues constant vanishes (sphere, `n > 2ν/κ + m`);
    /// `routes_equal` then compares ladder and geometric Rodrigues only.
    pub mixed_defined: bool,
    /// Exact ratio Jacobi / ladder as `"p/q"`, `null` when not proportional
    /// (or on the plane, where there is no Jacobi form).
    pub jacobi_ratio: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    #[serde(with = "rational::serde_str")]
    pub kappa: Rational,
    #[serde(with = "rational::serde_str")]
    pub nu: Rational,
    pub entries: Vec<CrossCheckEntry>,
}

impl CrossCheckReport {
    /// Ladder, geometric Rodrigues and mixed Rodrigues agree on every cell.
    pub fn routes_agree(&self) -> bool {
        self.entries.iter().all(|e| e.routes_equal)
    }

    /// Jacobi form is proportional everywhere and equal when `m <= n`.
    pub fn jacobi_consistent(&self) -> bool {
        if self.kappa.is_zero() {
            return true;
        }
        self.entries.iter().all(|e| match &e.jacobi_ratio {
            Some(r) => e.m > e.n || r == "1",
            None => false,
        })
    }

    pub fn passed(&self) -> bool {
        self.routes_agree() && self.jacobi_consistent()
    }

    pub fn first_failure(&self) -> Option<&CrossCheckEntry> {
        self.entries.iter().find(|e| {
            !e.routes_equal
                || (!self.kappa.is_zero()
                    && match &e.jacobi_ratio {
                        Some(r) => e.m <= e.n && r != "1",
                        None => true,
                    })
        })
    }
}

/// Computes every route on `m <= m_max`, `n <= n_max` (capped by the
/// square-integrable range on the sphere) and records agreement. On the plane
/// the ladder result is compared with `H_{m,n}^ν` instead.
pub fn route_crosscheck(params: &SurfaceMagneticParams, m_max: u32, n_max: u32) -> Result<CrossCheckReport> {
    params.check_level(m_max)?;
    let mut entries = Vec::new();
    for m in 0..=m_max {
        let top = level_spec(params, m)?.cap(n_max);
        for n in 0..=top {
            let ladder = p_via_ladder(params, m, n)?;
            let entry = if params.is_flat() {
                CrossCheckEntry {
                    m,
                    n,
                    routes_equal: ladder == complex_hermite(m, n, params.nu())?,
                    mixed_defined: true,
                    jacobi_ratio: None,
                }
            } else {
                let d = p_via(RouteLabel::RodriguesD, params, m, n)?;
                let mixed = match p_via(RouteLabel::RodriguesMixed, params, m, n) {
                    Ok(p) => Some(p),
                    Err(Error::UndefinedConstant { .. }) => None,
                    Err(e) => return Err(e),
                };
                let jac = p_via(RouteLabel::JacobiClosed, params, m, n)?;
                CrossCheckEntry {
                    m,
                    n,
                    routes_equal: ladder == d && mixed.as_ref().is_none_or(|x| *x == ladder),
                    mixed_defined: mixed.is_some(),
                    jacobi_ratio: jac.ratio_to(&ladder).map(|r| format_rational(&r)),
                }
            };
            entries.push(entry);
        }
    }
    Ok(CrossCheckReport {
        kappa: params.kappa().clone(),
        nu: params.nu().clone(),
        entries,
    })
}

/// `−1/(2(ν+κ))`: the Jacobi/ladder ratio at `(m, n) = (1, 0)`.
pub fn expected_ratio_1_0(params: &SurfaceMagneticParams) -> Rational {
    -(Rational::from_integer(2.into()) * (params.nu() + params.kappa())).recip()
}

/// `(2ν)^{m−n}`, the factor relating `H_{m,n}` and `conj(H_{n,m})`.
pub fn hermite_swap_factor(nu: &Rational, m: u32, n: u32) -> Rational {
    pow_i(&(Rational::from_integer(2.into()) * nu), m as i64 - n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn default_sequence_sign() {
        let seq = default_kappa_sequence(&int(1)).unwrap();
        assert_eq!(seq.len(), 9);
        assert_eq!(seq[0], rat(-1, 16));
        assert_eq!(seq[8], rat(-1, 4096));
    }

    #[test]
    fn one_one_difference_is_kappa() {
        let nu = int(1);
        let seq = default_kappa_sequence(&nu).unwrap();
        let r = hermite_limit_probe(&nu, 1, 1, &seq).unwrap();
        for p in &r.points {
            assert_eq!(p.diff, rational::to_f64(&p.kappa.abs()));
        }
        let order = r.order.unwrap();
        assert!((order - 1.0).abs() < 1e-12, "order {order}");
        assert!(r.extrapolated_match);
    }

    #[test]
    fn zero_level_is_exact() {
        let nu = rat(3, 2);
        let seq = default_kappa_sequence(&nu).unwrap();
        let r = hermite_limit_probe(&nu, 0, 3, &seq).unwrap();
        assert!(r.diffs().all(|d| d == 0.0));
        assert_eq!(r.order, None);
        assert!(r.extrapolated_match);
    }

    #[test]
    fn one_zero_difference() {
        // P − H = 2κ z̄
        let nu = int(1);
        let seq = default_kappa_sequence(&nu).unwrap();
        let r = hermite_limit_probe(&nu, 1, 0, &seq).unwrap();
        for p in &r.points {
            assert_eq!(p.diff, 2.0 * rational::to_f64(&p.kappa.abs()));
        }
    }

    #[test]
    fn rejects_bad_sequences() {
        let nu = int(1);
        assert!(hermite_limit_probe(&nu, 1, 1, &[rat(-1, 8), rat(-1, 4)]).is_err());
        assert!(hermite_limit_probe(&nu, 1, 1, &[]).is_err());
        assert!(hermite_limit_probe(&int(1), 1, 1, &[rat(3, 1)]).is_err());
    }

    #[test]
    fn weight_limit() {
        let nu = int(1);
        let seq: Vec<Rational> = (4..=12).map(|k| rat(1, 1 << k)).collect();
        let zero = weight_limit_check(&nu, 0, &seq, &[Complex64::new(0.0, 0.0)]).unwrap();
        assert!(zero.iter().all(|&e| e == 0.0));
        let pts = [Complex64::new(0.5, 0.0), Complex64::new(0.0, -0.5), Complex64::from_polar(0.5, 1.0)];
        for m in [0, 3] {
            let errs = weight_limit_check(&nu, m, &seq, &pts).unwrap();
            assert!(errs.windows(2).all(|w| w[1] < w[0]), "m = {m}: {errs:?}");
        }
        let bad = weight_limit_check(&nu, 0, &[int(-1)], &[Complex64::new(2.0, 0.0)]);
        assert!(matches!(bad, Err(Error::Domain(_))));
    }

    #[test]
    fn crosscheck_small() {
        let p = SurfaceMagneticParams::new(int(-1), int(4)).unwrap();
        let r = route_crosscheck(&p, 3, 4).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        let e10 = r.entries.iter().find(|e| e.m == 1 && e.n == 0).unwrap();
        assert_eq!(e10.jacobi_ratio.as_deref(), Some(format_rational(&expected_ratio_1_0(&p)).as_str()));
        let e00 = &r.entries[0];
        assert_eq!((e00.m, e00.n, e00.jacobi_ratio.as_deref()), (0, 0, Some("1")));
    }

    #[test]
    fn crosscheck_plane() {
        let p = SurfaceMagneticParams::new(int(0), int(1)).unwrap();
        let r = route_crosscheck(&p, 3, 3).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn crosscheck_level_bound() {
        let p = SurfaceMagneticParams::new(int(-1), int(3)).unwrap();
        assert!(matches!(route_crosscheck(&p, 3, 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn neville_recovers_polynomial() {
        let xs = [0.5, 0.25, 0.125, 0.0625];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 2.0 * x + x * x * x).collect();
        assert!((neville_at_zero(&xs, &ys) - 3.0).abs() < 1e-12);
    }
}
