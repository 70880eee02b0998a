//! The first-order ladder operators, the twisted Laplacian, the geometric
//! operator `D_κ = (1+κ|z|²)² ∂_z`, and exact checkers for the algebraic
//! relations between them.
//!
//! All operators act on [`WeightedFn`] and return canonical results. A function
//! whose weight family does not match the operator's curvature is rejected.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{BiPoly, Rational, SurfaceMagneticParams, Var, WeightedFn};
use crate::error::{Error, Result};

fn check_family(f: &WeightedFn, kappa: &Rational) -> Result<()> {
    if &f.kappa() == kappa {
        Ok(())
    } else {
        Err(Error::WeightMismatch(format!(
            "operator curvature {} applied to {}",
            crate::algebra::format_rational(kappa),
            f.weight()
        )))
    }
}

fn h(kappa: &Rational) -> BiPoly {
    BiPoly::one_plus_kappa_modsq(kappa)
}

/// `∇_α f = −(1+κ|z|²) ∂_z f + α z̄ f`
pub fn nabla(alpha: &Rational, f: &WeightedFn, kappa: &Rational) -> Result<WeightedFn> {
    check_family(f, kappa)?;
    let transport = f.diff(Var::Z).mul_poly(&h(kappa)).neg();
    let potential = f.mul_poly(&BiPoly::zbar()).scale(alpha);
    transport.add(&potential)
}

/// `∇*_α f = (1+κ|z|²) ∂_z̄ f + (α − κ) z f`
pub fn nabla_star(alpha: &Rational, f: &WeightedFn, kappa: &Rational) -> Result<WeightedFn> {
    check_family(f, kappa)?;
    let transport = f.diff(Var::ZBar).mul_poly(&h(kappa));
    let potential = f.mul_poly(&BiPoly::z()).scale(&(alpha - kappa));
    transport.add(&potential)
}

/// `−{(1+κ|z|²)² ∂_z∂_z̄ + ν(1+κ|z|²)(z∂_z − z̄∂_z̄) − ν²|z|²}` for arbitrary `(κ, ν)`.
fn laplacian_raw(kappa: &Rational, nu: &Rational, f: &WeightedFn) -> Result<WeightedFn> {
    check_family(f, kappa)?;
    let hp = h(kappa);
    let fz = f.diff(Var::Z);
    let fzb = f.diff(Var::ZBar);
    let second = fz.diff(Var::ZBar).mul_poly(&hp.pow(2));
    let rotation = fz
        .mul_poly(&BiPoly::z())
        .sub(&fzb.mul_poly(&BiPoly::zbar()))?
        .mul_poly(&hp)
        .scale(nu);
    let confinement = f.mul_poly(&BiPoly::modulus_sq()).scale(&(nu * nu));
    Ok(second.add(&rotation)?.sub(&confinement)?.neg())
}

/// The twisted Laplacian `𝔏_κ^ν` applied to `f`.
pub fn twisted_laplacian(params: &SurfaceMagneticParams, f: &WeightedFn) -> Result<WeightedFn> {
    laplacian_raw(params.kappa(), params.nu(), f)
}

/// `D_κ^m f` with `D_κ = (1+κ|z|²)² ∂_z`. Only defined on curved surfaces.
pub fn d_power(m: u32, f: &WeightedFn, kappa: &Rational) -> Result<WeightedFn> {
    if kappa.is_zero() {
        return Err(Error::Unsupported(
            "D_kappa power on the plane; use plain z-derivatives".into(),
        ));
    }
    check_family(f, kappa)?;
    let h2 = h(kappa).pow(2);
    let mut g = f.clone();
    for _ in 0..m {
        g = g.diff(Var::Z).mul_poly(&h2);
    }
    Ok(g)
}

/// `∇_{ν+κ} ∘ ∇_{ν+2κ} ∘ ⋯ ∘ ∇_{ν+mκ} f`, innermost (`∇_{ν+mκ}`) applied first.
/// On the plane every factor is `∇_ν`.
pub fn ladder_chain(params: &SurfaceMagneticParams, m: u32, f: &WeightedFn) -> Result<WeightedFn> {
    let kappa = params.kappa();
    let mut g = f.clone();
    for j in (1..=m).rev() {
        let alpha = params.nu() + kappa * Rational::from_integer(j.into());
        g = nabla(&alpha, &g, kappa)?;
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub probe: String,
    pub lhs: String,
    pub rhs: String,
}

/// Result of checking one identity on a batch of probe functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperatorReport {
    #[serde(rename = "identity")]
    pub identity: String,
    #[serde(rename = "probes")]
    pub probe_count: usize,
    #[serde(rename = "passed")]
    pub all_passed: bool,
    #[serde(rename = "failure")]
    pub first_failure: Option<Failure>,
}

impl OperatorReport {
    /// Runs `check` on every probe in order and keeps the first mismatch.
    /// `check` returns the two sides; an error from it counts as a failure.
    pub fn run<F>(identity: &str, probes: &[WeightedFn], mut check: F) -> Self
    where
        F: FnMut(&WeightedFn) -> Result<(WeightedFn, WeightedFn)>,
    {
        let mut first_failure = None;
        for (idx, probe) in probes.iter().enumerate() {
            let failure = match check(probe) {
                Ok((lhs, rhs)) if lhs == rhs => None,
                Ok((lhs, rhs)) => Some(Failure {
                    probe: format!("#{idx}: {probe}"),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                }),
                Err(e) => Some(Failure {
                    probe: format!("#{idx}: {probe}"),
                    lhs: format!("error: {e}"),
                    rhs: String::new(),
                }),
            };
            if failure.is_some() {
                first_failure = failure;
                break;
            }
        }
        OperatorReport {
            identity: identity.to_string(),
            probe_count: probes.len(),
            all_passed: first_failure.is_none(),
            first_failure,
        }
    }
}

/// `∇_{ν+κ}∇*_{ν+κ} = 𝔏_κ^ν − ν` and `∇*_{ν+κ}∇_{ν+κ} = 𝔏_κ^{ν+κ} + (ν+κ)`.
pub fn verify_factorization(params: &SurfaceMagneticParams, probes: &[WeightedFn]) -> OperatorReport {
    let (kappa, nu) = (params.kappa(), params.nu());
    let alpha = nu + kappa;
    OperatorReport::run("factorization", probes, |f| {
        let lhs = nabla(&alpha, &nabla_star(&alpha, f, kappa)?, kappa)?;
        let rhs = laplacian_raw(kappa, nu, f)?.sub(&f.scale(nu))?;
        if lhs != rhs {
            return Ok((lhs, rhs));
        }
        let lhs = nabla_star(&alpha, &nabla(&alpha, f, kappa)?, kappa)?;
        let rhs = laplacian_raw(kappa, &alpha, f)?.add(&f.scale(&alpha))?;
        Ok((lhs, rhs))
    })
}

/// `𝔏_κ^ν ∇_{ν+κ} = ∇_{ν+κ} 𝔏_κ^{ν+κ} + (2ν+κ) ∇_{ν+κ}`.
pub fn verify_intertwining(params: &SurfaceMagneticParams, probes: &[WeightedFn]) -> OperatorReport {
    let (kappa, nu) = (params.kappa(), params.nu());
    let alpha = nu + kappa;
    let shift = nu + &alpha;
    OperatorReport::run("intertwining", probes, |f| {
        let raised = nabla(&alpha, f, kappa)?;
        let lhs = laplacian_raw(kappa, nu, &raised)?;
        let rhs = nabla(&alpha, &laplacian_raw(kappa, &alpha, f)?, kappa)?.add(&raised.scale(&shift))?;
        Ok((lhs, rhs))
    })
}

/// `D_κ^m f = (1+κ|z|²)^{m+1} ∂_z^m((1+κ|z|²)^{m−1} f)`.
pub fn verify_d_power(m: u32, kappa: &Rational, probes: &[WeightedFn]) -> OperatorReport {
    let name = format!("d_power_closed_form(m={m})");
    let k = Rational::from_integer(m.into());
    OperatorReport::run(&name, probes, |f| {
        let lhs = d_power(m, f, kappa)?;
        let inner = f.mul_weight(&(&k - Rational::one()));
        let rhs = inner.diff_n(Var::Z, m).mul_weight(&(&k + Rational::one()));
        Ok((lhs, rhs))
    })
}

/// `∇_{ν+κ}∘⋯∘∇_{ν+mκ} f = (−1)^m (1+κ|z|²)^{ν/κ} D_κ^m((1+κ|z|²)^{−(ν/κ+m)} f)`.
pub fn verify_ladder_bridge(params: &SurfaceMagneticParams, m: u32, probes: &[WeightedFn]) -> OperatorReport {
    let name = format!("ladder_chain_vs_d_power(m={m})");
    let kappa = params.kappa();
    let Some(t) = params.nu_over_kappa() else {
        return OperatorReport::run(&name, probes, |_| {
            Err(Error::Unsupported("bridge identity needs kappa != 0".into()))
        });
    };
    let sign = if m % 2 == 0 { Rational::one() } else { -Rational::one() };
    let shift = &t + Rational::from_integer(m.into());
    OperatorReport::run(&name, probes, |f| {
        let lhs = ladder_chain(params, m, f)?;
        let rhs = d_power(m, &f.mul_weight(&-shift.clone()), kappa)?
            .mul_weight(&t)
            .scale(&sign);
        Ok((lhs, rhs))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::probes::random_probes;

    fn params(k: Rational, nu: Rational) -> SurfaceMagneticParams {
        SurfaceMagneticParams::new(k, nu).unwrap()
    }

    #[test]
    fn nabla_on_zero_and_generators() {
        let (k, nu) = (rat(-1, 2), int(3));
        let t = &nu / &k;
        let zero = WeightedFn::power(k.clone(), int(0), BiPoly::zero());
        assert!(nabla(&int(5), &zero, &k).unwrap().is_zero());
        assert!(nabla_star(&int(5), &zero, &k).unwrap().is_zero());

        let s = -(&t + int(1));
        let f = WeightedFn::power(k.clone(), s.clone(), BiPoly::one());
        let got = nabla(&(&nu + &k), &f, &k).unwrap();
        let coeff = int(2) * &k * (&t + int(1));
        assert_eq!(got, WeightedFn::power(k.clone(), s, BiPoly::zbar().scale(&coeff)));
    }

    #[test]
    fn nabla_flat() {
        let nu = rat(5, 3);
        let f = WeightedFn::exp(-nu.clone(), BiPoly::one());
        let got = nabla(&nu, &f, &int(0)).unwrap();
        assert_eq!(got, WeightedFn::exp(-nu.clone(), BiPoly::zbar().scale(&(int(2) * &nu))));
    }

    #[test]
    fn nabla_star_on_holomorphic_generators() {
        let k = int(-1);
        let b = int(4);
        for n in 0..3 {
            let f = WeightedFn::power(k.clone(), -(&b / &k), BiPoly::monomial(n, 0, int(1)));
            // ∇*_b leaves −κ z f behind; the shifted index b + κ annihilates
            let residual = f.mul_poly(&BiPoly::z()).scale(&-k.clone());
            assert_eq!(nabla_star(&b, &f, &k).unwrap(), residual, "n = {n}");
            assert!(nabla_star(&(&b + &k), &f, &k).unwrap().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn family_mismatch_is_rejected() {
        let f = WeightedFn::exp(int(-1), BiPoly::one());
        assert!(matches!(nabla(&int(1), &f, &int(-1)), Err(Error::WeightMismatch(_))));
        let g = WeightedFn::power(int(1), int(-2), BiPoly::one());
        assert!(matches!(nabla_star(&int(1), &g, &int(-1)), Err(Error::WeightMismatch(_))));
    }

    #[test]
    fn lowest_level_eigenvalue() {
        for (k, nu) in [(int(-1), int(3)), (int(1), rat(3, 2)), (rat(-1, 2), rat(9, 2))] {
            let p = params(k.clone(), nu.clone());
            let f = WeightedFn::power(k.clone(), -(&nu / &k), BiPoly::one());
            assert_eq!(twisted_laplacian(&p, &f).unwrap(), f.scale(&nu));
        }
        let p = params(int(0), int(2));
        let f = WeightedFn::exp(int(-2), BiPoly::one());
        assert_eq!(twisted_laplacian(&p, &f).unwrap(), f.scale(&int(2)));
    }

    #[test]
    fn d_power_steps() {
        let k = rat(-1, 3);
        let t = int(2);
        let f = WeightedFn::power(k.clone(), int(-2) * &t - int(2), BiPoly::one());
        assert_eq!(d_power(0, &f, &k).unwrap(), f);
        let expected = WeightedFn::power(
            k.clone(),
            int(-2) * &t - int(1),
            BiPoly::zbar().scale(&(-(int(2) * &t + int(2)) * &k)),
        );
        assert_eq!(d_power(1, &f, &k).unwrap(), expected);
        for g in random_probes(&k, 10, 7) {
            let twice = d_power(1, &d_power(1, &g, &k).unwrap(), &k).unwrap();
            assert_eq!(d_power(2, &g, &k).unwrap(), twice);
        }
        assert!(matches!(d_power(1, &WeightedFn::exp(int(-1), BiPoly::one()), &int(0)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn ladder_chain_order() {
        let p = params(rat(-1, 2), int(3));
        let k = p.kappa().clone();
        for f in random_probes(&k, 5, 11) {
            assert_eq!(ladder_chain(&p, 0, &f).unwrap(), f);
            let one = nabla(&(p.nu() + &k), &f, &k).unwrap();
            assert_eq!(ladder_chain(&p, 1, &f).unwrap(), one);
            let inner = nabla(&(p.nu() + int(2) * &k), &f, &k).unwrap();
            let two = nabla(&(p.nu() + &k), &inner, &k).unwrap();
            assert_eq!(ladder_chain(&p, 2, &f).unwrap(), two);
        }
    }

    #[test]
    fn factorization_on_constant_and_zero() {
        let p = params(int(-1), int(3));
        let one = WeightedFn::power(int(-1), int(0), BiPoly::one());
        let zero = one.zero_like();
        let r = verify_factorization(&p, &[one, zero]);
        assert!(r.all_passed, "{r:?}");
        assert_eq!(r.probe_count, 2);
    }

    #[test]
    fn intertwining_on_lowest_generator() {
        let p = params(rat(1, 2), int(1));
        let (k, nu) = (p.kappa().clone(), p.nu().clone());
        let alpha = &nu + &k;
        // lowest-level generator of 𝔏^{ν+κ}: (1+κ|z|²)^{-(ν+κ)/κ}
        let psi = WeightedFn::power(k.clone(), -(&alpha / &k), BiPoly::one());
        let raised = nabla(&alpha, &psi, &k).unwrap();
        let lhs = twisted_laplacian(&p, &raised).unwrap();
        assert_eq!(lhs, raised.scale(&(&alpha + int(2) * &nu + &k)));
        assert!(verify_intertwining(&p, &[psi]).all_passed);
    }

    #[test]
    fn d_power_small_cases() {
        let k = rat(2, 3);
        let probe = WeightedFn::power(k.clone(), int(0), BiPoly::monomial(2, 1, int(1)));
        for m in 0..=3 {
            let r = verify_d_power(m, &k, std::slice::from_ref(&probe));
            assert!(r.all_passed, "{r:?}");
        }
    }

    #[test]
    fn failure_is_reported() {
        let probes = vec![WeightedFn::power(int(-1), int(0), BiPoly::z())];
        let r = OperatorReport::run("bogus", &probes, |f| Ok((f.clone(), f.scale(&int(2)))));
        assert!(!r.all_passed);
        let fail = r.first_failure.unwrap();
        assert!(fail.probe.starts_with("#0"));
        let json = serde_json::to_value(OperatorReport::run("ok", &probes, |f| Ok((f.clone(), f.clone())))).unwrap();
        assert_eq!(json, serde_json::json!({"identity": "ok", "probes": 1, "passed": true, "failure": null}));
    }
}
