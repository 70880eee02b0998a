//! The polynomials `P_{m,n}^{ν;κ}` by four independent constructions.
//!
//! The ladder construction is the reference; the other three are checked
//! against it. With `t = ν/κ` and `h = 1 + κ z z̄`:
//!
//! * ladder: `h^{t+m} ∇_{ν+κ}∘⋯∘∇_{ν+mκ}[h^{−(t+m)} z^n]`
//! * geometric Rodrigues: `(−1)^m h^{2t+m} D_κ^m(h^{−2(t+m)} z^n)`, `D_κ = h²∂_z`
//! * mixed Rodrigues: `C · h^{2(t+m)+1} ∂_z^m ∂_z̄^n h^{−2(t+m)+m+n−1}`
//! * Jacobi: `(−1)^m m! z^{n−m} P_m^{(n−m, −2(t+m)−1)}(1+2κ z z̄)` for `m ≤ n`,
//!   `(−1)^m n! z̄^{m−n} P_n^{(m−n, −2(t+m)−1)}(1+2κ z z̄)` for `m ≥ n`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use super::hermite::complex_hermite;
use super::jacobi::jacobi;
use crate::algebra::rational::{factorial, int, pochhammer, pow_i};
use crate::algebra::{BiPoly, Rational, SurfaceMagneticParams, UniPoly, Var, WeightedFn};
use crate::error::{Error, Result};
use crate::operators::{d_power, ladder_chain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RouteLabel {
    Ladder,
    RodriguesD,
    RodriguesMixed,
    JacobiClosed,
}

impl RouteLabel {
    pub const ALL: [RouteLabel; 4] = [
        RouteLabel::Ladder,
        RouteLabel::RodriguesD,
        RouteLabel::RodriguesMixed,
        RouteLabel::JacobiClosed,
    ];
}

impl fmt::Display for RouteLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RouteLabel::Ladder => "ladder",
            RouteLabel::RodriguesD => "d",
            RouteLabel::RodriguesMixed => "mixed",
            RouteLabel::JacobiClosed => "jacobi",
        })
    }
}

impl FromStr for RouteLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ladder" => Ok(RouteLabel::Ladder),
            "d" => Ok(RouteLabel::RodriguesD),
            "mixed" => Ok(RouteLabel::RodriguesMixed),
            "jacobi" => Ok(RouteLabel::JacobiClosed),
            _ => Err(Error::Parse(format!("unknown route {s:?}"))),
        }
    }
}

fn sign(k: u32) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn curvature_ratio(params: &SurfaceMagneticParams, what: &str) -> Result<Rational> {
    params
        .nu_over_kappa()
        .ok_or_else(|| Error::Unsupported(format!("{what} needs kappa != 0")))
}

fn m_rat(m: u32) -> Rational {
    Rational::from_integer(m.into())
}

/// The eigenfunction `∇_{ν+κ}∘⋯∘∇_{ν+mκ}[h^{−(t+m)} z^n]` without checking the
/// level bound. On the plane the generator is `e^{−ν|z|²} z^n` and every
/// factor is `∇_ν`.
pub fn ladder_eigenfunction(params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<WeightedFn> {
    let zn = BiPoly::monomial(n, 0, Rational::one());
    let generator = match params.nu_over_kappa() {
        Some(t) => WeightedFn::power(params.kappa().clone(), -(t + m_rat(m)), zn),
        None => WeightedFn::exp(-params.nu().clone(), zn),
    };
    ladder_chain(params, m, &generator)
}

/// Multiplies away the eigenfunction weight `h^{−(t+m)}` (or `e^{−ν|z|²}`).
fn strip_weight(params: &SurfaceMagneticParams, m: u32, f: WeightedFn) -> Result<BiPoly> {
    let lift = match params.nu_over_kappa() {
        Some(t) => t + m_rat(m),
        None => params.nu().clone(),
    };
    f.mul_weight(&lift).into_polynomial()
}

/// `P_{m,n}` via the ladder construction, ignoring the level bound.
pub fn ladder_polynomial(params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<BiPoly> {
    strip_weight(params, m, ladder_eigenfunction(params, m, n)?)
}

/// `P_{m,n}` via the ladder construction (reference route). On the plane this
/// is `e^{ν|z|²} ∇_ν^m [e^{−ν|z|²} z^n]`, the complex Hermite polynomial.
pub fn p_via_ladder(params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<BiPoly> {
    params.check_level(m)?;
    ladder_polynomial(params, m, n)
}

/// `(−1)^m h^{2t+m} D_κ^m (h^{−2(t+m)} z^n)`.
pub fn p_via_d(params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<BiPoly> {
    params.check_level(m)?;
    let t = curvature_ratio(params, "the D_kappa Rodrigues formula")?;
    let kappa = params.kappa().clone();
    let two_t = int(2) * &t;
    let f = WeightedFn::power(
        kappa.clone(),
        -(&two_t + int(2) * m_rat(m)),
        BiPoly::monomial(n, 0, Rational::one()),
    );
    let g = d_power(m, &f, &kappa)?.mul_weight(&(&two_t + m_rat(m))).scale(&sign(m));
    g.into_polynomial()
}

/// `C_{κ,ν}^{m,n} = (−1)^{m+n} Γ(A−n) / (κ^n Γ(A))` with `A = 2(t+m) − m + 1`,
/// evaluated as `(−1)^{m+n} / (κ^n (A−n)_n)`.
pub fn rodrigues_constant(params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<Rational> {
    let t = curvature_ratio(params, "the mixed Rodrigues constant")?;
    let a = int(2) * (&t + m_rat(m)) - m_rat(m) + int(1);
    let poch = pochhammer(&(a - m_rat(n)), n);
    if poch.is_zero() {
        return Err(Error::UndefinedConstant { m, n });
    }
    Ok(sign(m + n) / (pow_i(params.kappa(), n as i64) * poch))
}

/// `C · h^{2(t+m)+1} ∂_z^m ∂_z̄^n h^{−2(t+m)+m+n−1}`.
pub fn p_via_mixed_rodrigues(params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<BiPoly> {
    params.check_level(m)?;
    let t = curvature_ratio(params, "the mixed Rodrigues formula")?;
    let c = rodrigues_constant(params, m, n)?;
    let kappa = params.kappa().clone();
    let top = int(2) * (&t + m_rat(m));
    let seed = WeightedFn::power(
        kappa,
        -&top + m_rat(m) + m_rat(n) - int(1),
        BiPoly::one(),
    );
    let d = seed.diff_n(Var::ZBar, n).diff_n(Var::Z, m);
    d.mul_weight(&(top + int(1))).scale(&c).into_polynomial()
}

/// The Jacobi closed form, in the branch form whose prefactor is the monomial
/// `z^{n−m}` (m ≤ n) or `z̄^{m−n}` (m ≥ n). Agrees with the ladder route exactly
/// for `m ≤ n`; for `m > n` it is a nonzero multiple of it.
pub fn p_via_jacobi(params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<BiPoly> {
    params.check_level(m)?;
    let t = curvature_ratio(params, "the Jacobi closed form")?;
    let b = int(-2) * (&t + m_rat(m)) - int(1);
    let (degree, gap, prefactor) = if m <= n {
        (m, n - m, BiPoly::monomial(n - m, 0, Rational::one()))
    } else {
        (n, m - n, BiPoly::monomial(0, m - n, Rational::one()))
    };
    let arg = UniPoly::linear(int(1), int(2) * params.kappa());
    let radial = jacobi(degree, &m_rat(gap), &b).compose(&arg).in_modulus_sq();
    let c = sign(m) * factorial(degree);
    Ok((&prefactor * &radial).scale(&c))
}

/// Dispatches to one of the four routes.
pub fn p_via(route: RouteLabel, params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<BiPoly> {
    match route {
        RouteLabel::Ladder => p_via_ladder(params, m, n),
        RouteLabel::RodriguesD => p_via_d(params, m, n),
        RouteLabel::RodriguesMixed => p_via_mixed_rodrigues(params, m, n),
        RouteLabel::JacobiClosed => p_via_jacobi(params, m, n),
    }
}

/// `P_{m,n}^{ν;−1}`, the disc polynomials. The ladder result is cross-checked
/// against the Jacobi branch form, which must be a nonzero multiple of it.
pub fn disc_polynomial(m: u32, n: u32, nu: &Rational) -> Result<BiPoly> {
    let params = SurfaceMagneticParams::new(-Rational::one(), nu.clone())?;
    let p = p_via_ladder(&params, m, n)?;
    let j = p_via_jacobi(&params, m, n)?;
    if j.ratio_to(&p).is_none() {
        return Err(Error::CrossCheck(format!(
            "disc polynomial ({m}, {n}) is not proportional to its Jacobi form"
        )));
    }
    Ok(p)
}

/// Plane-case counterpart: the complex Hermite polynomial `H_{m,n}^ν`.
pub fn plane_polynomial(params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<BiPoly> {
    complex_hermite(m, n, params.nu())
}
