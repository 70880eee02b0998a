//! Landau levels, eigenfunctions and exact `L²(dμ_κ)` inner products.
//!
//! Inner products reduce to radial moments `∫ |z|^{2j} (1+κ|z|²)^{−σ} dλ`,
//! which are Beta integrals: rational multiples of π or divergent. Angular
//! integration kills every monomial `z^i z̄^j` with `i ≠ j`, so only the
//! "neutral" part of `f·conj(g)` contributes.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::rational::{self, factorial, format_rational, int, pochhammer, pow_i};
use crate::algebra::{validate, BiPoly, Rational, SurfaceMagneticParams, UniPoly, Validation, Weight, WeightedFn};
use crate::error::{Error, Result};
use crate::operators::twisted_laplacian;
use crate::polynomials::{complex_hermite, jacobi, ladder_eigenfunction};

/// An exact value `q·π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiRational {
    pub q: Rational,
}

impl PiRational {
    pub fn new(q: Rational) -> Self {
        Self { q }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.q) * std::f64::consts::PI
    }
}

impl std::ops::Add for PiRational {
    type Output = PiRational;
    fn add(self, rhs: PiRational) -> PiRational {
        PiRational::new(self.q + rhs.q)
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "0");
        }
        let num = self.q.numer();
        let den = self.q.denom();
        let lead = if num == &1.into() {
            String::new()
        } else if num == &(-1).into() {
            "-".to_string()
        } else {
            num.to_string()
        };
        if den == &1.into() {
            write!(f, "{lead}π")
        } else {
            write!(f, "{lead}π/{den}")
        }
    }
}

/// A convergent integral (exact π-multiple) or a divergent one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MomentResult {
    Finite(PiRational),
    Divergent,
}

impl MomentResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, MomentResult::Finite(_))
    }

    pub fn value(&self) -> Option<&PiRational> {
        match self {
            MomentResult::Finite(v) => Some(v),
            MomentResult::Divergent => None,
        }
    }

    fn finite(q: Rational) -> Self {
        MomentResult::Finite(PiRational::new(q))
    }
}

impl fmt::Display for MomentResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentResult::Finite(v) => write!(f, "{v}"),
            MomentResult::Divergent => write!(f, "divergent"),
        }
    }
}

/// `{"pi_multiple": "p/q"}` or `{"divergent": true}`.
impl Serialize for MomentResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            MomentResult::Finite(v) => map.serialize_entry("pi_multiple", &format_rational(&v.q))?,
            MomentResult::Divergent => map.serialize_entry("divergent", &true)?,
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AllowedN {
    AllNaturals,
    /// `0..=n_max`
    FiniteRange { n_max: u32 },
}

/// Which `n` give square-integrable eigenfunctions at level `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelSpec {
    pub m: u32,
    pub allowed: AllowedN,
}

impl LevelSpec {
    pub fn contains(&self, n: u32) -> bool {
        match self.allowed {
            AllowedN::AllNaturals => true,
            AllowedN::FiniteRange { n_max } => n <= n_max,
        }
    }

    /// `None` for an infinite-dimensional level.
    pub fn dimension(&self) -> Option<u64> {
        match self.allowed {
            AllowedN::AllNaturals => None,
            AllowedN::FiniteRange { n_max } => Some(n_max as u64 + 1),
        }
    }

    pub fn cap(&self, cap: u32) -> u32 {
        match self.allowed {
            AllowedN::AllNaturals => cap,
            AllowedN::FiniteRange { n_max } => n_max.min(cap),
        }
    }
}

pub fn validate_params(kappa: &Rational, nu: &Rational) -> Validation {
    validate(kappa, nu)
}

/// `E_{κ,m}^ν = ν(2m+1) + m(m+1)κ`.
pub fn eigenvalue(params: &SurfaceMagneticParams, m: u32) -> Result<Rational> {
    params.check_level(m)?;
    Ok(eigenvalue_formula(params.kappa(), params.nu(), m))
}

fn eigenvalue_formula(kappa: &Rational, nu: &Rational, m: u32) -> Rational {
    let mr = Rational::from_integer(m.into());
    nu * (int(2) * &mr + int(1)) + &mr * (&mr + int(1)) * kappa
}

/// `n_max = 2ν/κ + 2m` on the sphere chart, unrestricted otherwise. Beyond
/// that `Φ_{m,n}` has divergent norm.
pub fn level_spec(params: &SurfaceMagneticParams, m: u32) -> Result<LevelSpec> {
    params.check_level(m)?;
    let allowed = match params.nu_over_kappa() {
        Some(t) if params.kappa().is_positive() => {
            let n_max = int(2) * (t + Rational::from_integer(m.into()));
            let n_max = rational::as_integer(&n_max)
                .filter(|v| *v >= 0 && *v <= u32::MAX as i64)
                .ok_or_else(|| Error::InvalidParams("2 nu / kappa must be a positive integer".into()))?;
            AllowedN::FiniteRange { n_max: n_max as u32 }
        }
        _ => AllowedN::AllNaturals,
    };
    Ok(LevelSpec { m, allowed })
}

/// `Φ_{m,n}`: the ladder chain applied to `(1+κ|z|²)^{−(ν/κ+m)} z^n`; on the
/// plane `e^{−ν|z|²} H_{m,n}^ν`.
pub fn eigenfunction(params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<WeightedFn> {
    let spec = level_spec(params, m)?;
    if !spec.contains(n) {
        return Err(Error::OutOfRange(format!(
            "n = {n} is not square-integrable at level m = {m} for {params}"
        )));
    }
    if params.is_flat() {
        let h = complex_hermite(m, n, params.nu())?;
        Ok(WeightedFn::exp(-params.nu().clone(), h))
    } else {
        ladder_eigenfunction(params, m, n)
    }
}

/// `𝔏_κ^ν Φ_{m,n} = E_{κ,m}^ν Φ_{m,n}` as an exact identity.
pub fn verify_eigen(params: &SurfaceMagneticParams, m: u32, n: u32) -> Result<bool> {
    let phi = eigenfunction(params, m, n)?;
    let e = eigenvalue(params, m)?;
    Ok(twisted_laplacian(params, &phi)? == phi.scale(&e) && !phi.is_zero())
}

/// `B(j+1, c) = j! / (c (c+1) ⋯ (c+j))`, for `c > 0`.
fn beta_int_first(j: u32, c: &Rational) -> Rational {
    factorial(j) / pochhammer(c, j + 1)
}

/// `∫_{M_κ} |z|^{2j} (1+κ|z|²)^{−σ} dλ` for κ ≠ 0, and `∫_ℂ |z|^{2j} e^{−σ|z|²} dλ`
/// for κ = 0.
pub fn radial_moment(kappa: &Rational, j: u32, sigma: &Rational) -> MomentResult {
    let jj = j as i64;
    if kappa.is_negative() {
        let c = Rational::one() - sigma;
        if !c.is_positive() {
            return MomentResult::Divergent;
        }
        MomentResult::finite(pow_i(&-kappa.clone(), -jj - 1) * beta_int_first(j, &c))
    } else if kappa.is_positive() {
        let c = sigma - Rational::from_integer((jj + 1).into());
        if !c.is_positive() {
            return MomentResult::Divergent;
        }
        MomentResult::finite(pow_i(kappa, -jj - 1) * beta_int_first(j, &c))
    } else {
        if !sigma.is_positive() {
            return MomentResult::Divergent;
        }
        MomentResult::finite(factorial(j) / pow_i(sigma, jj + 1))
    }
}

/// `⟨f, g⟩ = ∫ f ḡ (1+κ|z|²)^{−2} dλ`, exactly.
pub fn inner_product(f: &WeightedFn, g: &WeightedFn) -> Result<MomentResult> {
    let sigma = match (f.weight(), g.weight()) {
        (Weight::Power { kappa: k1, s: s1 }, Weight::Power { kappa: k2, s: s2 }) if k1 == k2 => {
            int(2) - s1 - s2
        }
        (Weight::Exp { c: c1 }, Weight::Exp { c: c2 }) => -(c1 + c2),
        (a, b) => return Err(Error::WeightMismatch(format!("{a} vs {b}"))),
    };
    let kappa = f.kappa();
    let product = f.poly() * &g.poly().conj();
    let mut total = Rational::zero();
    for (i, j, c) in product.terms() {
        if i != j {
            continue;
        }
        match radial_moment(&kappa, i, &sigma) {
            MomentResult::Finite(v) => total += c * v.q,
            MomentResult::Divergent => return Ok(MomentResult::Divergent),
        }
    }
    Ok(MomentResult::finite(total))
}

pub fn norm_sq(f: &WeightedFn) -> Result<MomentResult> {
    inner_product(f, f)
}

/// Exact Gram matrix of `Φ_{m,n}` over `entries`.
pub fn gram_matrix(params: &SurfaceMagneticParams, entries: &[(u32, u32)]) -> Result<Vec<Vec<MomentResult>>> {
    let fns = entries
        .iter()
        .map(|&(m, n)| eigenfunction(params, m, n))
        .collect::<Result<Vec<_>>>()?;
    fns.iter()
        .map(|f| fns.iter().map(|g| inner_product(f, g)).collect())
        .collect()
}

/// Jacobi-basis element
/// `(1+κ|z|²)^{−(ν/κ+m)} z^p z̄^q P_{m−q}^{(p+q, −2(ν/κ+m)−1)}(1+2κ|z|²)`, with
/// `q ≤ m` and at least one of `p, q` zero.
pub fn prop_basis_element(params: &SurfaceMagneticParams, m: u32, p: u32, q: u32) -> Result<WeightedFn> {
    if q > m || (p != 0 && q != 0) {
        return Err(Error::OutOfRange(format!(
            "basis element needs q <= m and p q = 0, got (m, p, q) = ({m}, {p}, {q})"
        )));
    }
    let t = params
        .nu_over_kappa()
        .ok_or_else(|| Error::Unsupported("Jacobi basis needs kappa != 0".into()))?;
    let kappa = params.kappa().clone();
    let tm = t + Rational::from_integer(m.into());
    let b = int(-2) * &tm - int(1);
    let radial = jacobi(m - q, &Rational::from_integer((p + q).into()), &b)
        .compose(&UniPoly::linear(int(1), int(2) * &kappa))
        .in_modulus_sq();
    let poly = &BiPoly::monomial(p, q, Rational::one()) * &radial;
    Ok(WeightedFn::power(kappa, -tm, poly))
}

/// The `n` whose eigenfunction the basis element `(m, p, q)` should match:
/// `n = m + p` when `q = 0`, `n = m − q` when `p = 0`.
pub fn basis_index(m: u32, p: u32, q: u32) -> u32 {
    if q == 0 {
        m + p
    } else {
        m - q
    }
}

/// One row of the discrete spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumRow {
    pub m: u32,
    pub eigenvalue: Rational,
    /// `None` when the level is infinite-dimensional.
    pub dimension: Option<u64>,
}

/// Levels `0..=min(cap, bound)`.
pub fn spectrum(params: &SurfaceMagneticParams, cap: u32) -> Result<Vec<SpectrumRow>> {
    let top = params.level_bound().cap(cap);
    (0..=top)
        .map(|m| {
            Ok(SpectrumRow {
                m,
                eigenvalue: eigenvalue(params, m)?,
                dimension: level_spec(params, m)?.dimension(),
            })
        })
        .collect()
}
