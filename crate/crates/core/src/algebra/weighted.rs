//! Weighted functions `w(|z|^2) · p(z, z̄)`.
//!
//! The weight is either a power `(1 + κ|z|^2)^s` (κ ≠ 0) or a Gaussian
//! `e^{c|z|^2}` (the flat case). Both families are closed under `∂_z`, `∂_z̄`
//! and multiplication by polynomials, which is all the ladder calculus needs.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::bipoly::{BiPoly, Var};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Weight {
    /// `(1 + κ|z|^2)^s`, κ ≠ 0.
    Power { kappa: Rational, s: Rational },
    /// `e^{c|z|^2}`.
    Exp { c: Rational },
}

impl Weight {
    pub fn power(kappa: Rational, s: Rational) -> Self {
        assert!(!kappa.is_zero(), "power weight needs nonzero curvature");
        Weight::Power { kappa, s }
    }

    pub fn exp(c: Rational) -> Self {
        Weight::Exp { c }
    }

    /// Curvature of the family: κ for power weights, 0 for Gaussians.
    pub fn kappa(&self) -> Rational {
        match self {
            Weight::Power { kappa, .. } => kappa.clone(),
            Weight::Exp { .. } => Rational::zero(),
        }
    }

    /// The exponent `s` (power) or rate `c` (Gaussian).
    pub fn exponent(&self) -> &Rational {
        match self {
            Weight::Power { s, .. } => s,
            Weight::Exp { c } => c,
        }
    }

    fn with_exponent(&self, e: Rational) -> Self {
        match self {
            Weight::Power { kappa, .. } => Weight::Power {
                kappa: kappa.clone(),
                s: e,
            },
            Weight::Exp { .. } => Weight::Exp { c: e },
        }
    }

    fn same_family(&self, other: &Weight) -> bool {
        match (self, other) {
            (Weight::Power { kappa: a, .. }, Weight::Power { kappa: b, .. }) => a == b,
            (Weight::Exp { .. }, Weight::Exp { .. }) => true,
            _ => false,
        }
    }

    /// Value of the weight at a point.
    pub fn eval(&self, z: Complex64) -> Result<f64> {
        let r2 = z.norm_sqr();
        match self {
            Weight::Power { kappa, s } => {
                let h = 1.0 + rational::to_f64(kappa) * r2;
                if h <= 0.0 {
                    return Err(Error::Domain(format!(
                        "1 + kappa |z|^2 = {h} at z = {z} (kappa = {})",
                        rational::format_rational(kappa)
                    )));
                }
                Ok(match rational::as_integer(s) {
                    Some(k) if k.abs() < i32::MAX as i64 => h.powi(k as i32),
                    _ => h.powf(rational::to_f64(s)),
                })
            }
            Weight::Exp { c } => Ok((rational::to_f64(c) * r2).exp()),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Power { kappa, s } => write!(
                f,
                "(1 + {}|z|²)^({})",
                rational::format_rational(kappa),
                rational::format_rational(s)
            ),
            Weight::Exp { c } => write!(f, "exp({}|z|²)", rational::format_rational(c)),
        }
    }
}

/// `weight · poly`, always kept canonical: for a power weight the polynomial
/// carries no factor of `1 + κ z z̄`, and the zero function has `s = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedFn {
    weight: Weight,
    poly: BiPoly,
}

impl WeightedFn {
    pub fn new(weight: Weight, poly: BiPoly) -> Self {
        Self { weight, poly }.canonicalize()
    }

    /// `(1 + κ|z|^2)^s · poly`
    pub fn power(kappa: Rational, s: Rational, poly: BiPoly) -> Self {
        Self::new(Weight::power(kappa, s), poly)
    }

    /// `e^{c|z|^2} · poly`
    pub fn exp(c: Rational, poly: BiPoly) -> Self {
        Self::new(Weight::exp(c), poly)
    }

    /// Weight family for curvature κ with exponent (κ ≠ 0) or rate (κ = 0) `e`.
    pub fn for_curvature(kappa: &Rational, e: Rational, poly: BiPoly) -> Self {
        if kappa.is_zero() {
            Self::exp(e, poly)
        } else {
            Self::power(kappa.clone(), e, poly)
        }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    pub fn kappa(&self) -> Rational {
        self.weight.kappa()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The zero function of the same family.
    pub fn zero_like(&self) -> Self {
        Self::new(self.weight.clone(), BiPoly::zero())
    }

    /// Pulls every factor `1 + κ z z̄` of the polynomial into the exponent.
    pub fn canonicalize(mut self) -> Self {
        if let Weight::Power { kappa, s } = &mut self.weight {
            if self.poly.is_zero() {
                *s = Rational::zero();
                return self;
            }
            while let Some(q) = self.poly.div_h(kappa) {
                self.poly = q;
                *s += Rational::one();
            }
        }
        self
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.weight.clone(), self.poly.scale(r))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn mul_poly(&self, p: &BiPoly) -> Self {
        Self::new(self.weight.clone(), &self.poly * p)
    }

    /// Multiplies by `(1 + κ|z|^2)^ds` (power) or `e^{ds|z|^2}` (Gaussian).
    pub fn mul_weight(&self, ds: &Rational) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let e = self.weight.exponent() + ds;
        Self::new(self.weight.with_exponent(e), self.poly.clone())
    }

    fn check_family(&self, other: &Self) -> Result<()> {
        if self.weight.same_family(&other.weight) {
            Ok(())
        } else {
            Err(Error::WeightMismatch(format!(
                "{} vs {}",
                self.weight, other.weight
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_family(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let (e1, e2) = (self.weight.exponent(), other.weight.exponent());
        match &self.weight {
            Weight::Exp { c } => {
                if e1 != e2 {
                    return Err(Error::IncompatibleExponents(e1.clone(), e2.clone()));
                }
                Ok(Self::exp(c.clone(), &self.poly + &other.poly))
            }
            Weight::Power { kappa, .. } => {
                let diff = e1 - e2;
                let k = rational::as_integer(&diff)
                    .ok_or_else(|| Error::IncompatibleExponents(e1.clone(), e2.clone()))?;
                // bring both to the smaller exponent
                let (base, p, q) = if k >= 0 {
                    (e2.clone(), self.poly.mul_h_pow(kappa, k as u32), other.poly.clone())
                } else {
                    (e1.clone(), self.poly.clone(), other.poly.mul_h_pow(kappa, (-k) as u32))
                };
                Ok(Self::power(kappa.clone(), base, &p + &q))
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Exact partial derivative, staying in the class:
    /// `∂_z[(1+κ z z̄)^s p] = (1+κ z z̄)^{s-1} (sκ z̄ p + (1+κ z z̄) ∂_z p)`,
    /// `∂_z[e^{c z z̄} p] = e^{c z z̄} (c z̄ p + ∂_z p)`.
    pub fn diff(&self, var: Var) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let other = match var {
            Var::Z => BiPoly::zbar(),
            Var::ZBar => BiPoly::z(),
        };
        let dp = self.poly.diff(var);
        match &self.weight {
            Weight::Power { kappa, s } => {
                let chain = (&other * &self.poly).scale(&(s * kappa));
                let poly = &chain + &dp.mul_h_pow(kappa, 1);
                Self::power(kappa.clone(), s - Rational::one(), poly)
            }
            Weight::Exp { c } => {
                let chain = (&other * &self.poly).scale(c);
                Self::exp(c.clone(), &chain + &dp)
            }
        }
    }

    pub fn diff_n(&self, var: Var, n: u32) -> Self {
        (0..n).fold(self.clone(), |f, _| f.diff(var))
    }

    /// Complex conjugate (the weight is real).
    pub fn conj(&self) -> Self {
        Self {
            weight: self.weight.clone(),
            poly: self.poly.conj(),
        }
    }

    /// Equality of canonical forms. Comparing different weight families is an error.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_family(other)?;
        Ok(self == other)
    }

    /// `Some(r)` when `self = r · other` exactly with `r` a nonzero rational.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.weight != other.weight {
            return None;
        }
        self.poly.ratio_to(&other.poly)
    }

    /// Floating-point value at `z`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let w = self.weight.eval(z)?;
        Ok(self.poly.eval(z) * w)
    }

    /// Strips a weight that has cancelled: a nonnegative integer power of
    /// `1 + κ z z̄` is multiplied out, a Gaussian must have rate zero.
    pub fn into_polynomial(self) -> Result<BiPoly> {
        if self.is_zero() {
            return Ok(BiPoly::zero());
        }
        match &self.weight {
            Weight::Power { kappa, s } => match rational::as_integer(s) {
                Some(k) if k >= 0 => Ok(self.poly.mul_h_pow(kappa, k as u32)),
                _ => Err(Error::NonCancellingWeight(rational::format_rational(s))),
            },
            Weight::Exp { c } if c.is_zero() => Ok(self.poly),
            Weight::Exp { c } => Err(Error::NonCancellingWeight(format!(
                "exp({}|z|^2)",
                rational::format_rational(c)
            ))),
        }
    }
}

impl fmt::Display for WeightedFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} · ({})", self.weight, self.poly)
    }
}
