use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// How many Landau levels carry square-integrable eigenfunctions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LevelBound {
    /// Levels `0..=max_m` (curvature < 0).
    Finite { max_m: u32 },
    Unbounded,
}

impl LevelBound {
    pub fn contains(&self, m: u32) -> bool {
        match *self {
            LevelBound::Finite { max_m } => m <= max_m,
            LevelBound::Unbounded => true,
        }
    }

    /// Largest admissible level not exceeding `cap`.
    pub fn cap(&self, cap: u32) -> u32 {
        match *self {
            LevelBound::Finite { max_m } => max_m.min(cap),
            LevelBound::Unbounded => cap,
        }
    }
}

/// Outcome of checking a `(κ, ν)` pair; invalid is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub valid: bool,
    pub bound: LevelBound,
    pub reason: Option<String>,
}

/// Validity of `(κ, ν)` and the level bound `0 <= m < (2ν+κ)/(|κ|-κ)`.
pub fn validate(kappa: &Rational, nu: &Rational) -> Validation {
    let two = Rational::from_integer(2.into());
    let bound = if kappa.is_negative() {
        // greatest integer strictly below (2ν+κ)/(-2κ)
        let b = (&two * nu + kappa) / (-&two * kappa);
        let max = b.ceil() - Rational::one();
        if max.is_negative() {
            LevelBound::Finite { max_m: 0 }
        } else {
            LevelBound::Finite {
                max_m: rational::as_integer(&max).unwrap_or(i64::MAX).min(u32::MAX as i64) as u32,
            }
        }
    } else {
        LevelBound::Unbounded
    };
    let reason = if !nu.is_positive() {
        Some(format!("nu = {} must be positive", rational::format_rational(nu)))
    } else if !kappa.is_positive() && !(&two * nu + kappa).is_positive() {
        Some("2 nu + kappa must be positive for kappa <= 0".to_string())
    } else if kappa.is_positive() {
        let ratio = &two * nu / kappa;
        if ratio.is_integer() && ratio.is_positive() {
            None
        } else {
            Some(format!(
                "2 nu / kappa = {} must be a positive integer for kappa > 0",
                rational::format_rational(&ratio)
            ))
        }
    } else {
        None
    };
    Validation {
        valid: reason.is_none(),
        bound,
        reason,
    }
}

/// Curvature `κ` and field strength `ν` of a valid surface/field pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceMagneticParams {
    kappa: Rational,
    nu: Rational,
}

impl SurfaceMagneticParams {
    pub fn new(kappa: Rational, nu: Rational) -> Result<Self> {
        let v = validate(&kappa, &nu);
        match v.reason {
            None => Ok(Self { kappa, nu }),
            Some(r) => Err(Error::InvalidParams(r)),
        }
    }

    /// Skips validation. Used to probe what happens past the admissible range.
    pub fn new_unchecked(kappa: Rational, nu: Rational) -> Self {
        Self { kappa, nu }
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    pub fn is_flat(&self) -> bool {
        self.kappa.is_zero()
    }

    /// `ν/κ`; `None` on the plane.
    pub fn nu_over_kappa(&self) -> Option<Rational> {
        (!self.kappa.is_zero()).then(|| &self.nu / &self.kappa)
    }

    pub fn level_bound(&self) -> LevelBound {
        validate(&self.kappa, &self.nu).bound
    }

    /// Same curvature, different field strength.
    pub fn with_nu(&self, nu: Rational) -> Self {
        Self {
            kappa: self.kappa.clone(),
            nu,
        }
    }

    pub fn check_level(&self, m: u32) -> Result<()> {
        if self.level_bound().contains(m) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!(
                "level m = {m} exceeds the Landau bound for {self}"
            )))
        }
    }
}

impl fmt::Display for SurfaceMagneticParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kappa = {}, nu = {}",
            rational::format_rational(&self.kappa),
            rational::format_rational(&self.nu)
        )
    }
}
