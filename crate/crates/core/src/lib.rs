//! Exact construction of Landau-level eigenfunctions of the twisted Laplacian
//! on the disc (κ < 0), the plane (κ = 0) and the sphere chart (κ > 0).
//!
//! Everything is done over the rationals. Eigenfunctions are produced by
//! applying ladder operators to lowest-level generators; the resulting
//! two-variable polynomials are recomputed by three further routes (a
//! Rodrigues formula in the geometric operator `(1+κ|z|²)²∂_z`, a mixed
//! Rodrigues formula, and a Jacobi closed form) and cross-checked. Inner
//! products come out as exact rational multiples of π, so orthogonality and
//! square-integrability are decided exactly.
//!
//! ```
//! use twisted_landau::prelude::*;
//!
//! let params = SurfaceMagneticParams::new(rat(-1, 1), rat(3, 1)).unwrap();
//! let p = polynomials::p_via_ladder(&params, 1, 1).unwrap();
//! assert_eq!(p.to_string(), "5 z z̄ − 1");
//! ```

pub mod algebra;
pub mod cli;
pub mod error;
pub mod limits;
pub mod operators;
pub mod polynomials;
pub mod probes;
pub mod spectral;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::algebra::{
        format_rational, parse_rational, rat, BiPoly, LevelBound, Rational, SurfaceMagneticParams,
        UniPoly, Var, Weight, WeightedFn,
    };
    pub use crate::error::{Error, Result};
    pub use crate::{limits, operators, polynomials, spectral};
}
