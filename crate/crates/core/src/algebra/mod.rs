//! Exact scalars, polynomials and the weighted-function class.

pub mod bipoly;
pub mod params;
pub mod rational;
pub mod unipoly;
pub mod weighted;

pub use bipoly::{BiPoly, Var};
pub use params::{validate, LevelBound, SurfaceMagneticParams, Validation};
pub use rational::{format_rational, parse_rational, pochhammer, rat, Rational};
pub use unipoly::UniPoly;
pub use weighted::{Weight, WeightedFn};
