//! Jacobi and complex Hermite polynomials, and `P_{m,n}^{ν;κ}` by four routes.

pub mod hermite;
pub mod jacobi;
pub mod routes;

pub use hermite::complex_hermite;
pub use jacobi::{jacobi, jacobi_contiguous_check, jacobi_derivative_check, jacobi_ode_residual, OdeResiduals};
pub use routes::{
    disc_polynomial, ladder_eigenfunction, ladder_polynomial, p_via, p_via_d, p_via_jacobi,
    p_via_ladder, p_via_mixed_rodrigues, plane_polynomial, rodrigues_constant, RouteLabel,
};
