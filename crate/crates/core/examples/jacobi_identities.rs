//! Jacobi polynomials: the contiguous relation, the derivative rule and the
//! sign of the second-order equation.

use twisted_landau::polynomials::{jacobi, jacobi_contiguous_check, jacobi_derivative_check, jacobi_ode_residual};
use twisted_landau::prelude::*;

fn main() {
    let (a, b) = (rat(1, 2), rat(-2, 1));
    for l in 0..=3 {
        println!("P_{l}^(1/2, -2)(x) coefficients: {:?}", jacobi(l, &a, &b).coeffs().iter().map(format_rational).collect::<Vec<_>>());
    }
    let ok = (0..=10).all(|j| jacobi_contiguous_check(j, &a, &b) && jacobi_derivative_check(j, &a, &b));
    println!("contiguous and derivative identities, j <= 10: {ok}");

    for l in 0..=4 {
        let r = jacobi_ode_residual(l, &a, &b);
        println!("l = {l}: (1-x^2) form zero? {:<5}  (x^2-1) form zero? {}", r.one_minus_x2.is_zero(), r.corrected.is_zero());
    }
}
