//! Jacobi polynomials with arbitrary rational parameters.
//!
//! `P_l^{(a,b)}(x) = Σ_k C(l+a, l−k) C(l+b, k) ((x−1)/2)^k ((x+1)/2)^{l−k}`,
//! with generalized binomial coefficients. The sum is polynomial in `a` and
//! `b`, so negative and fractional parameters need no special casing.

use num_traits::One;

use crate::algebra::rational::{binomial, int, rat};
use crate::algebra::{Rational, UniPoly};

pub fn jacobi(l: u32, a: &Rational, b: &Rational) -> UniPoly {
    let lr = Rational::from_integer(l.into());
    let minus = UniPoly::linear(rat(-1, 2), rat(1, 2)); // (x-1)/2
    let plus = UniPoly::linear(rat(1, 2), rat(1, 2)); // (x+1)/2
    let mut acc = UniPoly::zero();
    for k in 0..=l {
        let c = binomial(&(&lr + a), l - k) * binomial(&(&lr + b), k);
        let term = &minus.pow(k) * &plus.pow(l - k);
        acc = &acc + &term.scale(&c);
    }
    acc
}

/// `(x²−1) P_j^{(a,b)}' + [(a−b)+(a+b)x] P_j^{(a,b)} = 2(j+1) P_{j+1}^{(a−1,b−1)}`
pub fn jacobi_contiguous_check(j: u32, a: &Rational, b: &Rational) -> bool {
    let p = jacobi(j, a, b);
    let x2m1 = UniPoly::new(vec![int(-1), int(0), int(1)]);
    let lin = UniPoly::linear(a - b, a + b);
    let lhs = &(&x2m1 * &p.derivative()) + &(&lin * &p);
    let rhs = jacobi(j + 1, &(a - Rational::one()), &(b - Rational::one()))
        .scale(&Rational::from_integer((2 * (j + 1)).into()));
    lhs == rhs
}

/// `d/dx P_{j+1}^{(a−1,b−1)} = (j+a+b)/2 · P_j^{(a,b)}`
pub fn jacobi_derivative_check(j: u32, a: &Rational, b: &Rational) -> bool {
    let lhs = jacobi(j + 1, &(a - Rational::one()), &(b - Rational::one())).derivative();
    let c = (Rational::from_integer(j.into()) + a + b) / int(2);
    lhs == jacobi(j, a, b).scale(&c)
}

/// Residuals of the second-order Jacobi equation for `y = P_l^{(α,β)}` under
/// two sign conventions for the leading term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeResiduals {
    /// `(1−x²) y'' + [(α−β)+(α+β+2)x] y' − l(l+α+β+1) y`
    pub one_minus_x2: UniPoly,
    /// `(x²−1) y'' + [(α−β)+(α+β+2)x] y' − l(l+α+β+1) y`; vanishes identically.
    pub corrected: UniPoly,
}

pub fn jacobi_ode_residual(l: u32, alpha: &Rational, beta: &Rational) -> OdeResiduals {
    let y = jacobi(l, alpha, beta);
    let d1 = y.derivative();
    let d2 = d1.derivative();
    let lr = Rational::from_integer(l.into());
    let first = &UniPoly::linear(alpha - beta, alpha + beta + int(2)) * &d1;
    let zeroth = y.scale(&(&lr * (&lr + alpha + beta + int(1))));
    let x2m1 = UniPoly::new(vec![int(-1), int(0), int(1)]);
    let lead = &x2m1 * &d2;
    let tail = &first - &zeroth;
    OdeResiduals {
        one_minus_x2: &tail - &lead,
        corrected: &tail + &lead,
    }
}
