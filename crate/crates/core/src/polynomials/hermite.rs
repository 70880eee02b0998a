use num_traits::Zero;

use crate::algebra::rational::{int, pow_i};
use crate::algebra::{BiPoly, Rational, Var, WeightedFn};
use crate::error::{Error, Result};

/// Complex Hermite polynomial
/// `H_{m,n}^ν = (−1)^{m+n} (2ν)^{−n} e^{2ν|z|²} ∂_z^m ∂_z̄^n e^{−2ν|z|²}`,
/// computed symbolically inside the Gaussian-weight class.
pub fn complex_hermite(m: u32, n: u32, nu: &Rational) -> Result<BiPoly> {
    if nu <= &Rational::zero() {
        return Err(Error::InvalidParams(format!(
            "complex Hermite needs nu > 0, got {}",
            crate::algebra::format_rational(nu)
        )));
    }
    let two_nu = int(2) * nu;
    let gauss = WeightedFn::exp(-two_nu.clone(), BiPoly::one());
    let d = gauss.diff_n(Var::ZBar, n).diff_n(Var::Z, m);
    let sign = pow_i(&int(-1), (m + n) as i64);
    let c = sign / pow_i(&two_nu, n as i64);
    d.mul_weight(&two_nu).scale(&c).into_polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn small_cases() {
        let nu = rat(3, 4);
        let two_nu = int(2) * &nu;
        assert_eq!(complex_hermite(0, 0, &nu).unwrap(), BiPoly::one());
        assert_eq!(
            complex_hermite(1, 1, &nu).unwrap(),
            BiPoly::from_terms([((1, 1), two_nu.clone()), ((0, 0), int(-1))])
        );
        assert_eq!(complex_hermite(1, 0, &nu).unwrap(), BiPoly::zbar().scale(&two_nu));
        assert_eq!(complex_hermite(0, 3, &nu).unwrap(), BiPoly::monomial(3, 0, int(1)));
    }

    #[test]
    fn rejects_nonpositive_nu() {
        assert!(complex_hermite(1, 1, &int(0)).is_err());
    }

    #[test]
    fn conjugate_symmetry() {
        // H_{m,n} = (2ν)^{m−n} conj(H_{n,m})
        let nu = rat(5, 2);
        let two_nu = int(2) * &nu;
        for m in 0..=5u32 {
            for n in 0..=5u32 {
                let lhs = complex_hermite(m, n, &nu).unwrap();
                let rhs = complex_hermite(n, m, &nu)
                    .unwrap()
                    .conj()
                    .scale(&pow_i(&two_nu, m as i64 - n as i64));
                assert_eq!(lhs, rhs, "(m, n) = ({m}, {n})");
            }
        }
    }
}
