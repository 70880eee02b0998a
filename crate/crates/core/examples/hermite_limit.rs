//! Flat limit: P_{m,n}^{ν;κ} → H_{m,n}^ν as κ → 0⁻.

use twisted_landau::limits::{default_kappa_sequence, hermite_limit_probe};
use twisted_landau::polynomials::complex_hermite;
use twisted_landau::prelude::*;

fn main() -> Result<()> {
    let nu = rat(1, 1);
    let seq = default_kappa_sequence(&nu)?;
    for (m, n) in [(1, 1), (2, 1), (3, 3)] {
        println!("H_{{{m},{n}}} = {}", complex_hermite(m, n, &nu)?);
        let r = hermite_limit_probe(&nu, m, n, &seq)?;
        for p in &r.points {
            println!("  kappa = {:>7}  max diff = {:.6e}", format_rational(&p.kappa), p.diff);
        }
        println!("  order {:.4}, extrapolated diff {:.1e}\n", r.order.unwrap_or(f64::NAN), r.extrapolated_diff);
    }
    Ok(())
}
