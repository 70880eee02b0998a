//! Disc polynomials (κ = −1) and their complex Hermite counterparts.

use twisted_landau::polynomials::{complex_hermite, disc_polynomial};
use twisted_landau::prelude::*;

fn main() -> Result<()> {
    let nu = rat(5, 2);
    for m in 0..=1 {
        for n in 0..=3 {
            println!("P_{{{m},{n}}}^(5/2) = {}", disc_polynomial(m, n, &nu)?);
        }
    }
    println!();
    for (m, n) in [(2, 1), (1, 2)] {
        println!("H_{{{m},{n}}} = {}", complex_hermite(m, n, &nu)?);
    }
    Ok(())
}
