//! Landau levels, exact norms and the L² boundary on the disc and the sphere.

use twisted_landau::polynomials::ladder_eigenfunction;
use twisted_landau::prelude::*;
use twisted_landau::spectral::{gram_matrix, norm_sq, spectrum};

fn main() -> Result<()> {
    let disc = SurfaceMagneticParams::new(rat(-1, 1), rat(3, 1))?;
    let sphere = SurfaceMagneticParams::new(rat(1, 1), rat(1, 1))?;

    for p in [&disc, &sphere] {
        println!("{p}");
        for row in spectrum(p, 4)? {
            let dim = row.dimension.map_or("inf".to_string(), |d| d.to_string());
            println!("  m = {}  E = {}  dim = {dim}", row.m, format_rational(&row.eigenvalue));
        }
    }

    println!("\nGram matrix at {disc}:");
    let entries = [(0, 0), (0, 1), (1, 1), (2, 4)];
    for row in gram_matrix(&disc, &entries)? {
        println!("  {}", row.iter().map(|c| format!("{c:>8}")).collect::<Vec<_>>().join(" "));
    }

    // Past the bound the ladder still runs. At m = 3, E_3 = E_2 and it lands back in level 2.
    println!("\nnorms of the ladder output at m = 0..3, n = 2:");
    for m in 0..=3 {
        let phi = ladder_eigenfunction(&disc, m, 2)?;
        println!("  m = {m}: {}", norm_sq(&phi)?);
    }
    println!("\nsphere, m = 1:");
    for n in 0..=6 {
        println!("  n = {n}: {}", norm_sq(&ladder_eigenfunction(&sphere, 1, n)?)?);
    }
    Ok(())
}
