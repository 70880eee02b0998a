//! Samples |Φ_{m,n}|² on a polar grid of the disc, e.g. for plotting.
//!
//!     cargo run --example eval_grid > phi.csv

use num_complex::Complex64;
use twisted_landau::prelude::*;
use twisted_landau::spectral::eigenfunction;

fn main() -> Result<()> {
    let params = SurfaceMagneticParams::new(rat(-1, 1), rat(3, 1))?;
    let phi = eigenfunction(&params, 2, 3)?;
    eprintln!("Phi_(2,3) = {phi}");

    println!("r,theta,abs2");
    for i in 0..20 {
        let r = 0.95 * i as f64 / 19.0;
        for k in 0..8 {
            let theta = std::f64::consts::TAU * k as f64 / 8.0;
            let v = phi.eval(Complex64::from_polar(r, theta))?;
            println!("{r:.4},{theta:.4},{:.10e}", v.norm_sqr());
        }
    }
    Ok(())
}
