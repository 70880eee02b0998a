//! Checks the ladder-operator algebra on seeded random weighted functions.

use twisted_landau::operators::{verify_d_power, verify_factorization, verify_intertwining, verify_ladder_bridge};
use twisted_landau::prelude::*;
use twisted_landau::probes::random_probes;

fn main() -> Result<()> {
    let params = SurfaceMagneticParams::new(rat(-1, 1), rat(3, 1))?;
    let probes = random_probes(params.kappa(), 100, 7);
    println!("first probe: {}", probes[0]);

    let mut reports = vec![verify_factorization(&params, &probes), verify_intertwining(&params, &probes)];
    for m in 0..=4 {
        reports.push(verify_d_power(m, params.kappa(), &probes));
    }
    for m in 0..=2 {
        reports.push(verify_ladder_bridge(&params, m, &probes));
    }
    for r in &reports {
        println!("{:<32} {} probes  {}", r.identity, r.probe_count, if r.all_passed { "ok" } else { "FAILED" });
    }
    Ok(())
}
