//! Builds P_{m,n} at κ = −1/2, ν = 3 by every route and checks they agree.
//!
//!     cargo run --example routes

use twisted_landau::polynomials::{p_via, RouteLabel};
use twisted_landau::prelude::*;

fn main() -> Result<()> {
    let params = SurfaceMagneticParams::new(rat(-1, 2), rat(3, 1))?;
    println!("{params}, levels {:?}", params.level_bound());

    for (m, n) in [(1, 1), (2, 0), (2, 3), (3, 2)] {
        println!("\nP_{{{m},{n}}}");
        let reference = p_via(RouteLabel::Ladder, &params, m, n)?;
        for route in RouteLabel::ALL {
            let p = p_via(route, &params, m, n)?;
            // Jacobi form is only proportional when m > n.
            let note = match p.ratio_to(&reference) {
                Some(r) if r == rat(1, 1) => "same".to_string(),
                Some(r) => format!("{} x ladder", format_rational(&r)),
                None => "DIFFERENT".to_string(),
            };
            println!("  {:<7} {p}   [{note}]", route.to_string());
        }
    }
    Ok(())
}
