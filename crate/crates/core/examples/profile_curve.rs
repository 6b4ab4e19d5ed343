//! Integrates the five-period profile at `H = -1.1` and reports its closure.

use hypercmc::polygon::{closure_gap, self_intersections, winding_number, SWEEP_TOL};
use hypercmc::profile::profile_alpha;
use hypercmc::{integrate_profile, Result, ShapeParams};

fn main() -> Result<()> {
    let params = ShapeParams::checked(2, -1.1, -0.6835660909345689)?;
    let curve = integrate_profile(&params, 5, 512)?;
    let alpha = profile_alpha(&curve);
    println!("T = {} (ODE {}), theta(T) = {}", curve.period_t, curve.ode_period, curve.k_value);
    println!("closure gap {:.3e}, winding {:.9}", closure_gap(&alpha), winding_number(&alpha));
    println!("{} self-intersecting segment pairs", self_intersections(&alpha, true, SWEEP_TOL).len());
    for s in curve.samples.iter().step_by(256) {
        println!("t={:.6} g={:.9} r={:.9} theta={:.9}", s.t, s.g, s.r, s.theta);
    }
    Ok(())
}
