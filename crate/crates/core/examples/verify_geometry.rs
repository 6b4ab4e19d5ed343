//! Checks the immersion of a closed surface: hyperboloid membership, the
//! Gauss map and finite-difference principal curvatures.

use hypercmc::curvature::{verify_cmc_at, DEFAULT_FD_STEP};
use hypercmc::lorentz::{fiber_samples, gauss_map, immerse_state};
use hypercmc::{integrate_profile, Result, ShapeParams};

fn main() -> Result<()> {
    let params = ShapeParams::checked(3, -1.5, -0.5)?;
    let curve = integrate_profile(&params, 1, 128)?;
    let fibres = fiber_samples(3, 4, 1.0)?;
    let mut worst = 0.0f64;
    for s in &curve.samples {
        let state = curve.sample_state(s);
        for y in &fibres {
            let phi = immerse_state(3, &state, y)?;
            let nu = gauss_map(3, &state, y)?;
            worst = worst.max((phi.dot(&phi) + 1.0).abs()).max((nu.dot(&nu) - 1.0).abs()).max(nu.dot(&phi).abs());
        }
    }
    println!("largest deviation of the Lorentz identities: {worst:.3e}");
    for (i, y) in fibres.iter().enumerate() {
        let t = 0.2 * (i + 1) as f64 * curve.period_t;
        if let Some(e) = verify_cmc_at(&curve, y, t, DEFAULT_FD_STEP)?.estimate() {
            println!("t={t:.4}: lambda {:.8} (exact {:.8}), mu {:.8} (exact {:.8}), H {:.8}", e.lambda_est, e.lambda_exact, e.mu_est, e.mu_exact, e.h_est);
        }
    }
    Ok(())
}
