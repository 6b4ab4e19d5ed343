//! Landmarks of the radial potential and the turning points of `g`.

use hypercmc::{landmarks, Result};

fn main() -> Result<()> {
    for n in 2..=5 {
        let lm = landmarks(n, -1.5, Some(-0.5))?;
        let roots = lm.roots.expect("C was given");
        println!(
            "n={n} H=-1.5: v0={:.6} C0={:.6} C~={:.6} lambda(v0)={:.6} t1={:.6} t2={:.6}",
            lm.v0, lm.c0, lm.c_tilde, lm.lambda_at_v0, roots.t1, roots.t2
        );
    }
    Ok(())
}
