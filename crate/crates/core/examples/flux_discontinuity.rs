//! The flux `K(C, H)` on both sides of `C̃`: it jumps from `ξ - π` to
//! `ξ + π`, so the branch below `C̃` never reaches `-2π`.

use hypercmc::potential::c_tilde;
use hypercmc::{flux_k, xi, Result, ShapeParams};

fn main() -> Result<()> {
    let (n, h) = (2, -1.1);
    let ct = c_tilde(n, h);
    let x = xi(n, h)?.value;
    println!("C~ = {ct}, xi = {x}, xi - pi = {}, xi + pi = {}", x - std::f64::consts::PI, x + std::f64::consts::PI);
    for rel in [1e-2, 1e-4, 1e-6, 1e-8] {
        let below = flux_k(&ShapeParams::checked(n, h, ct * (1.0 + rel))?)?.value;
        let above = flux_k(&ShapeParams::checked(n, h, ct * (1.0 - rel))?)?.value;
        println!("|C - C~|/|C~| = {rel:e}: K below = {below:.10}, K above = {above:.10}");
    }
    Ok(())
}
