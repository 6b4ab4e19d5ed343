//! Writes a surface mesh in hyperboloid coordinates as CSV on stdout.

use std::io::{BufWriter, Write};

use hypercmc::lorentz::fiber_samples;
use hypercmc::profile::surface_grid;
use hypercmc::{integrate_profile, ShapeParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = ShapeParams::checked(2, -1.1, -0.6835660909345689)?;
    let curve = integrate_profile(&params, 5, 200)?;
    let fibres = fiber_samples(2, 9, 1.0)?;
    let grid = surface_grid(&curve, &fibres)?;
    let mut out = BufWriter::new(std::io::stdout().lock());
    writeln!(out, "t,fiber,x1,x2,x3,x4")?;
    for (s, row) in curve.samples.iter().zip(&grid) {
        for (j, p) in row.iter().enumerate() {
            let c = p.coords();
            writeln!(out, "{},{j},{},{},{},{}", s.t, c[0], c[1], c[2], c[3])?;
        }
    }
    out.flush()?;
    Ok(())
}
