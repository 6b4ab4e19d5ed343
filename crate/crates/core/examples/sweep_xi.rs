//! `ξₙ(H)` on `[-50, -1]` for `n = 3, 4, 5`, against the embedding level `-2π`.

use hypercmc::{xi, Result};

fn main() -> Result<()> {
    for n in 3..=5 {
        let values: Vec<(f64, f64)> = (0..=49)
            .map(|i| -50.0 + f64::from(i))
            .chain([-1.0])
            .map(|h| xi(n, h).map(|r| (h, r.value)))
            .collect::<Result<_>>()?;
        let (lo_h, lo) = values.iter().copied().fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        println!("n={n}: min xi = {lo:.12} at H = {lo_h}, above -2pi: {}", lo > -2.0 * std::f64::consts::PI);
    }
    Ok(())
}
