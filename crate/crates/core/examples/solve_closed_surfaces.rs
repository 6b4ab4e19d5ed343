//! The threshold `H₀` for `n = 2` and closing constants `C*` at `H = -1.1`.

use hypercmc::shooting::SolveReport;
use hypercmc::{find_h0, solve_c, Result, SolveMode, WindingTarget};

fn main() -> Result<()> {
    match find_h0(2, (-10.0, -1.0), 1e-12)? {
        SolveReport::Solved(o) => println!("H0 = {}", o.parameter_value),
        other => println!("H0: {other:?}"),
    }
    for (k, m, mode) in [(1, 1, SolveMode::EmbeddedOnly), (1, 5, SolveMode::AnyClosed), (1, 10, SolveMode::AnyClosed)] {
        let report = solve_c(2, -1.1, WindingTarget::new(k, m)?, mode, 1e-13)?;
        match report {
            SolveReport::Solved(o) => {
                println!("k={k} m={m}: C* = {} ({:?})", o.parameter_value, o.classification.expect("C* is classified"))
            }
            SolveReport::NoRoot(r) => {
                println!("k={k} m={m}: no crossing, K ranges over [{}, {}]", r.min_value, r.max_value)
            }
            SolveReport::PreconditionFailed(r) => println!("k={k} m={m}: {}", r.reason),
        }
    }
    Ok(())
}
