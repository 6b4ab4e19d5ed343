//! The threshold flux `ξₙ(H)` at a few mean curvatures.

use hypercmc::{xi, Result};

fn main() -> Result<()> {
    println!("{:>8} {:>20} {:>20} {:>20} {:>20}", "H", "n=2", "n=3", "n=4", "n=5");
    for h in [-1.0, -1.1, -2.0, -10.0, -100.0] {
        let row: Vec<String> = (2..=5)
            .map(|n| xi(n, h).map_or_else(|_| "undefined".to_owned(), |r| format!("{:.15}", r.value)))
            .collect();
        println!("{h:>8} {:>20} {:>20} {:>20} {:>20}", row[0], row[1], row[2], row[3]);
    }
    Ok(())
}
