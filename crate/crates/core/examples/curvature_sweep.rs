//! Bound table over a range of `k`, written as CSV.
//!
//! ```text
//! cargo run --example curvature_sweep [chi] [k_min] [k_max] [steps] > sweep.csv
//! ```

use std::io;

use isodia::cli::parse_k;
use isodia::sweep::{sweep, write_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let chi: i32 = args.first().map_or(Ok(2), |s| s.parse())?;
    let k_min = parse_k(args.get(1).map_or("-5", String::as_str))?;
    let k_max = parse_k(args.get(2).map_or("9", String::as_str))?;
    let steps: usize = args.get(3).map_or(Ok(141), |s| s.parse())?;

    let rows = sweep(chi, k_min, k_max, steps)?;
    write_csv(&rows, io::stdout().lock())?;

    let crossover = rows.windows(2).find(|w| w[0].best_name != w[1].best_name);
    if let Some(w) = crossover {
        eprintln!("best bound changes from {} to {} near k = {}", w[0].best_name, w[1].best_name, w[1].k);
    }
    Ok(())
}
