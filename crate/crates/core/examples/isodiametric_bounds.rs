//! Every bound on `V/D²` for a few `(χ, k, ρ)`, including the flat
//! constants for the sphere and the projective plane.
//!
//! ```text
//! cargo run --example isodiametric_bounds [chi] [k] [rho]
//! ```

use std::f64::consts::PI;

use isodia::bounds::{corollary_flat_constant, report, root_bound, theorem_bound};
use isodia::cli::{parse_k, render_bound_report};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if !args.is_empty() {
        let chi: i32 = args[0].parse()?;
        let k = parse_k(args.get(1).map_or("0", String::as_str))?;
        let rho = args.get(2).map(|s| s.parse()).transpose()?;
        print!("{}", render_bound_report(&report(chi, k, rho)?));
        return Ok(());
    }

    let s2 = theorem_bound(2, 0.0)?;
    let rp2 = theorem_bound(1, 0.0)?;
    println!("flat sphere:            {s2:.15}  (closed form {:.15})", corollary_flat_constant(2)?);
    println!("flat projective plane:  {rp2:.15}  (closed form {:.15})", corollary_flat_constant(1)?);
    println!("gain over 8/pi:         {:.6}", 8.0 / PI - s2);

    for (chi, k) in [(2, -1.0), (2, -10.0), (1, -1.0), (0, -1.0), (2, 3.0)] {
        let root = root_bound(chi, k)?;
        println!(
            "chi = {chi}, k = {k:>5}: theorem {:.12}, root {:.12} at r = {:.12}",
            theorem_bound(chi, k)?,
            root.value,
            root.r
        );
    }

    println!();
    print!("{}", render_bound_report(&report(2, -1.0, Some(0.75))?));
    Ok(())
}
