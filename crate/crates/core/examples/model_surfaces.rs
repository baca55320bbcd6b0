//! Exact area, diameter and radius of the model surfaces, and how far each
//! sits below its best bound.
//!
//! ```text
//! cargo run --example model_surfaces
//! ```

use isodia::bounds::report;
use isodia::surfaces::{flat_quotient_extent, SurfaceModel};

fn main() -> isodia::error::Result<()> {
    println!("{:<34} {:>10} {:>10} {:>10} {:>10} {:>10}  best", "model", "V", "D", "R", "V/D^2", "bound");
    for model in SurfaceModel::catalog() {
        let s = model.summary()?;
        let (chi, k, rho) = model.normalized_k()?;
        let rep = report(chi, k, Some(rho))?;
        println!(
            "{:<34} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}  {}{}",
            model.to_string(),
            s.area,
            s.diameter,
            s.radius,
            s.area_ratio(),
            rep.best,
            rep.best_name,
            if model.is_smooth() { "" } else { " (non-smooth)" }
        );
    }

    println!("\nflat Klein bottles, radius against (4p^2 + q^2)/(8p):");
    for p in [1.0, 1.25, 1.5, 2.0, 3.0] {
        let ext = flat_quotient_extent(p, 1.0, true);
        println!(
            "  p = {p:<5} D = {:.12}  R = {:.12}  ({:.12})",
            ext.diameter,
            ext.radius,
            (4.0 * p * p + 1.0) / (8.0 * p)
        );
    }
    Ok(())
}
