//! Ball areas `v_κ(r)`, their double primitive `ṽ_κ(r)` and the
//! normalized invariants `w`, `λ_χ`, `α_χ`.
//!
//! ```text
//! cargo run --example comparison_functions
//! ```

use std::f64::consts::PI;

use isodia::spaceform::{normalized_invariants, v_kappa, v_tilde, w_of_k, K_MAX};

fn main() -> isodia::error::Result<()> {
    println!("{:>8} {:>6} {:>22} {:>22}", "kappa", "r", "v_kappa", "v_tilde");
    for kappa in [-4.0, -1.0, -1e-9, 0.0, 1e-9, 1.0, 4.0] {
        for r in [0.25, 1.0, 1.5] {
            if kappa > 0.0 && r * f64::sqrt(kappa) > PI {
                continue;
            }
            println!("{kappa:>8} {r:>6} {:>22.16} {:>22.16}", v_kappa(kappa, r)?, v_tilde(kappa, r)?);
        }
    }

    // the series and closed-form branches meet without a visible seam
    for k in [-2e-4, -1e-4, -5e-5, 0.0, 5e-5, 1e-4, 2e-4] {
        println!("w({k:+e}) = {:.17}", w_of_k(k)?);
    }

    for (chi, k) in [(2, 0.0), (2, K_MAX), (1, K_MAX / 4.0), (0, -1.0), (-2, -10.0)] {
        let inv = normalized_invariants(chi, k)?;
        println!(
            "chi = {chi:>2}, k = {k:>10.6}: w = {:.12}, lambda = {:+.3e}, alpha = {:.12}",
            inv.w, inv.lambda_chi, inv.alpha_chi
        );
    }
    Ok(())
}
