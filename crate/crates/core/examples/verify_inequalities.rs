//! The cross-check suite: analytic checks by default, mesh pipelines with
//! `full`.
//!
//! ```text
//! cargo run --release --example verify_inequalities [quick|full]
//! ```

use std::process::ExitCode;

use isodia::verify::{icosphere_area_convergence, run, Level};

fn main() -> ExitCode {
    let full = std::env::args().nth(1).as_deref() == Some("full");
    let report = run(if full { Level::Full } else { Level::Quick });
    println!("{report}");

    if full {
        if let Ok(conv) = icosphere_area_convergence() {
            for (l, e) in conv.levels.iter().zip(&conv.rel_errors) {
                println!("icosphere L{l}: relative area error {e:.3e}");
            }
            println!("fitted C = {:.6}", conv.fitted_c);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
