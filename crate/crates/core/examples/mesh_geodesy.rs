//! Area, intrinsic diameter and radius, and angle-defect curvature
//! measured on triangulations of the model surfaces.
//!
//! ```text
//! cargo run --release --example mesh_geodesy
//! ```

use std::f64::consts::PI;
use std::time::Instant;

use isodia::geodesy::{angle_defect_curvature, geodesy_report};
use isodia::surfaces::SurfaceModel;

fn main() -> isodia::error::Result<()> {
    let cases = [
        (SurfaceModel::RoundSphere { a: 1.0 }, 3),
        (SurfaceModel::RoundProjectivePlane { a: 1.0 }, 3),
        (SurfaceModel::FlatTorus { p: 1.0, q: 1.0 }, 32),
        (SurfaceModel::FlatKleinBottle { p: 2.0, q: 1.0 }, 24),
        (SurfaceModel::DoubledFlatDisk { a: 1.0 }, 8),
    ];
    for (model, res) in cases {
        let exact = model.summary()?;
        let mesh = model.sample_mesh(res)?;
        let start = Instant::now();
        let rep = geodesy_report(&mesh)?;
        let defects = angle_defect_curvature(&mesh)?.total();
        println!("{model}, resolution {res}, {} vertices ({:.2?})", mesh.vertex_count(), start.elapsed());
        println!("  area {:.6} (exact {:.6})", rep.area, exact.area);
        println!("  D    {:.6} (exact {:.6})", rep.diameter_est, exact.diameter);
        println!("  R    {:.6} (exact {:.6})", rep.radius_est, exact.radius);
        println!("  sum of defects / 2pi = {:.12}, chi = {}", defects / (2.0 * PI), rep.chi);
        println!("  min curvature estimate {:.6}", rep.curvature_lower_est);
    }

    // finer Steiner sets shorten graph paths toward the polyhedral distance
    let mesh = SurfaceModel::RoundSphere { a: 1.0 }.sample_mesh(2)?;
    for level in 0..=3 {
        let rep = geodesy_report(&mesh.clone().with_steiner_level(level))?;
        println!("icosphere L2, steiner level {level}: D = {:.6}", rep.diameter_est);
    }
    Ok(())
}
