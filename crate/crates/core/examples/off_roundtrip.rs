//! Export a mesh as OFF, read it back and measure it.
//!
//! OFF stores display positions only. For the sphere they are the true
//! geometry; the flat quotients lose their flat charts on export and are
//! measured on the immersed surface instead.
//!
//! ```text
//! cargo run --example off_roundtrip [out.off]
//! ```

use std::path::PathBuf;

use isodia::geodesy::geodesy_report;
use isodia::mesh::TriangleMesh;
use isodia::surfaces::SurfaceModel;

fn main() -> isodia::error::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("isodia_sphere.off"));

    let mesh = SurfaceModel::RoundSphere { a: 1.0 }.sample_mesh(3)?;
    mesh.write_off(&path)?;
    let back = TriangleMesh::read_off(&path)?;
    assert_eq!(back.vertices, mesh.vertices);
    assert_eq!(back.triangles, mesh.triangles);
    println!("wrote and reread {} ({} vertices)", path.display(), back.vertex_count());
    println!("{}", geodesy_report(&back)?.to_json()?);

    let torus = SurfaceModel::FlatTorus { p: 1.0, q: 1.0 }.sample_mesh(16)?;
    let flat = geodesy_report(&torus)?;
    let immersed = geodesy_report(&TriangleMesh::from_off(&torus.to_off())?)?;
    println!("flat torus area {:.6}, immersed display area {:.6}", flat.area, immersed.area);
    Ok(())
}
