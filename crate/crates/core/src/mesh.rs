//! Closed triangle meshes and OFF input/output.
//!
//! A mesh carries display positions for its vertices and, optionally, an
//! isometric chart per triangle. Surfaces that have no isometric embedding
//! in R³ (flat tori, flat Klein bottles, round projective planes) are
//! represented by their charts; every metric quantity (edge lengths,
//! angles, areas) is read from the chart when one is present.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

pub type Point = [f64; 3];

#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
    /// Corner coordinates of each triangle in a local isometric chart.
    pub charts: Option<Vec<[Point; 3]>>,
    /// Each edge gets `2^level − 1` evenly spaced Steiner points for
    /// shortest-path queries.
    pub steiner_level: u32,
}

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: Point) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn cross(a: Point, b: Point) -> Point {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn lerp(a: Point, b: Point, t: f64) -> Point {
    [
        a[0] + t * (b[0] - a[0]),
        a[1] + t * (b[1] - a[1]),
        a[2] + t * (b[2] - a[2]),
    ]
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl TriangleMesh {
    /// Mesh whose metric is induced by the vertex positions.
    pub fn new(vertices: Vec<Point>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let mesh = TriangleMesh {
            vertices,
            triangles,
            charts: None,
            steiner_level: 1,
        };
        mesh.validate()?;
        Ok(mesh)
    }

    /// Mesh whose metric comes from per-triangle charts.
    pub fn with_charts(vertices: Vec<Point>, triangles: Vec<[usize; 3]>, charts: Vec<[Point; 3]>) -> Result<Self> {
        if charts.len() != triangles.len() {
            return Err(Error::InvalidMesh(format!(
                "{} charts for {} triangles",
                charts.len(),
                triangles.len()
            )));
        }
        let mesh = TriangleMesh {
            vertices,
            triangles,
            charts: Some(charts),
            steiner_level: 1,
        };
        mesh.validate()?;
        Ok(mesh)
    }

    pub fn with_steiner_level(mut self, level: u32) -> Self {
        self.steiner_level = level;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Corner coordinates of triangle `t` in its chart (or in R³).
    pub fn corners(&self, t: usize) -> [Point; 3] {
        match &self.charts {
            Some(charts) => charts[t],
            None => self.triangles[t].map(|v| self.vertices[v]),
        }
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.corners(t);
        0.5 * norm(cross(sub(b, a), sub(c, a)))
    }

    /// Interior angles at the three corners of triangle `t`.
    pub fn triangle_angles(&self, t: usize) -> [f64; 3] {
        let p = self.corners(t);
        std::array::from_fn(|i| {
            let u = sub(p[(i + 1) % 3], p[i]);
            let v = sub(p[(i + 2) % 3], p[i]);
            norm(cross(u, v)).atan2(dot(u, v))
        })
    }

    /// Unique undirected edges, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |i| edge_key(t[i], t[(i + 1) % 3])))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// `V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges().len() as i64 + self.triangles.len() as i64
    }

    /// Longest edge length, used as the length scale of the mesh.
    pub fn scale(&self) -> f64 {
        (0..self.triangles.len())
            .flat_map(|t| {
                let p = self.corners(t);
                (0..3).map(move |i| norm(sub(p[(i + 1) % 3], p[i])))
            })
            .fold(0.0, f64::max)
    }

    /// Checks that the mesh is a closed 2-manifold without degenerate
    /// triangles and with consistent chart edge lengths.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if self.triangles.is_empty() {
            return Err(Error::InvalidMesh("no triangles".into()));
        }
        if self.vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidMesh("non-finite vertex coordinate".into()));
        }
        let mut used = vec![false; n];
        let mut edge_uses: HashMap<(usize, usize), Vec<(usize, f64)>> = HashMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            if tri.iter().any(|&v| v >= n) {
                return Err(Error::InvalidMesh(format!("triangle {t} indexes past {n} vertices")));
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(Error::InvalidMesh(format!("triangle {t} repeats a vertex")));
            }
            let p = self.corners(t);
            for i in 0..3 {
                used[tri[i]] = true;
                let len = norm(sub(p[(i + 1) % 3], p[i]));
                edge_uses
                    .entry(edge_key(tri[i], tri[(i + 1) % 3]))
                    .or_default()
                    .push((t, len));
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(Error::InvalidMesh(format!("vertex {v} is not used by any triangle")));
        }
        for (&(a, b), uses) in &edge_uses {
            if uses.len() != 2 {
                return Err(Error::InvalidMesh(format!(
                    "edge ({a}, {b}) is shared by {} triangles",
                    uses.len()
                )));
            }
            let (l0, l1) = (uses[0].1, uses[1].1);
            if (l0 - l1).abs() > 1e-9 * l0.max(l1) {
                return Err(Error::InvalidMesh(format!(
                    "edge ({a}, {b}) has chart lengths {l0} and {l1}"
                )));
            }
        }
        let scale = self.scale();
        for t in 0..self.triangles.len() {
            if self.triangle_area(t) <= 1e-12 * scale * scale {
                return Err(Error::InvalidMesh(format!("triangle {t} is degenerate")));
            }
        }
        Ok(())
    }

    /// Checks that `V − E + F` equals the expected Euler number.
    pub fn check_euler(&self, chi: i64) -> Result<()> {
        let got = self.euler_characteristic();
        if got != chi {
            return Err(Error::InvalidMesh(format!("Euler number {got}, expected {chi}")));
        }
        Ok(())
    }

    /// OFF text: `OFF`, counts, one vertex per line, faces as `3 i j k`.
    ///
    /// Charts are not part of the format; a mesh read back from OFF has the
    /// metric induced by its vertex positions.
    pub fn to_off(&self) -> String {
        let mut out = String::new();
        out.push_str("OFF\n");
        let _ = writeln!(out, "{} {} {}", self.vertices.len(), self.triangles.len(), self.edges().len());
        for v in &self.vertices {
            let _ = writeln!(out, "{} {} {}", v[0], v[1], v[2]);
        }
        for t in &self.triangles {
            let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
        }
        out
    }

    pub fn write_off(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_off())?;
        Ok(())
    }

    /// Parses OFF text. Polygonal faces are fan-triangulated; `#` starts a
    /// comment.
    pub fn from_off(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace);
        let perr = |m: &str| Error::Parse(format!("OFF: {m}"));
        match tokens.next() {
            Some("OFF") => {}
            other => return Err(perr(&format!("expected header OFF, found {other:?}"))),
        }
        let mut count = |what: &str| -> Result<usize> {
            tokens
                .next()
                .ok_or_else(|| perr(&format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|e| perr(&format!("{what}: {e}")))
        };
        let nv = count("vertex count")?;
        let nf = count("face count")?;
        let _ne = count("edge count")?;
        let mut real = |what: &str| -> Result<f64> {
            tokens
                .next()
                .ok_or_else(|| perr(&format!("missing {what}")))?
                .parse::<f64>()
                .map_err(|e| perr(&format!("{what}: {e}")))
        };
        let mut vertices = Vec::with_capacity(nv);
        for _ in 0..nv {
            vertices.push([real("x")?, real("y")?, real("z")?]);
        }
        let mut triangles = Vec::with_capacity(nf);
        for f in 0..nf {
            let deg = real("face degree")? as usize;
            if deg < 3 {
                return Err(perr(&format!("face {f} has degree {deg}")));
            }
            let mut idx = Vec::with_capacity(deg);
            for _ in 0..deg {
                let i = real("face index")?;
                if i < 0.0 || i.fract() != 0.0 {
                    return Err(perr(&format!("face {f} has index {i}")));
                }
                idx.push(i as usize);
            }
            for j in 1..deg - 1 {
                triangles.push([idx[0], idx[j], idx[j + 1]]);
            }
        }
        TriangleMesh::new(vertices, triangles)
    }

    pub fn read_off(path: &Path) -> Result<Self> {
        TriangleMesh::from_off(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn tetrahedron(side: f64) -> TriangleMesh {
        let s = side / 8f64.sqrt();
        let v = vec![[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]];
        TriangleMesh::new(v, vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]]).unwrap()
    }

    #[test]
    fn tetrahedron_is_a_sphere() {
        let t = tetrahedron(1.0);
        assert_eq!(t.euler_characteristic(), 2);
        assert!((t.scale() - 1.0).abs() < 1e-12);
        for a in t.triangle_angles(0) {
            assert!((a - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_open_surface() {
        let v = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        let err = TriangleMesh::new(v, vec![[0, 1, 2]]).unwrap_err();
        assert!(err.to_string().contains("shared by 1"));
    }

    #[test]
    fn rejects_degenerate_triangle() {
        let mut t = tetrahedron(1.0);
        t.vertices[3] = t.vertices[0];
        t.vertices[3][0] += 1e-14;
        assert!(t.validate().is_err());
    }

    #[test]
    fn rejects_bad_indices() {
        let t = tetrahedron(1.0);
        let mut tris = t.triangles.clone();
        tris[0] = [0, 1, 9];
        assert!(TriangleMesh::new(t.vertices.clone(), tris).is_err());
        let mut tris = t.triangles.clone();
        tris[0] = [0, 0, 2];
        assert!(TriangleMesh::new(t.vertices, tris).is_err());
    }

    #[test]
    fn off_round_trip() {
        let t = tetrahedron(2.0);
        let text = t.to_off();
        assert!(text.starts_with("OFF\n4 4 6\n"));
        assert!(text.lines().last().unwrap().starts_with("3 "));
        let back = TriangleMesh::from_off(&text).unwrap();
        assert_eq!(back.vertices, t.vertices);
        assert_eq!(back.triangles, t.triangles);
    }

    #[test]
    fn off_parses_comments_and_quads() {
        let text = "OFF # cube\n8 6 12\n\
            0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 1\n1 0 1\n1 1 1\n0 1 1\n\
            4 0 3 2 1\n4 4 5 6 7\n4 0 1 5 4\n4 1 2 6 5\n4 2 3 7 6\n4 3 0 4 7\n";
        let m = TriangleMesh::from_off(text).unwrap();
        assert_eq!(m.triangles.len(), 12);
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn off_rejects_garbage() {
        assert!(TriangleMesh::from_off("PLY\n").is_err());
        assert!(TriangleMesh::from_off("OFF\n3 1 0\n0 0 0\n1 0 0\n").is_err());
        assert!(TriangleMesh::from_off("OFF\n1 1 0\n0 0 x\n").is_err());
    }
}
