//! Intrinsic diameter, radius, area and discrete curvature of meshes.
//!
//! Distances are shortest paths in a graph whose nodes are the mesh
//! vertices plus `2^L − 1` Steiner points on every edge (`L` is the mesh's
//! `steiner_level`), with a straight chord between every pair of nodes on
//! the boundary of a common triangle. Every graph path is a path on the
//! surface, so graph distances never undercut the polyhedral geodesic
//! distance. Steiner sets are nested across levels, so raising `L` never
//! lengthens a distance.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{lerp, norm, sub, Point, TriangleMesh};

/// Meshes with more vertices than this are measured from
/// [`DEFAULT_SAMPLE_COUNT`] farthest-point samples instead of every vertex.
pub const ALL_SOURCES_LIMIT: usize = 5000;
pub const DEFAULT_SAMPLE_COUNT: usize = 64;

/// Which vertices act as sources for eccentricity queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sources {
    All,
    /// Farthest-point sample of this many vertices.
    Sample(usize),
}

impl Sources {
    /// Every vertex for small meshes, a farthest-point sample otherwise.
    pub fn auto(mesh: &TriangleMesh) -> Self {
        if mesh.vertex_count() <= ALL_SOURCES_LIMIT {
            Sources::All
        } else {
            Sources::Sample(DEFAULT_SAMPLE_COUNT)
        }
    }
}

/// Compressed adjacency of the Steiner-refined path graph.
#[derive(Debug, Clone)]
pub struct DistanceGraph {
    vertex_count: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
}

#[derive(Copy, Clone, PartialEq)]
struct State {
    dist: f64,
    node: u32,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl DistanceGraph {
    pub fn new(mesh: &TriangleMesh) -> Self {
        let n = mesh.vertex_count();
        let per_edge = (1usize << mesh.steiner_level) - 1;
        let edge_index: HashMap<(usize, usize), usize> =
            mesh.edges().into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        let node_count = n + edge_index.len() * per_edge;

        let mut arcs: Vec<(u32, u32, f64)> = Vec::new();
        let mut boundary: Vec<(u32, Point)> = Vec::with_capacity(3 + 3 * per_edge);
        for (t, tri) in mesh.triangles.iter().enumerate() {
            let p = mesh.corners(t);
            boundary.clear();
            for i in 0..3 {
                let (a, b) = (tri[i], tri[(i + 1) % 3]);
                boundary.push((a as u32, p[i]));
                let e = edge_index[&(a.min(b), a.max(b))];
                for j in 1..=per_edge {
                    // Steiner point j sits at j/(m+1) from the lower-indexed end.
                    let s = j as f64 / (per_edge + 1) as f64;
                    let along = if a < b { s } else { 1.0 - s };
                    let node = n + e * per_edge + (j - 1);
                    boundary.push((node as u32, lerp(p[i], p[(i + 1) % 3], along)));
                }
            }
            for u in 0..boundary.len() {
                for v in u + 1..boundary.len() {
                    let w = norm(sub(boundary[u].1, boundary[v].1));
                    arcs.push((boundary[u].0, boundary[v].0, w));
                }
            }
        }

        let mut degree = vec![0usize; node_count + 1];
        for &(u, v, _) in &arcs {
            degree[u as usize + 1] += 1;
            degree[v as usize + 1] += 1;
        }
        for i in 0..node_count {
            degree[i + 1] += degree[i];
        }
        let offsets = degree;
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[node_count]];
        let mut weights = vec![0f64; offsets[node_count]];
        for &(u, v, w) in &arcs {
            for (from, to) in [(u, v), (v, u)] {
                let slot = fill[from as usize];
                targets[slot] = to;
                weights[slot] = w;
                fill[from as usize] += 1;
            }
        }
        DistanceGraph {
            vertex_count: n,
            offsets,
            targets,
            weights,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Dijkstra from mesh vertex `source`; returns distances to the mesh
    /// vertices only.
    pub fn distances_from(&self, source: usize) -> Result<Vec<f64>> {
        if source >= self.vertex_count {
            return Err(Error::InvalidMesh(format!(
                "source {source} out of range for {} vertices",
                self.vertex_count
            )));
        }
        let mut dist = vec![f64::INFINITY; self.node_count()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(State {
            dist: 0.0,
            node: source as u32,
        });
        while let Some(State { dist: d, node }) = heap.pop() {
            let u = node as usize;
            if d > dist[u] {
                continue;
            }
            for slot in self.offsets[u]..self.offsets[u + 1] {
                let v = self.targets[slot] as usize;
                let nd = d + self.weights[slot];
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(State { dist: nd, node: v as u32 });
                }
            }
        }
        dist.truncate(self.vertex_count);
        if let Some(unreached) = dist.iter().position(|d| d.is_infinite()) {
            return Err(Error::Disconnected {
                source_vertex: source,
                unreached,
            });
        }
        Ok(dist)
    }

    /// Largest distance from `source` to any vertex.
    pub fn eccentricity(&self, source: usize) -> Result<f64> {
        Ok(self.distances_from(source)?.into_iter().fold(0.0, f64::max))
    }

    /// Eccentricities of the chosen sources, as `(vertex, eccentricity)`.
    ///
    /// Sampled sources come from farthest-point sampling started at a
    /// vertex drawn from `seed`.
    pub fn eccentricities(&self, sources: Sources, seed: u64) -> Result<Vec<(usize, f64)>> {
        match sources {
            Sources::All => (0..self.vertex_count)
                .into_par_iter()
                .map(|s| Ok((s, self.eccentricity(s)?)))
                .collect(),
            Sources::Sample(count) => self.farthest_point_sample(count, seed),
        }
    }

    fn farthest_point_sample(&self, count: usize, seed: u64) -> Result<Vec<(usize, f64)>> {
        if count == 0 {
            return Err(Error::InvalidMesh("source sample of size 0".into()));
        }
        let count = count.min(self.vertex_count);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut next = rng.gen_range(0..self.vertex_count);
        let mut nearest = vec![f64::INFINITY; self.vertex_count];
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let d = self.distances_from(next)?;
            out.push((next, d.iter().copied().fold(0.0, f64::max)));
            for (n, di) in nearest.iter_mut().zip(&d) {
                *n = n.min(*di);
            }
            // ties go to the lowest index
            next = nearest
                .iter()
                .enumerate()
                .fold((0, -1.0), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc })
                .0;
        }
        Ok(out)
    }
}

pub fn single_source_distances(mesh: &TriangleMesh, source: usize) -> Result<Vec<f64>> {
    DistanceGraph::new(mesh).distances_from(source)
}

/// Largest eccentricity over the sources. Exact for the path-graph metric
/// with [`Sources::All`]; a lower bound of it when sampled.
pub fn diameter_estimate(mesh: &TriangleMesh, sources: Sources, seed: u64) -> Result<f64> {
    let ecc = DistanceGraph::new(mesh).eccentricities(sources, seed)?;
    Ok(ecc.iter().map(|e| e.1).fold(0.0, f64::max))
}

/// Smallest eccentricity over the sources. Exact for the path-graph metric
/// with [`Sources::All`]; an upper bound of it when sampled.
pub fn radius_estimate(mesh: &TriangleMesh, sources: Sources, seed: u64) -> Result<f64> {
    let ecc = DistanceGraph::new(mesh).eccentricities(sources, seed)?;
    Ok(ecc.iter().map(|e| e.1).fold(f64::INFINITY, f64::min))
}

pub fn mesh_area(mesh: &TriangleMesh) -> f64 {
    (0..mesh.triangles.len()).map(|t| mesh.triangle_area(t)).sum()
}

/// Per-vertex angle defects and the curvature they imply.
#[derive(Debug, Clone)]
pub struct AngleDefects {
    /// `2π − Σ` incident corner angles.
    pub defect: Vec<f64>,
    /// One third of the incident triangle areas.
    pub vertex_area: Vec<f64>,
    /// `min_v defect(v) / vertex_area(v)`.
    pub curvature_lower_est: f64,
}

impl AngleDefects {
    pub fn total(&self) -> f64 {
        self.defect.iter().sum()
    }
}

pub fn angle_defect_curvature(mesh: &TriangleMesh) -> Result<AngleDefects> {
    let n = mesh.vertex_count();
    let mut angle_sum = vec![0.0; n];
    let mut vertex_area = vec![0.0; n];
    let scale = mesh.scale();
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let area = mesh.triangle_area(t);
        if area.is_nan() || area <= 1e-12 * scale * scale {
            return Err(Error::InvalidMesh(format!("triangle {t} is degenerate")));
        }
        let angles = mesh.triangle_angles(t);
        for i in 0..3 {
            angle_sum[tri[i]] += angles[i];
            vertex_area[tri[i]] += area / 3.0;
        }
    }
    let defect: Vec<f64> = angle_sum.iter().map(|s| 2.0 * PI - s).collect();
    let curvature_lower_est = defect
        .iter()
        .zip(&vertex_area)
        .map(|(d, a)| d / a)
        .fold(f64::INFINITY, f64::min);
    Ok(AngleDefects {
        defect,
        vertex_area,
        curvature_lower_est,
    })
}

/// Numerical area, diameter, radius and curvature of one mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesyReport {
    pub area: f64,
    #[serde(rename = "diameter")]
    pub diameter_est: f64,
    #[serde(rename = "radius")]
    pub radius_est: f64,
    #[serde(rename = "curvature_lower")]
    pub curvature_lower_est: f64,
    pub chi: i64,
    #[serde(rename = "sources")]
    pub source_count: usize,
}

impl GeodesyReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Dimensionless `k = κ D²` from the measured quantities.
    pub fn k_est(&self) -> f64 {
        self.curvature_lower_est * self.diameter_est * self.diameter_est
    }
}

pub fn geodesy_report(mesh: &TriangleMesh) -> Result<GeodesyReport> {
    geodesy_report_with(mesh, Sources::auto(mesh), 0)
}

pub fn geodesy_report_with(mesh: &TriangleMesh, sources: Sources, seed: u64) -> Result<GeodesyReport> {
    mesh.validate()?;
    let chi = mesh.euler_characteristic();
    let defects = angle_defect_curvature(mesh)?;
    let expected = 2.0 * PI * chi as f64;
    if (defects.total() - expected).abs() > 1e-8 {
        return Err(Error::InvalidMesh(format!(
            "angle defects sum to {} instead of 2πχ = {expected}",
            defects.total()
        )));
    }
    let ecc = DistanceGraph::new(mesh).eccentricities(sources, seed)?;
    let diameter_est = ecc.iter().map(|e| e.1).fold(0.0, f64::max);
    let radius_est = ecc.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
    Ok(GeodesyReport {
        area: mesh_area(mesh),
        diameter_est,
        radius_est,
        curvature_lower_est: defects.curvature_lower_est,
        chi,
        source_count: ecc.len(),
    })
}
