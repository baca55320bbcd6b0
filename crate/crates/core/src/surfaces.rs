//! Model surfaces with known area, diameter, radius, Euler number and
//! curvature, and triangulations of them.
//!
//! The constant-curvature closed surfaces (round sphere, round projective
//! plane, flat torus, flat Klein bottle) are the equality cases of the
//! `λ = 0` limit, and the doubled flat disk is the conjectured extremal
//! for flat-curvature area/diameter ratios. The disk is not smooth, so
//! checks on it are limits of smooth checks rather than instances.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::{Point, TriangleMesh};
use crate::spaceform::SurfaceSummary;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceModel {
    /// Round sphere of radius `a`.
    RoundSphere { a: f64 },
    /// Antipodal quotient of the round sphere of radius `a`.
    RoundProjectivePlane { a: f64 },
    /// `R² / (pZ × qZ)`, `p ≥ q`.
    FlatTorus { p: f64, q: f64 },
    /// `R²` modulo the glide `(x, y) ↦ (x + p, −y)` and the translation
    /// `(x, y) ↦ (x, y + q)`, `p ≥ q`.
    FlatKleinBottle { p: f64, q: f64 },
    /// Two flat disks of radius `a` glued along their boundary circles.
    DoubledFlatDisk { a: f64 },
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SurfaceModel::RoundSphere { a } => write!(f, "RoundSphere(a={a})"),
            SurfaceModel::RoundProjectivePlane { a } => write!(f, "RoundProjectivePlane(a={a})"),
            SurfaceModel::FlatTorus { p, q } => write!(f, "FlatTorus(p={p}, q={q})"),
            SurfaceModel::FlatKleinBottle { p, q } => write!(f, "FlatKleinBottle(p={p}, q={q})"),
            SurfaceModel::DoubledFlatDisk { a } => write!(f, "DoubledFlatDisk(a={a})"),
        }
    }
}

impl SurfaceModel {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidModel(format!("{self}: {name} must be positive")))
            }
        };
        match *self {
            SurfaceModel::RoundSphere { a }
            | SurfaceModel::RoundProjectivePlane { a }
            | SurfaceModel::DoubledFlatDisk { a } => positive("a", a),
            SurfaceModel::FlatTorus { p, q } | SurfaceModel::FlatKleinBottle { p, q } => {
                positive("p", p)?;
                positive("q", q)?;
                if p < q {
                    return Err(Error::InvalidModel(format!("{self}: expected p ≥ q")));
                }
                Ok(())
            }
        }
    }

    pub fn is_smooth(&self) -> bool {
        !matches!(self, SurfaceModel::DoubledFlatDisk { .. })
    }

    pub fn euler_chi(&self) -> i32 {
        match self {
            SurfaceModel::RoundSphere { .. } | SurfaceModel::DoubledFlatDisk { .. } => 2,
            SurfaceModel::RoundProjectivePlane { .. } => 1,
            SurfaceModel::FlatTorus { .. } | SurfaceModel::FlatKleinBottle { .. } => 0,
        }
    }

    /// Exact invariants of the model.
    pub fn summary(&self) -> Result<SurfaceSummary> {
        self.validate()?;
        let chi = self.euler_chi();
        match *self {
            SurfaceModel::RoundSphere { a } => {
                SurfaceSummary::new(4.0 * PI * a * a, PI * a, PI * a, chi, 1.0 / (a * a))
            }
            SurfaceModel::RoundProjectivePlane { a } => {
                SurfaceSummary::new(2.0 * PI * a * a, PI * a / 2.0, PI * a / 2.0, chi, 1.0 / (a * a))
            }
            SurfaceModel::FlatTorus { p, q } => {
                let d = 0.5 * p.hypot(q);
                SurfaceSummary::new(p * q, d, d, chi, 0.0)
            }
            SurfaceModel::FlatKleinBottle { p, q } => {
                let ext = flat_quotient_extent(p, q, true);
                SurfaceSummary::new(p * q, ext.diameter, ext.radius, chi, 0.0)
            }
            // Every point is at distance 2a from its mirror image on the other
            // sheet, so every eccentricity is 2a and R = D = 2a.
            SurfaceModel::DoubledFlatDisk { a } => {
                SurfaceSummary::new(2.0 * PI * a * a, 2.0 * a, 2.0 * a, chi, 0.0)
            }
        }
    }

    /// `(χ, k = κ D², ρ = R / D)`.
    pub fn normalized_k(&self) -> Result<(i32, f64, f64)> {
        let s = self.summary()?;
        Ok((s.euler_chi, s.k(), s.rho()))
    }

    /// Triangulation at the given resolution: subdivision level for the
    /// round models, grid size for the flat quotients, ring count for the
    /// doubled disk.
    pub fn sample_mesh(&self, resolution: usize) -> Result<TriangleMesh> {
        self.validate()?;
        if resolution < 1 {
            return Err(Error::InvalidModel("resolution must be at least 1".into()));
        }
        let mesh = match *self {
            SurfaceModel::RoundSphere { a } => icosphere(a, resolution),
            SurfaceModel::RoundProjectivePlane { a } => round_projective_plane(a, resolution),
            SurfaceModel::FlatTorus { p, q } => flat_grid(p, q, resolution, false),
            SurfaceModel::FlatKleinBottle { p, q } => flat_grid(p, q, resolution, true),
            SurfaceModel::DoubledFlatDisk { a } => doubled_disk(a, resolution),
        }?;
        mesh.check_euler(i64::from(self.euler_chi()))?;
        Ok(mesh)
    }

    /// One instance of each model family, used by the verification suite.
    pub fn catalog() -> Vec<SurfaceModel> {
        vec![
            SurfaceModel::RoundSphere { a: 1.0 },
            SurfaceModel::RoundSphere { a: 2.5 },
            SurfaceModel::RoundProjectivePlane { a: 1.0 },
            SurfaceModel::FlatTorus { p: 1.0, q: 1.0 },
            SurfaceModel::FlatTorus { p: 3.0, q: 1.0 },
            SurfaceModel::FlatKleinBottle { p: 1.0, q: 1.0 },
            SurfaceModel::FlatKleinBottle { p: 2.0, q: 1.0 },
            SurfaceModel::DoubledFlatDisk { a: 1.0 },
        ]
    }
}

/// Diameter and radius of a flat quotient `R² / Γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientExtent {
    pub diameter: f64,
    pub radius: f64,
}

/// Deck transformations `(x, y) ↦ (x + m p, ±y + n q)` (sign `(−1)^m` for
/// the Klein bottle) applied to `u`, identity excluded.
fn deck_images(p: f64, q: f64, glide: bool, u: [f64; 2]) -> Vec<[f64; 2]> {
    let reach = 2.0 * (p + q);
    let m_max = (reach / p).ceil() as i32 + 1;
    let n_max = ((reach + 2.0 * q) / q).ceil() as i32 + 1;
    let mut out = Vec::new();
    for m in -m_max..=m_max {
        let flip = glide && m.rem_euclid(2) == 1;
        for n in -n_max..=n_max {
            if m == 0 && n == 0 {
                continue;
            }
            let y = if flip { -u[1] } else { u[1] };
            out.push([u[0] + f64::from(m) * p, y + f64::from(n) * q]);
        }
    }
    out
}

/// Largest distance from `u` to its Dirichlet cell, which is the
/// eccentricity of `u` in the quotient.
fn dirichlet_eccentricity(p: f64, q: f64, glide: bool, u: [f64; 2]) -> f64 {
    let h = 2.0 * (p + q);
    let mut poly = vec![
        [u[0] - h, u[1] - h],
        [u[0] + h, u[1] - h],
        [u[0] + h, u[1] + h],
        [u[0] - h, u[1] + h],
    ];
    for g in deck_images(p, q, glide, u) {
        // keep {x : (x − mid)·(g − u) ≤ 0}
        let nrm = [g[0] - u[0], g[1] - u[1]];
        let mid = [0.5 * (g[0] + u[0]), 0.5 * (g[1] + u[1])];
        let side = |x: [f64; 2]| (x[0] - mid[0]) * nrm[0] + (x[1] - mid[1]) * nrm[1];
        let mut clipped = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            let (sa, sb) = (side(a), side(b));
            if sa <= 0.0 {
                clipped.push(a);
            }
            if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
                let t = sa / (sa - sb);
                clipped.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
            }
        }
        poly = clipped;
    }
    poly.iter()
        .map(|v| (v[0] - u[0]).hypot(v[1] - u[1]))
        .fold(0.0, f64::max)
}

fn golden_extremum<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, maximize: bool) -> f64 {
    let sign = if maximize { -1.0 } else { 1.0 };
    let g = |x: f64| sign * f(x);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = g(x2);
        }
    }
    sign * f1.min(f2)
}

/// Diameter and radius of the flat torus (`glide = false`) or flat Klein
/// bottle (`glide = true`) with side lengths `p`, `q`.
///
/// Translations along `x` commute with the deck group, so eccentricity
/// depends only on the `y` coordinate of the basepoint; it is sampled at
/// 256 points of `[0, q]` and the extreme samples are polished by
/// golden-section search.
pub fn flat_quotient_extent(p: f64, q: f64, glide: bool) -> QuotientExtent {
    const SAMPLES: usize = 256;
    let ecc = |y: f64| dirichlet_eccentricity(p, q, glide, [0.0, y]);
    let step = q / SAMPLES as f64;
    let values: Vec<f64> = (0..SAMPLES).map(|i| ecc(i as f64 * step)).collect();
    let arg = |maximize: bool| {
        (0..SAMPLES)
            .max_by(|&i, &j| {
                let o = values[i].total_cmp(&values[j]);
                if maximize {
                    o
                } else {
                    o.reverse()
                }
            })
            .unwrap_or(0)
    };
    let (imax, imin) = (arg(true), arg(false));
    let y = |i: usize| i as f64 * step;
    let diameter = golden_extremum(ecc, y(imax) - step, y(imax) + step, true).max(values[imax]);
    let radius = golden_extremum(ecc, y(imin) - step, y(imin) + step, false).min(values[imin]);
    QuotientExtent { diameter, radius }
}

/// Three-level Aitken extrapolation of a sequence converging
/// geometrically; returns the last value when the differences vanish.
pub fn aitken_extrapolate(x: [f64; 3]) -> f64 {
    let (d1, d2) = (x[1] - x[0], x[2] - x[1]);
    let denom = d2 - d1;
    if denom.abs() <= 1e-14 * x[2].abs().max(1.0) || d1 * d2 <= 0.0 {
        return x[2];
    }
    x[2] - d2 * d2 / denom
}

/// Mesh-measured diameter and radius of the doubled disk at three ring
/// counts, with extrapolated limits.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskExtentOracle {
    pub resolutions: [usize; 3],
    pub diameter: [f64; 3],
    pub radius: [f64; 3],
    pub diameter_limit: f64,
    pub radius_limit: f64,
}

pub fn doubled_disk_extent_oracle(a: f64, resolutions: [usize; 3]) -> Result<DiskExtentOracle> {
    let model = SurfaceModel::DoubledFlatDisk { a };
    let mut diameter = [0.0; 3];
    let mut radius = [0.0; 3];
    for (i, &res) in resolutions.iter().enumerate() {
        let report = crate::geodesy::geodesy_report(&model.sample_mesh(res)?)?;
        diameter[i] = report.diameter_est;
        radius[i] = report.radius_est;
    }
    Ok(DiskExtentOracle {
        resolutions,
        diameter,
        radius,
        diameter_limit: aitken_extrapolate(diameter),
        radius_limit: aitken_extrapolate(radius),
    })
}

fn normalize(v: Point) -> Point {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Unit icosphere: vertices and triangles after `levels` midpoint
/// subdivisions.
fn unit_icosphere(levels: usize) -> (Vec<Point>, Vec<[usize; 3]>) {
    let phi = 0.5 * (1.0 + 5f64.sqrt());
    let mut vertices: Vec<Point> = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ]
    .into_iter()
    .map(normalize)
    .collect();
    let mut triangles = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..levels {
        let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Point>| {
            *cache.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (u, v) = (vertices[a], vertices[b]);
                vertices.push(normalize([u[0] + v[0], u[1] + v[1], u[2] + v[2]]));
                vertices.len() - 1
            })
        };
        let mut next = Vec::with_capacity(triangles.len() * 4);
        for [a, b, c] in triangles {
            let ab = midpoint(a, b, &mut vertices);
            let bc = midpoint(b, c, &mut vertices);
            let ca = midpoint(c, a, &mut vertices);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        triangles = next;
    }
    (vertices, triangles)
}

fn icosphere(a: f64, levels: usize) -> Result<TriangleMesh> {
    let (vertices, triangles) = unit_icosphere(levels);
    let vertices = vertices.into_iter().map(|v| v.map(|x| a * x)).collect();
    TriangleMesh::new(vertices, triangles)
}

/// Icosphere modulo the antipodal map. Display positions are the
/// representative vertices; charts carry the sphere coordinates.
fn round_projective_plane(a: f64, levels: usize) -> Result<TriangleMesh> {
    let (sphere, triangles) = unit_icosphere(levels);
    let quantize = |v: Point| v.map(|x| (x * 1e9).round() as i64);
    let lookup: HashMap<[i64; 3], usize> = sphere.iter().enumerate().map(|(i, &v)| (quantize(v), i)).collect();
    let antipode: Vec<usize> = sphere
        .iter()
        .map(|&v| {
            lookup
                .get(&quantize(v.map(|x| -x)))
                .copied()
                .ok_or_else(|| Error::InvalidMesh("icosphere is not antipodally symmetric".into()))
        })
        .collect::<Result<_>>()?;

    let mut rep_index = vec![usize::MAX; sphere.len()];
    let mut vertices = Vec::new();
    for i in 0..sphere.len() {
        if rep_index[i] == usize::MAX {
            rep_index[i] = vertices.len();
            rep_index[antipode[i]] = vertices.len();
            vertices.push(sphere[i].map(|x| a * x));
        }
    }
    let mut seen = HashMap::new();
    let mut quotient = Vec::new();
    let mut charts = Vec::new();
    for tri in triangles {
        let image = tri.map(|v| rep_index[v]);
        let mut key = image;
        key.sort_unstable();
        if seen.insert(key, ()).is_none() {
            quotient.push(image);
            charts.push(tri.map(|v| sphere[v].map(|x| a * x)));
        }
    }
    TriangleMesh::with_charts(vertices, quotient, charts)
}

/// `n × n` grid on the fundamental rectangle, split along one diagonal,
/// with torus or Klein-bottle identifications. Display positions are a
/// ring torus or a figure-eight Klein bottle immersion.
fn flat_grid(p: f64, q: f64, n: usize, glide: bool) -> Result<TriangleMesh> {
    if n < 3 {
        return Err(Error::InvalidModel("grid quotients need resolution ≥ 3".into()));
    }
    let index = |i: usize, j: usize| -> usize {
        let (i, j) = if glide && i == n { (0, (n - j % n) % n) } else { (i % n, j % n) };
        i * n + j
    };
    let coord = |i: usize, j: usize| -> Point { [p * i as f64 / n as f64, q * j as f64 / n as f64, 0.0] };

    let mut vertices = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let theta = 2.0 * PI * i as f64 / n as f64;
            let v = 2.0 * PI * j as f64 / n as f64;
            let s = p / (2.0 * PI);
            vertices.push(if glide {
                let r = 3.0;
                let w = (0.5 * theta).cos() * v.sin() - (0.5 * theta).sin() * (2.0 * v).sin();
                [
                    s * (r + w) * theta.cos(),
                    s * (r + w) * theta.sin(),
                    s * ((0.5 * theta).sin() * v.sin() + (0.5 * theta).cos() * (2.0 * v).sin()),
                ]
            } else {
                let minor = 0.9 * q / (2.0 * PI);
                [
                    (s + minor * v.cos()) * theta.cos(),
                    (s + minor * v.cos()) * theta.sin(),
                    minor * v.sin(),
                ]
            });
        }
    }
    let mut triangles = Vec::with_capacity(2 * n * n);
    let mut charts = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            for tri in [[(i, j), (i + 1, j), (i + 1, j + 1)], [(i, j), (i + 1, j + 1), (i, j + 1)]] {
                triangles.push(tri.map(|(a, b)| index(a, b)));
                charts.push(tri.map(|(a, b)| coord(a, b)));
            }
        }
    }
    TriangleMesh::with_charts(vertices, triangles, charts)
}

/// Two copies of a ringed disk triangulation (ring `i` carries `6i`
/// vertices) sharing the boundary ring. Charts are flat; display positions
/// bulge the sheets apart.
fn doubled_disk(a: f64, rings: usize) -> Result<TriangleMesh> {
    let mut vertices: Vec<Point> = Vec::new();
    let mut charts_xy: Vec<[f64; 2]> = Vec::new();
    let bulge = |r: f64| 0.25 * a * (1.0 - (r / a).powi(2));

    // ring_ids[sheet][i] lists vertex ids of ring i (ring 0 is the center)
    let mut ring_ids: [Vec<Vec<usize>>; 2] = [Vec::new(), Vec::new()];
    let mut boundary = Vec::new();
    for j in 0..6 * rings {
        let t = 2.0 * PI * j as f64 / (6 * rings) as f64;
        boundary.push(vertices.len());
        vertices.push([a * t.cos(), a * t.sin(), 0.0]);
        charts_xy.push([a * t.cos(), a * t.sin()]);
    }
    for (sheet, ids) in ring_ids.iter_mut().enumerate() {
        let sign = if sheet == 0 { 1.0 } else { -1.0 };
        for i in 0..rings {
            let r = a * i as f64 / rings as f64;
            let count = if i == 0 { 1 } else { 6 * i };
            let mut ring = Vec::with_capacity(count);
            for j in 0..count {
                let t = 2.0 * PI * j as f64 / count as f64;
                ring.push(vertices.len());
                vertices.push([r * t.cos(), r * t.sin(), sign * bulge(r)]);
                charts_xy.push([r * t.cos(), r * t.sin()]);
            }
            ids.push(ring);
        }
        ids.push(boundary.clone());
    }

    let angle = |k: usize, count: usize| 2.0 * PI * k as f64 / count as f64;
    let mut triangles = Vec::new();
    for (sheet, ids) in ring_ids.iter().enumerate() {
        for i in 1..=rings {
            let (inner, outer) = (&ids[i - 1], &ids[i]);
            let (m, n) = (inner.len(), outer.len());
            let mut sheet_tris = Vec::with_capacity(m + n);
            if m == 1 {
                for b in 0..n {
                    sheet_tris.push([inner[0], outer[b], outer[(b + 1) % n]]);
                }
            } else {
                let (mut ia, mut ib) = (0, 0);
                while ia < m || ib < n {
                    let advance_outer = ia == m || (ib < n && angle(ib + 1, n) <= angle(ia + 1, m));
                    if advance_outer {
                        sheet_tris.push([inner[ia % m], outer[ib], outer[(ib + 1) % n]]);
                        ib += 1;
                    } else {
                        sheet_tris.push([inner[ia], outer[ib % n], inner[(ia + 1) % m]]);
                        ia += 1;
                    }
                }
            }
            if sheet == 1 {
                for t in &mut sheet_tris {
                    t.swap(1, 2);
                }
            }
            triangles.extend(sheet_tris);
        }
    }
    let charts = triangles
        .iter()
        .map(|t: &[usize; 3]| t.map(|v| [charts_xy[v][0], charts_xy[v][1], 0.0]))
        .collect();
    TriangleMesh::with_charts(vertices, triangles, charts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaceform::K_MAX;

    #[test]
    fn area_ratios_of_constant_curvature_models() {
        let s = SurfaceModel::RoundSphere { a: 1.0 }.summary().unwrap();
        assert!((s.area_ratio() - 4.0 / PI).abs() < 1e-15);
        let s = SurfaceModel::RoundProjectivePlane { a: 1.0 }.summary().unwrap();
        assert!((s.area_ratio() - 8.0 / PI).abs() < 1e-15);
        let s = SurfaceModel::FlatTorus { p: 1.0, q: 1.0 }.summary().unwrap();
        assert!((s.area_ratio() - 2.0).abs() < 1e-15);
        let s = SurfaceModel::DoubledFlatDisk { a: 1.0 }.summary().unwrap();
        assert!((s.area_ratio() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn normalized_k_examples() {
        for a in [0.3, 1.0, 7.0] {
            let (chi, k, rho) = SurfaceModel::RoundSphere { a }.normalized_k().unwrap();
            assert_eq!(chi, 2);
            assert!((k - K_MAX).abs() < 1e-12 && rho == 1.0);
            let (chi, k, rho) = SurfaceModel::RoundProjectivePlane { a }.normalized_k().unwrap();
            assert_eq!(chi, 1);
            assert!((k - K_MAX / 4.0).abs() < 1e-12 && rho == 1.0);
        }
        let (chi, k, rho) = SurfaceModel::FlatTorus { p: 2.0, q: 1.5 }.normalized_k().unwrap();
        assert_eq!((chi, k, rho), (0, 0.0, 1.0));
    }

    #[test]
    fn invalid_parameters() {
        assert!(SurfaceModel::RoundSphere { a: 0.0 }.summary().is_err());
        assert!(SurfaceModel::FlatTorus { p: 1.0, q: 2.0 }.summary().is_err());
        assert!(SurfaceModel::FlatKleinBottle { p: f64::NAN, q: 1.0 }.summary().is_err());
        assert!(SurfaceModel::RoundSphere { a: 1.0 }.sample_mesh(0).is_err());
        assert!(SurfaceModel::FlatTorus { p: 1.0, q: 1.0 }.sample_mesh(2).is_err());
    }

    #[test]
    fn dirichlet_cell_of_torus_is_its_rectangle() {
        for (p, q) in [(1.0, 1.0), (3.0, 1.0), (1.7, 0.4)] {
            let ext = flat_quotient_extent(p, q, false);
            let half_diag = 0.5 * f64::hypot(p, q);
            assert!((ext.diameter - half_diag).abs() < 1e-12);
            assert!((ext.radius - half_diag).abs() < 1e-12);
        }
    }

    /// Grid brute force over target points: min over deck images of the
    /// Euclidean distance, max over targets, then min/max over basepoints.
    fn brute_force_extent(p: f64, q: f64, n: usize) -> (f64, f64) {
        let dist = |u: [f64; 2], v: [f64; 2]| {
            let mut best = f64::INFINITY;
            for m in -3i32..=3 {
                let s = if m.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
                for k in -3i32..=3 {
                    let dx = u[0] - (v[0] + f64::from(m) * p);
                    let dy = u[1] - (s * v[1] + f64::from(k) * q);
                    best = best.min(dx.hypot(dy));
                }
            }
            best
        };
        let targets: Vec<[f64; 2]> = (0..n)
            .flat_map(|i| (0..n).map(move |j| [(i as f64 + 0.5) * p / n as f64, (j as f64 + 0.5) * q / n as f64]))
            .collect();
        let mut d: f64 = 0.0;
        let mut r = f64::INFINITY;
        for b in 0..=40 {
            let u = [0.0, q * b as f64 / 80.0];
            let ecc = targets.iter().map(|&v| dist(u, v)).fold(0.0, f64::max);
            d = d.max(ecc);
            r = r.min(ecc);
        }
        (d, r)
    }

    #[test]
    fn klein_bottle_extent_matches_brute_force() {
        for (p, q) in [(1.0, 1.0), (2.0, 1.0)] {
            let ext = flat_quotient_extent(p, q, true);
            let (d, r) = brute_force_extent(p, q, 160);
            let h = p / 160.0;
            assert!(ext.diameter >= d - 1e-12 && ext.diameter <= d + h, "{ext:?} vs {d}");
            assert!((ext.radius - r).abs() <= h, "{ext:?} vs {r}");
            assert!(ext.radius < ext.diameter);
        }
    }

    #[test]
    fn flat_models_respect_the_flat_ratio_bound() {
        for (p, q) in [(1.0, 1.0), (1.2, 1.0), (2.0, 1.0), (4.0, 0.5)] {
            for m in [SurfaceModel::FlatTorus { p, q }, SurfaceModel::FlatKleinBottle { p, q }] {
                assert!(m.summary().unwrap().area_ratio() <= 2.0 + 1e-12, "{m}");
            }
        }
    }

    #[test]
    fn icosphere_counts() {
        for level in 0..=4 {
            let (v, t) = unit_icosphere(level);
            assert_eq!(v.len(), 10 * 4usize.pow(level as u32) + 2);
            assert_eq!(t.len(), 20 * 4usize.pow(level as u32));
        }
        let mesh = SurfaceModel::RoundSphere { a: 1.0 }.sample_mesh(4).unwrap();
        assert_eq!(mesh.vertex_count(), 2562);
        assert_eq!(mesh.euler_characteristic(), 2);
    }

    #[test]
    fn generated_meshes_have_the_model_topology() {
        let cases = [
            (SurfaceModel::RoundProjectivePlane { a: 1.0 }, 2),
            (SurfaceModel::RoundProjectivePlane { a: 1.0 }, 1),
            (SurfaceModel::FlatTorus { p: 1.0, q: 1.0 }, 8),
            (SurfaceModel::FlatKleinBottle { p: 2.0, q: 1.0 }, 5),
            (SurfaceModel::DoubledFlatDisk { a: 1.0 }, 1),
            (SurfaceModel::DoubledFlatDisk { a: 1.0 }, 6),
        ];
        for (model, res) in cases {
            let mesh = model.sample_mesh(res).unwrap();
            assert_eq!(mesh.euler_characteristic(), i64::from(model.euler_chi()), "{model}");
        }
        let disk = SurfaceModel::DoubledFlatDisk { a: 1.0 }.sample_mesh(5).unwrap();
        assert_eq!(disk.vertex_count(), 2 + 6 * 25);
        assert_eq!(disk.triangles.len(), 12 * 25);
    }

    #[test]
    fn klein_bottle_radius_closed_form() {
        // (4p² + q²)/(8p), attained at y = q/4
        for (p, q) in [(1.0, 1.0), (1.5, 1.0), (2.0, 1.0), (3.0, 1.0)] {
            let ext = flat_quotient_extent(p, q, true);
            assert!((ext.radius - (4.0 * p * p + q * q) / (8.0 * p)).abs() < 1e-12, "{p} {q}");
        }
    }

    #[test]
    fn aitken_recovers_geometric_limit() {
        let x = [2.0 + 0.5, 2.0 + 0.25, 2.0 + 0.125];
        assert!((aitken_extrapolate(x) - 2.0).abs() < 1e-15);
        assert_eq!(aitken_extrapolate([2.0, 2.0, 2.0]), 2.0);
    }

    #[test]
    fn doubled_disk_mesh_extent_approaches_two() {
        let oracle = doubled_disk_extent_oracle(1.0, [4, 8, 16]).unwrap();
        for i in 0..3 {
            assert!((1.0..=2.0 + 1e-12).contains(&oracle.radius[i]));
            assert!(oracle.diameter[i] >= 2.0 - 1e-12);
        }
        assert!(oracle.diameter[2] <= 2.0 * 1.05);
        assert!(oracle.diameter[2] <= oracle.diameter[0]);
        assert!((oracle.radius_limit - 2.0).abs() < 1e-9);
    }

    #[test]
    fn flat_grid_area_is_exact() {
        let torus = SurfaceModel::FlatTorus { p: 1.0, q: 1.0 }.sample_mesh(16).unwrap();
        assert!((crate::geodesy::mesh_area(&torus) - 1.0).abs() < 1e-12);
        let klein = SurfaceModel::FlatKleinBottle { p: 2.0, q: 1.0 }.sample_mesh(10).unwrap();
        assert!((crate::geodesy::mesh_area(&klein) - 2.0).abs() < 1e-12);
    }
}
