//! Cross-checks of the bounds against the model surfaces and their
//! meshes. Every check has the shape `measured ≤ bound` and reports the
//! slack `bound − measured`.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{corollary_flat_constant, prop_bound, quartic_bound, report, root_bound, theorem_bound};
use crate::error::Result;
use crate::geodesy::{geodesy_report, mesh_area};
use crate::roots::Bisection;
use crate::spaceform::{v_kappa, v_tilde, w_of_k, K_MAX};
use crate::surfaces::{doubled_disk_extent_oracle, SurfaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
    pub note: Option<String>,
}

impl Check {
    /// `measured ≤ bound`.
    pub fn le(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        let slack = bound - measured;
        Check {
            name: name.into(),
            measured,
            bound,
            slack,
            pass: slack >= 0.0,
            note: None,
        }
    }

    /// `measured < bound`.
    pub fn lt(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        let mut c = Check::le(name, measured, bound);
        c.pass = c.slack > 0.0;
        c
    }

    /// `|measured − target| ≤ tol`, reported with `measured` the deviation.
    pub fn close(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Check::le(name, (value - target).abs(), tol)
    }

    fn failed(name: impl Into<String>, err: impl fmt::Display) -> Self {
        Check {
            name: name.into(),
            measured: f64::NAN,
            bound: f64::NAN,
            slack: f64::NAN,
            pass: false,
            note: Some(err.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: measured {:.12e}, bound {:.12e}, slack {:.3e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.bound,
            self.slack
        )?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    fn push(&mut self, name: &str, check: Result<Check>) {
        self.checks.push(check.unwrap_or_else(|e| Check::failed(name, e)));
    }

    fn extend(&mut self, name: &str, checks: Result<Vec<Check>>) {
        match checks {
            Ok(c) => self.checks.extend(c),
            Err(e) => self.checks.push(Check::failed(name, e)),
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().len();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

pub fn run(level: Level) -> VerifyReport {
    let mut out = VerifyReport::default();
    out.extend("flat_constants", flat_constants());
    out.push("calabi_cao", calabi_cao());
    out.extend("tightness", tightness());
    out.extend("continuity_at_zero", continuity_at_zero());
    out.extend("ordering", ordering_checks());
    out.push("radius_bound_flat_formula", radius_bound_flat_formula());
    out.extend("models", model_checks());
    if level == Level::Full {
        out.push("quadrature_oracle", quadrature_check(200, 0));
        out.extend("sphere_mesh", sphere_mesh_checks());
        out.extend("torus_mesh", torus_mesh_checks());
        out.extend("quotient_meshes", quotient_mesh_checks());
        out.push("icosphere_area_convergence", icosphere_area_convergence().map(|c| c.check));
        out.extend("doubled_disk_mesh", doubled_disk_checks());
    }
    out
}

pub fn flat_constants() -> Result<Vec<Check>> {
    let s2 = theorem_bound(2, 0.0)?;
    let rp2 = theorem_bound(1, 0.0)?;
    Ok(vec![
        Check::close("theorem_bound(2, 0) = (√21 − 3)π/2", s2, (21f64.sqrt() - 3.0) * PI / 2.0, 1e-12),
        Check::lt("theorem_bound(2, 0) < 2.486", s2, 2.486),
        Check::close("theorem_bound(1, 0) = (√15 − 3)π", rp2, (15f64.sqrt() - 3.0) * PI, 1e-12),
        Check::lt("theorem_bound(1, 0) < 2.743", rp2, 2.743),
    ])
}

/// The flat sphere bound beats `8/π` by at least 0.05.
pub fn calabi_cao() -> Result<Check> {
    Ok(Check::le("theorem_bound(2, 0) + 0.05 ≤ 8/π", theorem_bound(2, 0.0)?, 8.0 / PI - 0.05))
}

pub fn tightness() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (model, target) in [
        (SurfaceModel::RoundSphere { a: 1.0 }, 4.0 / PI),
        (SurfaceModel::RoundProjectivePlane { a: 1.0 }, 8.0 / PI),
    ] {
        let s = model.summary()?;
        let (chi, k, _) = model.normalized_k()?;
        let rep = report(chi, k, None)?;
        let limit = rep.theorem_bound.unwrap_or(f64::NAN);
        out.push(Check::close(format!("{model}: λ = 0 limit equals V/D²"), limit, s.area_ratio(), 1e-12));
        out.push(Check::close(format!("{model}: V/D² = {target:.6}"), s.area_ratio(), target, 1e-12));
    }
    Ok(out)
}

pub fn continuity_at_zero() -> Result<Vec<Check>> {
    let at_zero = theorem_bound(2, 0.0)?;
    [(1e-3, 1e-2), (1e-6, 1e-5), (1e-9, 1e-8)]
        .into_iter()
        .map(|(eps, tol)| {
            let dev = (theorem_bound(2, eps)? - at_zero)
                .abs()
                .max((theorem_bound(2, -eps)? - at_zero).abs());
            Ok(Check::le(format!("|theorem_bound(2, ±{eps:e}) − theorem_bound(2, 0)|"), dev, tol))
        })
        .collect()
}

/// Upper end of the admissible `k` range with `λ_χ(k) > 0`, for the
/// `χ` values used in [`ordering_grid`].
fn lambda_zero_crossing(chi: i32) -> Result<f64> {
    match chi {
        2 => Ok(K_MAX),
        1 => Ok(K_MAX / 4.0),
        0 => Ok(0.0),
        _ => Ok(Bisection::default()
            .solve("ordering_grid", -50.0, 0.0, |k| Ok(2.0 * f64::from(chi) - k * w_of_k(k)?))?
            .r),
    }
}

/// 200 admissible `(χ, k)`: 40 values of `k ∈ [−10, k₀)` for each
/// `χ ∈ {2, 1, 0, −1, −2}`, where `k₀` is where `λ_χ` vanishes.
pub fn ordering_grid() -> Result<Vec<(i32, f64)>> {
    let mut grid = Vec::with_capacity(200);
    for chi in [2, 1, 0, -1, -2] {
        let hi = lambda_zero_crossing(chi)? - 1e-3;
        let lo = -10.0;
        for i in 0..40 {
            grid.push((chi, lo + (hi - lo) * i as f64 / 39.0));
        }
    }
    Ok(grid)
}

/// Largest violations of `root ≤ theorem` and, for `k < 0`,
/// `root ≤ quartic ≤ theorem`, over [`ordering_grid`].
pub fn ordering_checks() -> Result<Vec<Check>> {
    let mut root_theorem = f64::NEG_INFINITY;
    let mut root_quartic = f64::NEG_INFINITY;
    let mut quartic_theorem = f64::NEG_INFINITY;
    let grid = ordering_grid()?;
    for &(chi, k) in &grid {
        let t = theorem_bound(chi, k)?;
        let r = root_bound(chi, k)?.value;
        root_theorem = root_theorem.max(r - t);
        if k < 0.0 {
            let q = quartic_bound(chi, k)?;
            root_quartic = root_quartic.max(r - q);
            quartic_theorem = quartic_theorem.max(q - t);
        }
    }
    let note = format!("{} grid points", grid.len());
    Ok(vec![
        Check::le("max(root − theorem)", root_theorem, 1e-9).with_note(note.clone()),
        Check::le("max(root − quartic), k < 0", root_quartic, 1e-9).with_note(note.clone()),
        Check::le("max(quartic − theorem), k < 0", quartic_theorem, 1e-9).with_note(note),
    ])
}

pub fn radius_bound_flat_formula() -> Result<Check> {
    let mut dev: f64 = 0.0;
    for chi in [0, 1, 2] {
        for rho in [0.5f64, 0.75, 1.0] {
            let expected = PI * (1.0 - f64::from(chi) * rho.powi(4) / 6.0);
            dev = dev.max((prop_bound(chi, 0.0, rho)? - expected).abs());
        }
    }
    Ok(Check::le("max |prop_bound(χ, 0, ρ) − π(1 − χρ⁴/6)|", dev, 1e-12))
}

/// `V ≤ D² · best` for every catalog model, plus the flat ratio bound and
/// the doubled-disk value.
pub fn model_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for model in SurfaceModel::catalog() {
        let s = model.summary()?;
        let (chi, k, rho) = model.normalized_k()?;
        let rep = report(chi, k, Some(rho))?;
        let d2 = s.diameter * s.diameter;
        // rounding in V and D² at an equality case
        let tol = 1e-12 * s.area;
        let mut c = Check::le(format!("{model}: V ≤ D²·best"), s.area, d2 * rep.best + tol)
            .with_note(format!("best = {}", rep.best_name));
        if !model.is_smooth() {
            c = c.with_note(format!("Alexandrov-limit check, best = {}", rep.best_name));
        }
        out.push(c);
        if k == 0.0 {
            out.push(Check::le(format!("{model}: flat V/D² ≤ 2"), s.area_ratio(), 2.0 + 1e-12));
        }
    }
    let disk = SurfaceModel::DoubledFlatDisk { a: 1.0 }.summary()?;
    out.push(Check::close("doubled disk V/D² = π/2", disk.area_ratio(), PI / 2.0, 1e-12));
    out.push(
        Check::lt("doubled disk V/D² < theorem_bound(2, 0)", disk.area_ratio(), corollary_flat_constant(2)?)
            .with_note("Alexandrov-limit check"),
    );
    Ok(out)
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol {
            return left + right + diff / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// `∫₀ʳ ∫₀ᵗ v_κ(s) ds dt` by nested adaptive quadrature.
pub fn v_tilde_by_quadrature(kappa: f64, r: f64) -> f64 {
    let scale = PI * r.powi(4) / 12.0 * (1.0 + kappa.abs() * r * r).exp();
    let v = |s: f64| v_kappa(kappa, s).unwrap_or(f64::NAN);
    let inner_tol = 1e-14 * scale.max(f64::MIN_POSITIVE);
    let outer = |t: f64| adaptive_simpson(&v, 0.0, t, inner_tol);
    adaptive_simpson(&outer, 0.0, r, 1e-13 * scale)
}

/// Largest relative gap between [`v_tilde`] and
/// [`v_tilde_by_quadrature`] over `samples` random `(κ, r)`.
pub fn quadrature_check(samples: usize, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let kappa: f64 = rng.gen_range(-5.0..=5.0);
        let r_max = if kappa > 0.0 { (PI / kappa.sqrt()).min(2.0) } else { 2.0 };
        let r: f64 = rng.gen_range(1e-3..=r_max);
        let closed = v_tilde(kappa, r)?;
        let quad = v_tilde_by_quadrature(kappa, r);
        worst = worst.max(((closed - quad) / closed).abs());
    }
    Ok(Check::le("max relative |v_tilde − quadrature|", worst, 1e-8).with_note(format!("{samples} samples")))
}

pub fn sphere_mesh_checks() -> Result<Vec<Check>> {
    let mesh = SurfaceModel::RoundSphere { a: 1.0 }.sample_mesh(4)?;
    let rep = geodesy_report(&mesh)?;
    let defects = crate::geodesy::angle_defect_curvature(&mesh)?.total();
    let mut out = vec![
        Check::le("icosphere L4: |area − 4π|/4π", (rep.area - 4.0 * PI).abs() / (4.0 * PI), 0.01),
        Check::le("icosphere L4: |D − π|/π", (rep.diameter_est - PI).abs() / PI, 0.03),
        Check::le("icosphere L4: |R − π|/π", (rep.radius_est - PI).abs() / PI, 0.03),
        Check::close("icosphere L4: Σ defects = 4π", defects, 4.0 * PI, 1e-8),
    ];
    out.extend(metric_inequality_checks("icosphere L4", rep.diameter_est, rep.radius_est));
    // k from the mesh exceeds π² by discretization error, so it is clamped
    let k_est = rep.k_est().min(K_MAX);
    let bound = report(2, k_est, None)
        .map(|r| r.theorem_bound.unwrap_or(f64::NAN))
        .or_else(|_| theorem_bound(2, k_est))?;
    let ratio = rep.area / (rep.diameter_est * rep.diameter_est);
    out.push(
        Check::le("icosphere L4: mesh V/D² ≤ 1.05·theorem_bound(2, k_est)", ratio, 1.05 * bound)
            .with_note(format!("k_est = {:.6} (clamped to π²)", rep.k_est())),
    );
    Ok(out)
}

fn metric_inequality_checks(label: &str, d: f64, r: f64) -> Vec<Check> {
    vec![
        Check::le(format!("{label}: D/2 ≤ R"), 0.5 * d, r),
        Check::le(format!("{label}: R ≤ D"), r, d),
    ]
}

pub fn torus_mesh_checks() -> Result<Vec<Check>> {
    let mesh = SurfaceModel::FlatTorus { p: 1.0, q: 1.0 }.sample_mesh(64)?;
    let rep = geodesy_report(&mesh)?;
    let defects = crate::geodesy::angle_defect_curvature(&mesh)?.total();
    let d = 0.5 * 2f64.sqrt();
    let mut out = vec![
        Check::le("torus 64²: |D − √2/2|/(√2/2)", (rep.diameter_est - d).abs() / d, 0.05),
        Check::close("torus 64²: Σ defects = 0", defects, 0.0, 1e-8),
        Check::close("torus 64²: area = 1", rep.area, 1.0, 1e-12),
    ];
    out.extend(metric_inequality_checks("torus 64²", rep.diameter_est, rep.radius_est));
    Ok(out)
}

/// Mesh diameter and radius of the projective plane and a Klein bottle
/// against their exact values.
pub fn quotient_mesh_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (model, res) in [
        (SurfaceModel::RoundProjectivePlane { a: 1.0 }, 4),
        (SurfaceModel::FlatKleinBottle { p: 2.0, q: 1.0 }, 32),
    ] {
        let exact = model.summary()?;
        let rep = geodesy_report(&model.sample_mesh(res)?)?;
        out.push(Check::le(
            format!("{model} mesh: |D − D_exact|/D_exact"),
            (rep.diameter_est - exact.diameter).abs() / exact.diameter,
            0.03,
        ));
        out.push(Check::le(
            format!("{model} mesh: |R − R_exact|/R_exact"),
            (rep.radius_est - exact.radius).abs() / exact.radius,
            0.03,
        ));
        let defects = crate::geodesy::angle_defect_curvature(&model.sample_mesh(res)?)?.total();
        out.push(Check::close(
            format!("{model} mesh: Σ defects = 2πχ"),
            defects,
            2.0 * PI * f64::from(model.euler_chi()),
            1e-8,
        ));
    }
    Ok(out)
}

/// Relative area error of icosphere levels 2..=5 and the fitted constant
/// `C` in `error ≤ C·4^(−L)`.
#[derive(Debug, Clone)]
pub struct AreaConvergence {
    pub levels: Vec<usize>,
    pub rel_errors: Vec<f64>,
    pub fitted_c: f64,
    pub check: Check,
}

pub fn icosphere_area_convergence() -> Result<AreaConvergence> {
    let levels: Vec<usize> = (2..=5).collect();
    let mut rel_errors = Vec::new();
    for &l in &levels {
        let mesh = SurfaceModel::RoundSphere { a: 1.0 }.sample_mesh(l)?;
        rel_errors.push((4.0 * PI - mesh_area(&mesh)) / (4.0 * PI));
    }
    let scaled: Vec<f64> = levels
        .iter()
        .zip(&rel_errors)
        .map(|(&l, e)| e * 4f64.powi(l as i32))
        .collect();
    let fitted_c = scaled.iter().copied().fold(0.0, f64::max);
    let spread = fitted_c / scaled.iter().copied().fold(f64::INFINITY, f64::min);
    // with C the largest scaled error, error ≤ C·4^(−L) holds at every level
    // and the rate is confirmed by the scaled errors staying within a factor 2
    let check = Check::le("icosphere area error·4^L spread (max/min)", spread, 2.0)
        .with_note(format!("fitted C = {fitted_c:.6}"));
    Ok(AreaConvergence {
        levels,
        rel_errors,
        fitted_c,
        check,
    })
}

pub fn doubled_disk_checks() -> Result<Vec<Check>> {
    let oracle = doubled_disk_extent_oracle(1.0, [4, 8, 16])?;
    let mesh = SurfaceModel::DoubledFlatDisk { a: 1.0 }.sample_mesh(16)?;
    let rep = geodesy_report(&mesh)?;
    Ok(vec![
        Check::close("doubled disk mesh: extrapolated R = 2", oracle.radius_limit, 2.0, 1e-6),
        Check::le("doubled disk mesh: 2 ≤ D", 2.0 - 1e-12, oracle.diameter[2]),
        Check::le("doubled disk mesh: |D − 2|/2", (oracle.diameter[2] - 2.0).abs() / 2.0, 0.05),
        Check::le("doubled disk mesh: |area − 2π|/2π", (2.0 * PI - rep.area).abs() / (2.0 * PI), 0.01),
    ])
}
