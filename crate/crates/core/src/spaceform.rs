//! Comparison functions of the two-dimensional space forms.
//!
//! `v_kappa(κ, r)` is the area of an `r`-ball in the simply connected
//! surface of constant curvature `κ`, and `v_tilde(κ, r)` is its double
//! primitive `∫₀ʳ∫₀ᵗ v_κ(s) ds dt`. Both are written as `π r² · g(κ r²)` and
//! `π r⁴ · h(κ r²)` with entire functions `g`, `h`, so every sign of `κ`
//! goes through the same code and the removable singularity at `κ = 0` is
//! handled by a Taylor branch.
//!
//! All normalized quantities use the scaling `D = 1`, so `k = κ D²`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Below this `|κ r²|` (or `|k|`) the ball-area factor is evaluated by its
/// Taylor series truncated after the cubic term.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// Below this `|κ r²|` the double-integral factor is evaluated by its
/// Taylor series. The closed form `κ r² + 2 cos(√κ r) − 2` cancels two
/// leading orders, so it is only trusted once `|κ r²|` is of order one.
pub const V_TILDE_SERIES_THRESHOLD: f64 = 1.0;

/// `λ_χ(k)` values with magnitude below this are treated as zero.
pub const LAMBDA_TOL: f64 = 1e-12;

/// Relative slack allowed on the domain boundaries `k ≤ π²` and
/// `√κ r ≤ π`.
pub const DOMAIN_RTOL: f64 = 1e-12;

/// Largest admissible normalized curvature `k = κ D²`.
pub const K_MAX: f64 = PI * PI;

// 2(1 - cos t)/t² = Σ 2(-x)ⁿ/(2n+2)!, x = t².
const BALL_SERIES: [f64; 4] = [1.0, -1.0 / 12.0, 1.0 / 360.0, -1.0 / 20160.0];

fn ball_factor_series(x: f64) -> f64 {
    BALL_SERIES.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn ball_factor_closed(x: f64) -> f64 {
    // 2(1 - cos t) = 4 sin²(t/2), 2(cosh s - 1) = 4 sinh²(s/2)
    if x > 0.0 {
        let half = 0.5 * x.sqrt();
        let s = half.sin() / half;
        s * s
    } else {
        let half = 0.5 * (-x).sqrt();
        let s = half.sinh() / half;
        s * s
    }
}

/// `v_κ(r) / (π r²)` as a function of `x = κ r²`.
fn ball_factor(x: f64) -> f64 {
    if x.abs() < SERIES_THRESHOLD {
        ball_factor_series(x)
    } else {
        ball_factor_closed(x)
    }
}

// (x + 2 cos √x - 2)/x² = Σ 2(-x)ⁿ/(2n+4)!
fn double_integral_factor_series(x: f64) -> f64 {
    let mut term = 2.0 / 24.0;
    let mut sum = term;
    let mut n = 1.0_f64;
    // |x| < 1: terms fall faster than 1/n⁴, fourteen of them reach 1e-40.
    for _ in 0..14 {
        term *= -x / ((2.0 * n + 3.0) * (2.0 * n + 4.0));
        sum += term;
        n += 1.0;
    }
    sum
}

fn double_integral_factor_closed(x: f64) -> f64 {
    let trig = if x > 0.0 {
        x.sqrt().cos()
    } else {
        (-x).sqrt().cosh()
    };
    (x + 2.0 * trig - 2.0) / (x * x)
}

/// `ṽ_κ(r) / (π r⁴)` as a function of `x = κ r²`.
fn double_integral_factor(x: f64) -> f64 {
    if x.abs() < V_TILDE_SERIES_THRESHOLD {
        double_integral_factor_series(x)
    } else {
        double_integral_factor_closed(x)
    }
}

fn check_radius(context: &'static str, kappa: f64, r: f64) -> Result<()> {
    if !kappa.is_finite() || !r.is_finite() {
        return Err(Error::domain(context, format!("non-finite input (κ = {kappa}, r = {r})")));
    }
    if r < 0.0 {
        return Err(Error::domain(context, format!("negative radius r = {r}")));
    }
    Ok(())
}

/// Area of an `r`-ball in the space form of curvature `kappa`.
///
/// For `kappa > 0` the ball must fit inside the model sphere,
/// `r ≤ π/√kappa`.
pub fn v_kappa(kappa: f64, r: f64) -> Result<f64> {
    check_radius("v_kappa", kappa, r)?;
    if kappa > 0.0 && kappa.sqrt() * r > PI * (1.0 + DOMAIN_RTOL) {
        return Err(Error::domain(
            "v_kappa",
            format!("r = {r} exceeds the model sphere diameter π/√κ = {}", PI / kappa.sqrt()),
        ));
    }
    Ok(PI * r * r * ball_factor(kappa * r * r))
}

/// Double primitive `ṽ_κ(r) = ∫₀ʳ ∫₀ᵗ v_κ(s) ds dt`.
pub fn v_tilde(kappa: f64, r: f64) -> Result<f64> {
    check_radius("v_tilde", kappa, r)?;
    let r2 = r * r;
    Ok(PI * r2 * r2 * double_integral_factor(kappa * r2))
}

fn check_k(context: &'static str, k: f64) -> Result<()> {
    if !k.is_finite() {
        return Err(Error::domain(context, format!("non-finite k = {k}")));
    }
    if k > K_MAX * (1.0 + DOMAIN_RTOL) {
        return Err(Error::domain(context, format!("k = {k} exceeds π² (Bonnet–Myers)")));
    }
    Ok(())
}

/// `w(k) = v_k(1)/π`.
pub fn w_of_k(k: f64) -> Result<f64> {
    check_k("w_of_k", k)?;
    Ok(ball_factor(k))
}

fn lambda_unchecked(chi: i32, k: f64) -> f64 {
    2.0 * f64::from(chi) - k * ball_factor(k)
}

/// Rejects `(χ, k)` pairs that no closed surface with `K ≥ κ` can realize.
///
/// Besides `k ≤ π²` and Gauss–Bonnet, this rejects `λ_χ(k) < 0` beyond
/// tolerance; for `χ = 1` that is `k > π²/4`, the diameter bound of a
/// projective plane.
pub fn check_admissible(chi: i32, k: f64) -> Result<()> {
    check_k("admissibility", k)?;
    if chi > 2 {
        return Err(Error::domain(
            "admissibility",
            format!("Euler number {chi} > 2 is not a closed surface"),
        ));
    }
    if k > 0.0 && !(chi == 1 || chi == 2) {
        return Err(Error::domain(
            "admissibility",
            format!("k = {k} > 0 forces χ ∈ {{1, 2}}, got χ = {chi}"),
        ));
    }
    if k >= 0.0 && chi < 0 {
        return Err(Error::domain(
            "admissibility",
            format!("k = {k} ≥ 0 forces χ ≥ 0, got χ = {chi}"),
        ));
    }
    let lambda = lambda_unchecked(chi, k);
    if lambda < -LAMBDA_TOL {
        return Err(Error::domain(
            "admissibility",
            format!("λ_χ(k) = {lambda:e} < 0 for χ = {chi}, k = {k}"),
        ));
    }
    Ok(())
}

/// `λ_χ(k) = 2χ − k w(k)`.
pub fn lambda_chi(chi: i32, k: f64) -> Result<f64> {
    check_admissible(chi, k)?;
    Ok(lambda_unchecked(chi, k))
}

/// `α_χ(k)`: `w + k λ/360` for `k ≥ 0`, `w²` for `k < 0`.
pub fn alpha_chi(chi: i32, k: f64) -> Result<f64> {
    check_admissible(chi, k)?;
    let w = ball_factor(k);
    Ok(if k >= 0.0 {
        w + k * lambda_unchecked(chi, k) / 360.0
    } else {
        w * w
    })
}

/// `k`, `w(k)`, `λ_χ(k)` and `α_χ(k)` for one admissible pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizedInvariants {
    pub chi: i32,
    pub k: f64,
    pub w: f64,
    pub lambda_chi: f64,
    pub alpha_chi: f64,
}

impl NormalizedInvariants {
    /// `λ` is zero within [`LAMBDA_TOL`].
    pub fn is_degenerate(&self) -> bool {
        self.lambda_chi.abs() <= LAMBDA_TOL
    }
}

pub fn normalized_invariants(chi: i32, k: f64) -> Result<NormalizedInvariants> {
    Ok(NormalizedInvariants {
        chi,
        k,
        w: w_of_k(k)?,
        lambda_chi: lambda_chi(chi, k)?,
        alpha_chi: alpha_chi(chi, k)?,
    })
}

/// Area, diameter, radius, Euler number and curvature lower bound of one
/// closed surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceSummary {
    pub area: f64,
    pub diameter: f64,
    pub radius: f64,
    pub euler_chi: i32,
    pub curv_lower: f64,
}

const SUMMARY_RTOL: f64 = 1e-9;

impl SurfaceSummary {
    pub fn new(area: f64, diameter: f64, radius: f64, euler_chi: i32, curv_lower: f64) -> Result<Self> {
        let s = SurfaceSummary {
            area,
            diameter,
            radius,
            euler_chi,
            curv_lower,
        };
        s.validate()?;
        Ok(s)
    }

    /// Checks the metric and topological constraints every closed
    /// surface satisfies, including Bishop's `V ≤ v_κ(R)`.
    pub fn validate(&self) -> Result<()> {
        const CTX: &str = "surface summary";
        let SurfaceSummary {
            area,
            diameter,
            radius,
            euler_chi,
            curv_lower,
        } = *self;
        if !(area > 0.0 && diameter > 0.0 && radius > 0.0) || !curv_lower.is_finite() {
            return Err(Error::domain(CTX, "area, diameter and radius must be positive"));
        }
        if radius < 0.5 * diameter * (1.0 - SUMMARY_RTOL) || radius > diameter * (1.0 + SUMMARY_RTOL) {
            return Err(Error::domain(
                CTX,
                format!("radius {radius} outside [D/2, D] for D = {diameter}"),
            ));
        }
        let k = curv_lower * diameter * diameter;
        check_k(CTX, k)?;
        if euler_chi > 2 {
            return Err(Error::domain(CTX, format!("Euler number {euler_chi} > 2")));
        }
        if curv_lower > 0.0 && !(euler_chi == 1 || euler_chi == 2) {
            return Err(Error::domain(CTX, "positive curvature forces χ ∈ {1, 2}"));
        }
        if curv_lower >= 0.0 && euler_chi < 0 {
            return Err(Error::domain(CTX, "nonnegative curvature forces χ ≥ 0"));
        }
        let bishop = v_kappa(curv_lower, radius)?;
        if area > bishop * (1.0 + SUMMARY_RTOL) {
            return Err(Error::domain(
                CTX,
                format!("area {area} exceeds the Bishop bound v_κ(R) = {bishop}"),
            ));
        }
        Ok(())
    }

    /// `V / D²`.
    pub fn area_ratio(&self) -> f64 {
        self.area / (self.diameter * self.diameter)
    }

    /// `k = κ D²`.
    pub fn k(&self) -> f64 {
        self.curv_lower * self.diameter * self.diameter
    }

    /// `ρ = R / D`.
    pub fn rho(&self) -> f64 {
        self.radius / self.diameter
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn v_kappa_examples() {
        assert!(close(v_kappa(0.0, 1.0).unwrap(), PI, 1e-15));
        for kappa in [-3.0, 0.0, 0.5, 2.0] {
            assert_eq!(v_kappa(kappa, 0.0).unwrap(), 0.0);
        }
        // whole unit sphere
        assert!(close(v_kappa(1.0, PI).unwrap(), 4.0 * PI, 1e-14));
    }

    #[test]
    fn v_kappa_rejects_out_of_domain() {
        assert!(v_kappa(0.0, -1e-3).is_err());
        assert!(v_kappa(1.0, PI * 1.001).is_err());
        assert!(v_kappa(4.0, PI / 2.0).is_ok());
        assert!(v_kappa(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn v_tilde_examples() {
        assert!(close(v_tilde(0.0, 1.0).unwrap(), PI / 12.0, 1e-15));
        assert_eq!(v_tilde(-2.0, 0.0).unwrap(), 0.0);
        let expected = PI * (1.0 + 2.0 * 1f64.cos() - 2.0);
        assert!(close(v_tilde(1.0, 1.0).unwrap(), expected, 1e-13));
        assert!(v_tilde(1.0, -1.0).is_err());
    }

    #[test]
    fn w_examples() {
        assert_eq!(w_of_k(0.0).unwrap(), 1.0);
        assert!(close(w_of_k(K_MAX).unwrap(), 4.0 / K_MAX, 1e-15));
        assert!(close(w_of_k(-1.0).unwrap(), 2.0 * (1f64.cosh() - 1.0), 1e-15));
        assert!(w_of_k(K_MAX * 1.01).is_err());
    }

    #[test]
    fn w_series_matches_low_order_expansion() {
        for k in [-1e-3, -1e-5, 1e-5, 1e-3] {
            let approx = 1.0 - k / 12.0 + k * k / 360.0;
            assert!((w_of_k(k).unwrap() - approx).abs() <= 1e-3 * k.abs().powi(3));
        }
    }

    #[test]
    fn lambda_examples() {
        assert!(lambda_chi(2, K_MAX).unwrap().abs() <= LAMBDA_TOL);
        assert!(lambda_chi(1, K_MAX / 4.0).unwrap().abs() <= LAMBDA_TOL);
        assert_eq!(lambda_chi(0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn lambda_matches_cosine_identity_for_positive_k() {
        for chi in [1, 2] {
            for i in 1..=100 {
                let k = K_MAX * f64::from(i) / 100.0;
                let Ok(lambda) = lambda_chi(chi, k) else {
                    assert_eq!(chi, 1);
                    continue;
                };
                let identity = 2.0 * (f64::from(chi) - 1.0 + k.sqrt().cos());
                assert!((lambda - identity).abs() <= 1e-12, "chi {chi} k {k}");
            }
        }
    }

    #[test]
    fn admissibility() {
        assert!(lambda_chi(0, 0.5).is_err());
        assert!(lambda_chi(-2, 0.0).is_err());
        assert!(lambda_chi(3, -1.0).is_err());
        assert!(lambda_chi(1, 3.0).is_err()); // beyond π²/4
        assert!(lambda_chi(-4, -1.0).is_err()); // Gauss–Bonnet: 2χ ≥ k w(k)
        assert!(lambda_chi(-4, -12.0).is_ok());
        assert!(lambda_chi(2, K_MAX + 1e-3).is_err());
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_chi(2, 0.0).unwrap(), 1.0);
        assert!(close(alpha_chi(2, K_MAX).unwrap(), 4.0 / K_MAX, 1e-14));
        let w = 2.0 * (1f64.cosh() - 1.0);
        assert!(close(alpha_chi(2, -1.0).unwrap(), w * w, 1e-15));
    }

    #[test]
    fn normalized_examples() {
        let n = normalized_invariants(2, 0.0).unwrap();
        assert_eq!((n.k, n.w, n.lambda_chi, n.alpha_chi), (0.0, 1.0, 4.0, 1.0));
        let n = normalized_invariants(1, 0.0).unwrap();
        assert_eq!((n.k, n.w, n.lambda_chi, n.alpha_chi), (0.0, 1.0, 2.0, 1.0));
        let n = normalized_invariants(2, K_MAX).unwrap();
        assert!(close(n.w, 4.0 / K_MAX, 1e-15));
        assert!(n.is_degenerate());
        assert!(close(n.alpha_chi, 4.0 / K_MAX, 1e-14));
    }

    #[test]
    fn branches_agree_across_switch() {
        for &t in &[SERIES_THRESHOLD, V_TILDE_SERIES_THRESHOLD] {
            for scale in [0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 2.0] {
                for sign in [-1.0, 1.0] {
                    let x = sign * t * scale;
                    let g = (ball_factor_series(x) - ball_factor_closed(x)).abs();
                    if t == SERIES_THRESHOLD {
                        assert!(g <= 1e-12, "ball factor at {x}: {g:e}");
                    }
                    let h = double_integral_factor_series(x) - double_integral_factor_closed(x);
                    if t == V_TILDE_SERIES_THRESHOLD {
                        assert!(h.abs() * 12.0 <= 1e-12, "double factor at {x}: {h:e}");
                    }
                }
            }
        }
    }

    #[test]
    fn continuity_at_zero_curvature() {
        for i in 0..=40 {
            let r = 2.0 * f64::from(i) / 40.0;
            for kappa in [-1e-6, -1e-9, 0.0, 1e-9, 1e-6] {
                assert!((v_kappa(kappa, r).unwrap() - PI * r * r).abs() <= 1e-5);
                assert!((v_tilde(kappa, r).unwrap() - PI * r.powi(4) / 12.0).abs() <= 1e-5);
            }
        }
    }

    #[test]
    fn summary_rejects_inconsistent_invariants() {
        assert!(SurfaceSummary::new(4.0 * PI, PI, PI, 2, 1.0).is_ok());
        assert!(SurfaceSummary::new(1.0, 1.0, 0.4, 0, 0.0).is_err());
        assert!(SurfaceSummary::new(1.0, 1.0, 1.0, 3, 0.0).is_err());
        assert!(SurfaceSummary::new(1.0, 1.0, 1.0, 0, 0.5).is_err());
        assert!(SurfaceSummary::new(1.0, 1.0, 1.0, -2, 0.0).is_err());
        assert!(SurfaceSummary::new(4.0, 1.0, 1.0, 0, 0.0).is_err()); // 4 > π·1²
        assert!(SurfaceSummary::new(1.0, 2.0, 2.0, 2, 4.0).is_err()); // k = 16 > π²
    }
}
