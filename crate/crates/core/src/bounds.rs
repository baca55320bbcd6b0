//! Upper bounds on `V / D²` for closed surfaces with curvature `K ≥ κ`.
//!
//! Everything here is in the normalization `D = 1`, so `k = κ D²` and the
//! radius enters as `ρ = R / D ∈ [1/2, 1]`. The bounds are:
//!
//! * the Bishop bounds `v_k(1)` and `v_k(ρ)`;
//! * the radius bound obtained by integrating the Gauss–Bonnet defect over
//!   all balls ([`prop_bound`], and its flat special case
//!   [`corollary_radius_bound`]);
//! * the diameter-only closed form ([`theorem_bound`]), which relaxes the
//!   crossing equation between the radius bound and `v_k(r)`;
//! * the crossing itself solved numerically ([`root_bound`]), and for
//!   `k < 0` the sharper quartic relaxation ([`quartic_bound`]).

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{Bisection, RootSolveResult};
use crate::spaceform::{
    check_admissible, normalized_invariants, v_kappa, v_tilde, w_of_k, NormalizedInvariants, K_MAX,
    LAMBDA_TOL,
};

/// Lower end of the bisection bracket for the crossing radius.
pub const ROOT_BRACKET_LO: f64 = 1e-9;

const RHO_TOL: f64 = 1e-12;

/// How far `k` may sit from an equality case of `λ_χ(k) = 0` and still be
/// treated as that case.
const RIGIDITY_K_TOL: f64 = 1e-4;

fn check_rho(context: &'static str, rho: f64) -> Result<()> {
    if !(0.5 - RHO_TOL..=1.0 + RHO_TOL).contains(&rho) {
        return Err(Error::domain(context, format!("ρ = {rho} outside [1/2, 1]")));
    }
    Ok(())
}

/// Bishop's `V ≤ v_κ(R)` in units of `D²`.
pub fn bishop_bound(k: f64, rho: f64) -> Result<f64> {
    check_rho("bishop_bound", rho)?;
    w_of_k(k)?;
    v_kappa(k, rho)
}

/// `(χ, k)` is one of the equality cases of `λ_χ(k) = 0`: the round
/// sphere (`k = π²`), the round projective plane (`k = π²/4`) or a flat
/// surface (`k = 0`).
pub fn is_rigidity_point(chi: i32, k: f64) -> bool {
    match chi {
        2 => (k - K_MAX).abs() <= RIGIDITY_K_TOL,
        1 => (k - K_MAX / 4.0).abs() <= RIGIDITY_K_TOL,
        0 => k.abs() <= LAMBDA_TOL,
        _ => false,
    }
}

fn positive_lambda(chi: i32, k: f64) -> Result<NormalizedInvariants> {
    let inv = normalized_invariants(chi, k)?;
    if inv.lambda_chi <= LAMBDA_TOL {
        return Err(Error::LambdaNotPositive {
            chi,
            k,
            lambda: inv.lambda_chi,
        });
    }
    Ok(inv)
}

/// Squared radius `r*²` of the diameter-only estimate.
///
/// Evaluated as `2α / (w + √(w² + λα/3))`, the rationalized form of
/// `(−6w + 6√(w² + λα/3)) / λ`, which stays accurate as `λ → 0`.
pub fn theorem_radius_sq(chi: i32, k: f64) -> Result<f64> {
    let inv = positive_lambda(chi, k)?;
    let NormalizedInvariants {
        w,
        lambda_chi: lambda,
        alpha_chi: alpha,
        ..
    } = inv;
    Ok(2.0 * alpha / (w + (w * w + lambda * alpha / 3.0).sqrt()))
}

/// The closed-form diameter bound `v_k(r*)`, valid when `λ_χ(k) > 0`.
pub fn theorem_bound(chi: i32, k: f64) -> Result<f64> {
    let r2 = theorem_radius_sq(chi, k)?;
    v_kappa(k, r2.sqrt())
}

/// `(√(9 + 6χ) − 3) π / χ`, the flat-curvature value of [`theorem_bound`].
pub fn corollary_flat_constant(chi: i32) -> Result<f64> {
    if !(chi == 1 || chi == 2) {
        return Err(Error::domain(
            "corollary_flat_constant",
            format!("χ must be 1 or 2, got {chi}"),
        ));
    }
    let chi = f64::from(chi);
    Ok(((9.0 + 6.0 * chi).sqrt() - 3.0) * PI / chi)
}

/// Radius-aware bound on `V/D²`.
pub fn prop_bound(chi: i32, k: f64, rho: f64) -> Result<f64> {
    check_admissible(chi, k)?;
    check_rho("prop_bound", rho)?;
    let v1 = v_kappa(k, 1.0)?;
    let vt_rho = v_tilde(k, rho)?;
    let head = PI - 2.0 * PI * f64::from(chi) * vt_rho / v1;
    if k >= 0.0 {
        Ok(head)
    } else {
        let vt_one = v_tilde(k, 1.0)?;
        Ok((head - k * vt_one) / (1.0 - k * vt_rho / v1))
    }
}

/// `π (1 − χ ρ⁴ / 6)` for nonnegative curvature.
pub fn corollary_radius_bound(chi: i32, rho: f64) -> Result<f64> {
    check_admissible(chi, 0.0)?;
    check_rho("corollary_radius_bound", rho)?;
    Ok(PI * (1.0 - f64::from(chi) * rho.powi(4) / 6.0))
}

/// Decreasing side of the crossing equation: the radius bound with `ρ`
/// replaced by a free `r`.
pub fn crossing_lhs(chi: i32, k: f64, r: f64) -> Result<f64> {
    let v1 = v_kappa(k, 1.0)?;
    let vt = v_tilde(k, r)?;
    let head = PI - 2.0 * PI * f64::from(chi) * vt / v1;
    if k >= 0.0 {
        Ok(head)
    } else {
        Ok((head - k * v_tilde(k, 1.0)?) / (1.0 - k * vt / v1))
    }
}

/// Checks on `samples + 1` equally spaced points of `[0, 1]` that
/// [`crossing_lhs`] does not increase.
pub fn crossing_lhs_is_monotone(chi: i32, k: f64, samples: usize) -> Result<bool> {
    let mut prev = crossing_lhs(chi, k, 0.0)?;
    for i in 1..=samples {
        let cur = crossing_lhs(chi, k, i as f64 / samples as f64)?;
        if cur > prev + 1e-13 * prev.abs().max(1.0) {
            return Ok(false);
        }
        prev = cur;
    }
    Ok(true)
}

/// Result of [`root_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootBound {
    /// `v_k(r)` at the crossing radius (or at `r = 1`).
    pub value: f64,
    pub r: f64,
    /// `None` when the two sides do not cross inside the bracket, in which
    /// case the supremum of their minimum sits at `r = 1`.
    pub solve: Option<RootSolveResult>,
}

/// Supremum over `r ≤ 1` of `min(crossing_lhs(r), v_k(r))`, found by
/// bisecting the crossing.
pub fn root_bound(chi: i32, k: f64) -> Result<RootBound> {
    let inv = normalized_invariants(chi, k)?;
    if inv.lambda_chi <= LAMBDA_TOL && !is_rigidity_point(chi, k) {
        return Err(Error::LambdaNotPositive {
            chi,
            k,
            lambda: inv.lambda_chi,
        });
    }
    if !crossing_lhs_is_monotone(chi, k, 32)? {
        return Err(Error::domain(
            "root_bound",
            format!("crossing equation is not monotone for χ = {chi}, k = {k}"),
        ));
    }
    let gap = |r: f64| -> Result<f64> { Ok(crossing_lhs(chi, k, r)? - v_kappa(k, r)?) };
    let at_one = gap(1.0)?;
    if at_one >= 0.0 {
        let v1 = v_kappa(k, 1.0)?;
        return Ok(RootBound {
            value: v1.min(crossing_lhs(chi, k, 1.0)?),
            r: 1.0,
            solve: None,
        });
    }
    let solve = Bisection::default().solve("root_bound", ROOT_BRACKET_LO, 1.0, gap)?;
    Ok(RootBound {
        value: v_kappa(k, solve.r)?,
        r: solve.r,
        solve: Some(solve),
    })
}

/// `G(r) = k² r⁸/144 + (λ − k r²) r⁴/12 + w r² − w²`, the quartic in `r²`
/// obtained from the exact `k < 0` crossing identity by `f(r) ≥ r⁴/12`.
pub fn quartic_residual(inv: &NormalizedInvariants, r: f64) -> f64 {
    let NormalizedInvariants {
        k,
        w,
        lambda_chi: lambda,
        ..
    } = *inv;
    let r2 = r * r;
    let r4 = r2 * r2;
    k * k * r4 * r4 / 144.0 + (lambda - k * r2) * r4 / 12.0 + w * r2 - w * w
}

/// Root of [`quartic_residual`], which increases on `r ≥ 0` for `k < 0`.
pub fn quartic_root(chi: i32, k: f64) -> Result<RootSolveResult> {
    if k >= 0.0 {
        return Err(Error::domain("quartic_bound", format!("needs k < 0, got {k}")));
    }
    let inv = positive_lambda(chi, k)?;
    let mut hi = 1.0;
    while quartic_residual(&inv, hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::domain("quartic_bound", "quartic has no positive root"));
        }
    }
    Bisection::default().solve("quartic_bound", ROOT_BRACKET_LO, hi, |r| {
        Ok(quartic_residual(&inv, r))
    })
}

/// `v_k(r_q)` at the root of the quartic relaxation; `k < 0` only.
pub fn quartic_bound(chi: i32, k: f64) -> Result<f64> {
    let solve = quartic_root(chi, k)?;
    v_kappa(k, solve.r)
}

/// Names of the bounds collected in a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    Theorem,
    Root,
    Quartic,
    Proposition,
    CorollaryRadius,
    BishopRadius,
    BishopDiameter,
    Trivial,
}

impl BoundName {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Theorem => "theorem",
            BoundName::Root => "root",
            BoundName::Quartic => "quartic",
            BoundName::Proposition => "proposition",
            BoundName::CorollaryRadius => "corollary_radius",
            BoundName::BishopRadius => "bishop_radius",
            BoundName::BishopDiameter => "bishop_diameter",
            BoundName::Trivial => "trivial",
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Every applicable upper bound on `V/D²` for one `(χ, k, ρ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub chi: i32,
    pub k: f64,
    pub rho: Option<f64>,
    pub invariants: NormalizedInvariants,
    /// `π`; a valid bound only when `k ≥ 0`.
    pub trivial_pi: f64,
    pub theorem_bound: Option<f64>,
    /// The theorem slot holds the `λ → 0` limit `v_k(1)`.
    pub theorem_is_limit: bool,
    pub root_bound: Option<f64>,
    pub quartic_bound: Option<f64>,
    pub bishop_at_d: f64,
    pub bishop_at_r: Option<f64>,
    pub prop_bound: Option<f64>,
    pub corollary_radius_bound: Option<f64>,
    pub best: f64,
    pub best_name: BoundName,
}

fn tag(field: &'static str) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Domain { detail, .. } => Error::Domain {
            context: field,
            detail,
        },
        other => other,
    }
}

/// Collects every bound that applies to `(χ, k)` and, if given, `ρ`.
pub fn report(chi: i32, k: f64, rho: Option<f64>) -> Result<BoundReport> {
    let invariants = normalized_invariants(chi, k).map_err(tag("report.invariants"))?;
    if let Some(rho) = rho {
        check_rho("report.rho", rho)?;
    }

    let (theorem, theorem_is_limit, root, quartic) = if invariants.is_degenerate() {
        if !is_rigidity_point(chi, k) {
            return Err(Error::LambdaNotPositive {
                chi,
                k,
                lambda: invariants.lambda_chi,
            });
        }
        let limit = v_kappa(k, 1.0).map_err(tag("report.theorem_bound"))?;
        let root = root_bound(chi, k).map_err(tag("report.root_bound"))?;
        (Some(limit), true, Some(root.value), None)
    } else {
        let theorem = theorem_bound(chi, k).map_err(tag("report.theorem_bound"))?;
        let root = root_bound(chi, k).map_err(tag("report.root_bound"))?;
        let quartic = if k < 0.0 {
            Some(quartic_bound(chi, k).map_err(tag("report.quartic_bound"))?)
        } else {
            None
        };
        (Some(theorem), false, Some(root.value), quartic)
    };

    let bishop_at_d = v_kappa(k, 1.0).map_err(tag("report.bishop_at_d"))?;
    let (bishop_at_r, prop, corollary) = match rho {
        Some(rho) => (
            Some(bishop_bound(k, rho).map_err(tag("report.bishop_at_r"))?),
            Some(prop_bound(chi, k, rho).map_err(tag("report.prop_bound"))?),
            if k >= 0.0 && chi >= 0 {
                Some(corollary_radius_bound(chi, rho).map_err(tag("report.corollary_radius_bound"))?)
            } else {
                None
            },
        ),
        None => (None, None, None),
    };

    let trivial_pi = PI;
    let candidates = [
        (BoundName::Theorem, theorem),
        (BoundName::Root, root),
        (BoundName::Quartic, quartic),
        (BoundName::Proposition, prop),
        (BoundName::CorollaryRadius, corollary),
        (BoundName::BishopRadius, bishop_at_r),
        (BoundName::BishopDiameter, Some(bishop_at_d)),
        (BoundName::Trivial, (k >= 0.0).then_some(trivial_pi)),
    ];
    let best = candidates
        .iter()
        .filter_map(|c| c.1)
        .fold(f64::INFINITY, f64::min);
    // earliest name wins among exact ties
    let best_name = candidates
        .iter()
        .find(|c| c.1 == Some(best))
        .map_or(BoundName::BishopDiameter, |c| c.0);

    Ok(BoundReport {
        chi,
        k,
        rho,
        invariants,
        trivial_pi,
        theorem_bound: theorem,
        theorem_is_limit,
        root_bound: root,
        quartic_bound: quartic,
        bishop_at_d,
        bishop_at_r,
        prop_bound: prop,
        corollary_radius_bound: corollary,
        best,
        best_name,
    })
}

impl BoundReport {
    /// All present bounds with their names, in report order.
    pub fn present(&self) -> Vec<(BoundName, f64)> {
        [
            (BoundName::Theorem, self.theorem_bound),
            (BoundName::Root, self.root_bound),
            (BoundName::Quartic, self.quartic_bound),
            (BoundName::Proposition, self.prop_bound),
            (BoundName::CorollaryRadius, self.corollary_radius_bound),
            (BoundName::BishopRadius, self.bishop_at_r),
            (BoundName::BishopDiameter, Some(self.bishop_at_d)),
            (BoundName::Trivial, (self.k >= 0.0).then_some(self.trivial_pi)),
        ]
        .into_iter()
        .filter_map(|(n, v)| v.map(|v| (n, v)))
        .collect()
    }

    /// Checks the internal consistency of the report; returns the first
    /// violated relation.
    pub fn check(&self) -> std::result::Result<(), String> {
        const TOL: f64 = 1e-9;
        let present = self.present();
        if self.k >= 0.0 {
            if let Some((name, v)) = present.iter().find(|(_, v)| *v > self.trivial_pi + TOL) {
                return Err(format!("{name} = {v} exceeds π"));
            }
        }
        let min = present.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        if self.best != min {
            return Err(format!("best = {} but minimum is {min}", self.best));
        }
        if !present.iter().any(|&(n, v)| n == self.best_name && v == self.best) {
            return Err(format!("best_name {} does not attain best", self.best_name));
        }
        if let (Some(root), Some(theorem)) = (self.root_bound, self.theorem_bound) {
            if root > theorem + TOL {
                return Err(format!("root {root} > theorem {theorem}"));
            }
            if let Some(quartic) = self.quartic_bound {
                if root > quartic + TOL || quartic > theorem + TOL {
                    return Err(format!("quartic {quartic} outside [root {root}, theorem {theorem}]"));
                }
            }
        }
        Ok(())
    }
}
