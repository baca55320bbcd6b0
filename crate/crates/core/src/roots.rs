//! Bracketing bisection with a residual certificate.

use serde::Serialize;

use crate::error::{Error, Result};

/// Outcome of a bracketed solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootSolveResult {
    /// Abscissa of the root, inside the initial bracket.
    pub r: f64,
    /// Function value at `r`.
    pub residual: f64,
    pub iterations: usize,
    /// `max(|f(lo)|, |f(hi)|)` at entry; residuals are judged against it.
    pub scale: f64,
}

impl RootSolveResult {
    /// `|residual| ≤ rel · scale`.
    pub fn certified(&self, rel: f64) -> bool {
        self.residual.abs() <= rel * self.scale
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Bisection {
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl Default for Bisection {
    fn default() -> Self {
        Bisection {
            abs_tol: 1e-14,
            max_iter: 200,
        }
    }
}

impl Bisection {
    /// Finds a sign change of `f` in `[lo, hi]`.
    ///
    /// The bracket must satisfy `f(lo) · f(hi) ≤ 0` on entry.
    pub fn solve<F>(&self, context: &'static str, lo: f64, hi: f64, mut f: F) -> Result<RootSolveResult>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let (mut a, mut b) = (lo, hi);
        let mut fa = f(a)?;
        let fb = f(b)?;
        if !(fa.is_finite() && fb.is_finite()) || fa * fb > 0.0 {
            return Err(Error::NoBracket {
                context,
                lo,
                hi,
                f_lo: fa,
                f_hi: fb,
            });
        }
        let scale = fa.abs().max(fb.abs());
        if fa == 0.0 {
            return Ok(RootSolveResult { r: a, residual: 0.0, iterations: 0, scale });
        }
        if fb == 0.0 {
            return Ok(RootSolveResult { r: b, residual: 0.0, iterations: 0, scale });
        }
        let (mut best, mut f_best) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };

        for iteration in 1..=self.max_iter {
            let mid = 0.5 * (a + b);
            let fm = f(mid)?;
            if fm.abs() < f_best.abs() {
                best = mid;
                f_best = fm;
            }
            if fm == 0.0 || (b - a) <= self.abs_tol || mid == a || mid == b {
                return Ok(RootSolveResult {
                    r: best,
                    residual: f_best,
                    iterations: iteration,
                    scale,
                });
            }
            if (fa < 0.0) == (fm < 0.0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        Err(Error::Convergence {
            context,
            iterations: self.max_iter,
            width: b - a,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let res = Bisection::default()
            .solve("test", 0.0, 2.0, |x| Ok(x * x - 2.0))
            .unwrap();
        assert!((res.r - 2f64.sqrt()).abs() < 1e-13);
        assert!(res.certified(1e-12));
        assert!(res.iterations <= 60);
    }

    #[test]
    fn rejects_missing_sign_change() {
        let err = Bisection::default().solve("test", 0.0, 1.0, |x| Ok(x + 1.0));
        assert!(matches!(err, Err(Error::NoBracket { .. })));
    }

    #[test]
    fn reports_non_convergence() {
        let solver = Bisection {
            abs_tol: 0.0,
            max_iter: 5,
        };
        let err = solver.solve("test", 0.0, 2.0, |x| Ok(x * x - 2.0));
        assert!(matches!(err, Err(Error::Convergence { iterations: 5, .. })));
    }

    #[test]
    fn endpoint_root() {
        let res = Bisection::default().solve("test", 0.0, 1.0, |x| Ok(x - 1.0)).unwrap();
        assert_eq!(res.r, 1.0);
        assert_eq!(res.iterations, 0);
    }
}
