use thiserror::Error;

/// Errors produced by the comparison functions, bound solvers, surface
/// models and mesh pipelines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where the formula is defined.
    #[error("domain error in {context}: {detail}")]
    Domain {
        context: &'static str,
        detail: String,
    },

    /// The closed-form estimate needs `lambda_chi(k) > 0`.
    #[error("lambda_chi(k) = {lambda:e} is not positive for chi = {chi}, k = {k}")]
    LambdaNotPositive { chi: i32, k: f64, lambda: f64 },

    #[error("{context}: bisection did not converge after {iterations} iterations (width {width:e})")]
    Convergence {
        context: &'static str,
        iterations: usize,
        width: f64,
    },

    #[error("{context}: no sign change on [{lo}, {hi}] (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    NoBracket {
        context: &'static str,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("invalid surface model: {0}")]
    InvalidModel(String),

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("mesh is disconnected: vertex {unreached} unreachable from source {source_vertex}")]
    Disconnected {
        source_vertex: usize,
        unreached: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            context,
            detail: detail.into(),
        }
    }
}
