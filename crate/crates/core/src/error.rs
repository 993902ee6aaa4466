use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WfError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("non-finite value {value} at x = {x}")]
    NonFinite { x: f64, value: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(
        "grid does not cover the window support [{lo}, {hi}] (grid is [{grid_lo}, {grid_hi}))"
    )]
    Coverage {
        lo: f64,
        hi: f64,
        grid_lo: f64,
        grid_hi: f64,
    },

    #[error("sampling too coarse: {0}")]
    Resolution(String),

    #[error("window pair is numerically orthogonal: |<psi, phi>| = {0:e}")]
    OrthogonalWindows(f64),

    #[error("flow diverged at step {step}: state ({x}, {xi})")]
    Divergence { step: usize, x: f64, xi: f64 },

    #[error("branch tracking failed at t = {t}: argument jump {jump} exceeds pi/2")]
    BranchTracking { t: f64, jump: f64 },

    #[error("domain too small: {fraction:e} of the norm sits in the outer 5% of the grid")]
    DomainTooSmall { fraction: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, WfError>;
