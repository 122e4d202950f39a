use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("fractional order must lie in (0,1), got {0}")]
    InvalidOrder(f64),
    #[error("grid too coarse: need N >= 8 and even, got N = {0}")]
    GridTooCoarse(usize),
    #[error("non-finite value in input field")]
    NonFinite,
    #[error("star-shaped parametrization violated: sup|u| = {0} >= 1")]
    StarShapeViolated(f64),
    #[error("C1 bound violated: sup|u'| = {0} >= 1")]
    C1NormExceeded(f64),
    #[error("time step {dt} exceeds stability cap {cap}")]
    StabilityCapExceeded { dt: f64, cap: f64 },
    #[error("quadrature budget exceeded: {needed} kernel evaluations > cap {cap}")]
    QuadratureBudgetExceeded { needed: usize, cap: usize },
    #[error("state not normalized: {0}")]
    NotNormalized(String),
    #[error("mode k = {k} under-resolved on grid N = {n}")]
    ModeUnderResolved { k: usize, n: usize },
    #[error("need at least 3 records, got {0}")]
    InsufficientRecords(usize),
    #[error("rate fit requires positive values on the window")]
    NonPositiveValues,
    #[error("degenerate fit window")]
    DegenerateWindow,
    #[error("invalid config: {0}")]
    ConfigInvalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
