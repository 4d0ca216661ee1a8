use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Möbius map has a pole at the input point (|cz+d| = {denominator:e})")]
    PoleAtInput { denominator: f64 },

    #[error("map is not hyperbolic: |trace| = {trace} after det-1 normalization")]
    NotHyperbolic { trace: f64 },

    #[error("geodesics coincide")]
    DegenerateGeodesics,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("genus must be ≥ 2 (got {0})")]
    InvalidGenus(usize),

    #[error("side index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("map is not disk-preserving (residual {residual:e})")]
    NotDiskPreserving { residual: f64 },

    #[error("boundary points violate the circular order P_1, Q_1, ..., P_n, Q_n at position {position}")]
    OrderViolation { position: usize },

    #[error("extensions of sides {side} and {next} do not cross inside the disk")]
    NoVertex { side: usize, next: usize },

    #[error("polygon invariant `{name}` violated: observed {observed:e}, tolerance {tolerance:e}")]
    InvariantViolation {
        name: String,
        observed: f64,
        tolerance: f64,
    },

    #[error("{what} outside the parametrized region (argument {value})")]
    OutOfDomain { what: &'static str, value: f64 },

    #[error("Markov violation: image endpoint of interval {interval} at angle {angle} matches no partition point")]
    MarkovViolation { interval: usize, angle: f64 },

    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("geodesic passes through a polygon vertex")]
    Ambiguous,

    #[error("geodesic does not meet the polygon")]
    NotInDomain,

    #[error("target entropy {target} outside (0, {max}]")]
    TargetOutOfRange { target: f64, max: f64 },

    #[error("could not bracket the target entropy: {reason}")]
    BracketFailure { reason: String },

    #[error("unknown parameter `{0}` (expected alpha, beta, gamma, sigma, tau or rho)")]
    UnknownParameter(String),
}

impl Error {
    /// Errors caused by bad inputs or by parameters outside the chart, as
    /// opposed to failed numerical verification.
    pub fn is_domain_error(&self) -> bool {
        !matches!(
            self,
            Error::InvariantViolation { .. }
                | Error::MarkovViolation { .. }
                | Error::NoConvergence { .. }
                | Error::NotDiskPreserving { .. }
        )
    }
}
