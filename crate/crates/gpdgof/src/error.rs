use thiserror::Error;

/// Errors produced by distribution evaluations, estimators and tests.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Scale parameter must be strictly positive and finite.
    #[error("scale must be positive and finite, got {0}")]
    InvalidScale(f64),

    /// Shape parameter must be finite.
    #[error("shape must be finite, got {0}")]
    InvalidShape(f64),

    /// Argument lies outside the support of the distribution.
    #[error("argument {value} outside support {support}")]
    OutsideSupport { value: f64, support: String },

    /// Probability argument outside its valid range.
    #[error("probability {0} outside [0, 1)")]
    InvalidProbability(f64),

    /// The requested quantity diverges for these parameters.
    #[error("{what} diverges for shape {beta}")]
    Divergent { what: &'static str, beta: f64 },

    /// Density is unbounded at the requested point.
    #[error("density unbounded at support boundary for shape {0} < -1")]
    UnboundedDensity(f64),

    /// A sample failed validation.
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// Too few observations for the requested operation.
    #[error("need at least {min} observations, got {n}")]
    TooFewObservations { min: usize, n: usize },

    /// Estimation is impossible on this sample (for example all values equal).
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    /// Estimator tuning parameter out of range.
    #[error("invalid parameter {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// A fitted distribution cannot host the observed data.
    #[error("support violation: theta + beta*x = {denominator} <= 0 at x = {value}")]
    SupportViolation { value: f64, denominator: f64 },

    /// The censoring-weight denominator vanished at an uncensored time.
    #[error("inestimable tail: censoring survival is zero at uncensored time {time}")]
    InestimableTail { time: f64 },

    /// Numerical integration failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),

    /// Too many Monte Carlo replications failed.
    #[error("simulation integrity: {failed} of {total} replications failed")]
    SimulationIntegrity { failed: usize, total: usize },

    /// Invalid distribution parameters for an alternative family.
    #[error("invalid {family} parameters: {message}")]
    InvalidAltParams { family: &'static str, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
