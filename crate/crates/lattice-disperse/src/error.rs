use thiserror::Error;

/// Crate-wide error type.
///
/// Domain errors name the violated constraint explicitly; a silently clamped
/// constant would poison every downstream verdict.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter fell outside the admissible range of a closed form.
    #[error("domain error in {what}: {constraint}")]
    Domain { what: &'static str, constraint: String },

    /// Quadrature failed to reach the requested tolerance within budget.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// Requested accuracy is unattainable in double precision.
    #[error("tolerance unattainable: {0}")]
    Tolerance(String),

    /// Linear-algebra contract violation (e.g. non-hermitian input).
    #[error("linear algebra: {0}")]
    Linalg(String),

    /// Evolution time exceeds what the truncation box can support.
    #[error("causality budget exceeded: {0}")]
    Causality(String),

    /// Configuration or input file problem.
    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(what: &'static str, constraint: impl Into<String>) -> Self {
        Error::Domain { what, constraint: constraint.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
