use thiserror::Error;

/// Error type shared by every module in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not meet its tolerance within the term budget.
    #[error("series did not converge within {max_terms} terms (last term magnitude {last_term:.3e})")]
    NonConvergent { max_terms: usize, last_term: f64 },

    /// Evaluation requested at a pole of the kernel.
    #[error("singular argument: {0}")]
    SingularArgument(String),

    /// The integrand is not integrable against the requested measure.
    #[error("integrability violated: {0}")]
    Integrability(String),

    /// Construction of a quadrature rule failed.
    #[error("quadrature build failed: {0}")]
    Build(String),
}

pub type Result<T> = std::result::Result<T, Error>;
