use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("argument outside domain: {0}")]
    DomainError(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// The kernel degenerates to a Dirac delta for these orders; callers
    /// are expected to apply the shift/identity analytically.
    #[error("Dirac case: {0}")]
    DiracCase(String),

    #[error("representation {0} not applicable: {1}")]
    RepNotApplicable(String, String),

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    /// The integral was observed to grow without bound under refinement.
    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("inverse Laplace oracle failure: {0}")]
    OracleFailure(String),

    #[error("value is not finite: {0}")]
    NotFinite(String),

    #[error("method {0} not applicable: {1}")]
    MethodNotApplicable(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
