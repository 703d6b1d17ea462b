//! Error type shared by all construction, solving, and verification routines.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A moment linear system turned out singular. The message names the
    /// indices (n, m, alpha, nu) of the offending system.
    #[error("degenerate system: {0}")]
    DegenerateSystem(String),

    /// Requested an operation off the near-diagonal index set it is defined on.
    #[error("unsupported index: {0}")]
    UnsupportedIndex(String),

    /// Two constructions that must agree exactly did not.
    #[error("identity violation: {0}")]
    IdentityViolation(String),

    /// A Hermite-Pade residual had a nonzero coefficient before the contracted order.
    #[error("order violation: {0}")]
    OrderViolation(String),

    #[error("zero-location violation: {0}")]
    ZeroLocation(String),

    #[error("quadrature did not converge: achieved relative error {achieved:.3e}, requested {requested:.3e}")]
    QuadratureNoConvergence { achieved: f64, requested: f64 },

    #[error("internal invariant violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
