//! Error taxonomy shared by every module of the crate.
//!
//! Numerical routines in this crate refuse to guess: whenever an input sits
//! outside the mathematical hypotheses of the identity being computed (not
//! accretive, not normal, function pair undefined on a zero singular value,
//! eigenvalue too close to a requested threshold, ...) the operation returns
//! a dedicated error variant instead of silently regularizing.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum OpError {
    /// Input contained NaN or infinite entries, or was structurally unusable.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Matrix dimensions are incompatible with the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A Hermitian matrix was required but ‖H − H*‖ exceeded tolerance.
    #[error("matrix is not Hermitian: ‖H − H*‖ = {residual:.3e} exceeds {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    /// A normal matrix was required but ‖AA* − A*A‖ exceeded tolerance.
    #[error("matrix is not normal: ‖AA* − A*A‖ = {residual:.3e} exceeds {tol:.3e}")]
    NotNormal { residual: f64, tol: f64 },

    /// A positive semidefinite matrix was required but an eigenvalue was
    /// genuinely negative (beyond roundoff clipping).
    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e} below {tol:.3e}")]
    NotPSD { eigenvalue: f64, tol: f64 },

    /// The function pair requires invertibility (e.g. ψ(λ) = 1/λ) but the
    /// matrix has numerically zero singular values.
    #[error("function pair '{label}' is undefined at zero singular values of a rank-deficient matrix")]
    RankDeficiencyConflict { label: String },

    /// φ(σ)·ψ(σ) ≠ σ on some spectral point σ of the target matrix.
    #[error("function pair '{label}' violates φ(σ)ψ(σ) = σ at σ = {point} (defect {defect:.3e})")]
    FunctionPairViolation {
        label: String,
        point: String,
        defect: f64,
    },

    /// A scalar function evaluated to NaN/∞ at a spectral point.
    #[error("function not finite at spectral point {point}")]
    FunctionDomainError { point: String },

    /// The numerical range of the matrix leaves the closed right half-plane.
    #[error("matrix is not accretive: λ_min(Re A) = {margin:.3e} below {tol:.3e}")]
    NotAccretive { margin: f64, tol: f64 },

    /// The quadrature error estimate still exceeded the requested tolerance
    /// at the maximal panel count.
    #[error(
        "quadrature did not converge: error estimate {estimate:.3e} exceeds {target:.3e} at {panels} panels"
    )]
    QuadratureNotConverged {
        estimate: f64,
        target: f64,
        panels: usize,
    },

    /// Complex power exponent must satisfy Re z ∈ (0, 1).
    #[error("exponent real part {re} outside the open interval (0, 1)")]
    ReOutOfRange { re: f64 },

    /// Eigenvector matrix condition number exceeded the diagonalizability gate.
    #[error("matrix is not (robustly) diagonalizable: {0}")]
    NotDiagonalizable(String),

    /// A threshold/endpoint fell inside the protection band around an
    /// eigenvalue without hitting it exactly.
    #[error(
        "spectral threshold {threshold} is {distance:.3e} from an eigenvalue: closer than the gap tolerance {gap:.3e} but not an exact hit"
    )]
    EigenvalueTooClose {
        threshold: String,
        distance: f64,
        gap: f64,
    },

    /// The triple (V, A₁, A₂) does not satisfy VA₁ = A₂V to tolerance.
    #[error("triple is not intertwining: primal residual {residual:.3e} exceeds {tol:.3e}")]
    NotIntertwining { residual: f64, tol: f64 },

    /// ker(Re A) is not contained in ker(Im A): the Hermitian-square
    /// factorization of an accretive matrix does not exist.
    #[error("kernel obstruction: ker(Re A) is not contained in ker(Im A) (coupling {coupling:.3e})")]
    KernelObstruction { coupling: f64 },

    /// Invertibility was required (σ_min too small).
    #[error("matrix is not invertible: σ_min = {sigma_min:.3e} below {tol:.3e}")]
    NotInvertible { sigma_min: f64, tol: f64 },

    /// Sectoriality (numerical range in a sector of half-angle < π/2) was
    /// required but does not hold.
    #[error("matrix is not sectorial: {0}")]
    NotSectorial(String),

    /// A fractional/complex matrix power could not be produced to tolerance
    /// by any available route.
    #[error("matrix power computation failed: {0}")]
    PowerComputationFailed(String),

    /// A relative-bound pair claimed admissible failed re-verification.
    #[error("bound pair (a = {a}, b = {b}) is not admissible: ‖Bf‖ − a‖Af‖ − b‖f‖ = {violation:.3e} > 0")]
    PairNotAdmissible { a: f64, b: f64, violation: f64 },

    /// An inequality hypothesis (e.g. ‖Bf‖ ≤ ‖Af‖) fails on the inputs.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// A matrix with trivial kernel was required.
    #[error("kernel is not trivial: σ_min = {sigma_min:.3e} below {tol:.3e}")]
    KernelNotTrivial { sigma_min: f64, tol: f64 },

    /// A generator parameter that must be nonzero was zero.
    #[error("parameter '{0}' must be nonzero")]
    ZeroParameter(&'static str),

    /// File could not be parsed as a matrix.
    #[error("parse error at {path}:{line}: {message}")]
    ParseError {
        path: String,
        line: usize,
        message: String,
    },

    /// Recognized but unsupported file/format variant.
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    /// Underlying I/O failure.
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// A NaN or infinity reached the serialization boundary.
    #[error("non-finite value in report field '{0}'; refusing to serialize")]
    NonFiniteValue(String),

    /// Two criteria that must agree by theory disagreed — an internal bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    /// One or more verification suites reported failing checks.
    #[error("verification failed in suite(s): {0}")]
    VerificationFailed(String),
}

/// Convenient alias used across the crate.
pub type Result<T> = std::result::Result<T, OpError>;

impl OpError {
    /// Stable machine-readable tag for reports and the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            OpError::InvalidInput(_) => "InvalidInput",
            OpError::DimensionMismatch(_) => "DimensionMismatch",
            OpError::NotHermitian { .. } => "NotHermitian",
            OpError::NotNormal { .. } => "NotNormal",
            OpError::NotPSD { .. } => "NotPSD",
            OpError::RankDeficiencyConflict { .. } => "RankDeficiencyConflict",
            OpError::FunctionPairViolation { .. } => "FunctionPairViolation",
            OpError::FunctionDomainError { .. } => "FunctionDomainError",
            OpError::NotAccretive { .. } => "NotAccretive",
            OpError::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            OpError::ReOutOfRange { .. } => "ReOutOfRange",
            OpError::NotDiagonalizable(_) => "NotDiagonalizable",
            OpError::EigenvalueTooClose { .. } => "EigenvalueTooClose",
            OpError::NotIntertwining { .. } => "NotIntertwining",
            OpError::KernelObstruction { .. } => "KernelObstruction",
            OpError::NotInvertible { .. } => "NotInvertible",
            OpError::NotSectorial(_) => "NotSectorial",
            OpError::PowerComputationFailed(_) => "PowerComputationFailed",
            OpError::PairNotAdmissible { .. } => "PairNotAdmissible",
            OpError::HypothesisViolated(_) => "HypothesisViolated",
            OpError::KernelNotTrivial { .. } => "KernelNotTrivial",
            OpError::ZeroParameter(_) => "ZeroParameter",
            OpError::ParseError { .. } => "ParseError",
            OpError::UnsupportedFormat(_) => "UnsupportedFormat",
            OpError::Io { .. } => "IoError",
            OpError::NonFiniteValue(_) => "NonFiniteValue",
            OpError::Internal(_) => "InternalInconsistency",
            OpError::VerificationFailed(_) => "VerificationFailed",
        }
    }
}
