//! Numerical verification of an integral identity for the complex Laplacian
//! on domains in complex space forms, together with the boundary operators
//! (second fundamental form, Levi form, Kohn Laplacian) and the rigidity
//! chain for totally umbilical real hypersurfaces that the identity feeds.
//!
//! Everything is exact-arithmetic-free: fields are closed-form expressions
//! differentiated by forward jets, integrals are tensor Gauss-Legendre rules,
//! and every derived quantity is cross-checked against an independent oracle
//! in the test suite.

pub mod ambient;
pub mod boundary;
pub mod cli;
pub mod crextend;
pub mod hypersurface;
pub mod jets;
pub mod linalg;
pub mod quadrature;
pub mod scalar;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("point outside the model chart: {0}")]
    ChartViolation(String),
    #[error("metric not invertible at the requested point")]
    SingularMetric,
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error("operation not applicable here: {0}")]
    NotApplicable(String),
    #[error("field not differentiable at the requested point: {0}")]
    NotDifferentiable(String),
    #[error("frame construction failed: {0}")]
    FrameFailure(String),
    #[error("root finding failed: {0}")]
    RootFind(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}
