use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parameter count mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial is not a member of the ideal: {0}")]
    NotInIdeal(String),

    #[error("structure violation: {0}")]
    Structure(String),

    #[error("matrix is not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("trajectory escaped the bounding box at t = {t}")]
    Escape { t: f64 },

    #[error("section is no longer transversal at t = {t} (angular velocity {theta_dot})")]
    Transversality { t: f64, theta_dot: f64 },

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("root within {distance:e} of the counting circle")]
    BoundaryAmbiguity { distance: f64 },

    #[error("winding number {winding} disagrees with root count {roots}")]
    CountMismatch { winding: i64, roots: usize },
}
