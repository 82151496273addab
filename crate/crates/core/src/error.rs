use thiserror::Error;

/// Errors raised by the geometric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("tangent vectors are attached to different base points")]
    BasePointMismatch,

    #[error("finite-difference step must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("degenerate parametrization at ({s}, {t})")]
    Degenerate { s: f64, t: f64 },

    #[error("lightlike point at ({s}, {t}): mean curvature is undefined")]
    Lightlike { s: f64, t: f64 },

    #[error("initial velocity is not horizontal (e3 component {0})")]
    NotHorizontal(f64),

    #[error("line direction must be nonzero")]
    ZeroDirection,

    #[error("non-finite geodesic state at t = {t}")]
    NonFinite { t: f64 },

    #[error("singular curve point at s = {0}")]
    SingularCurve(f64),

    #[error("no principal-branch root at ({x}, {y}): outside chart")]
    OutsideChart { x: f64, y: f64 },

    #[error("ill-conditioned least-squares system (singular value ratio {0:e})")]
    IllConditioned(f64),

    #[error("profile is not normalized: alpha(0) = {0}, rotate it first")]
    NotNormalized(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
