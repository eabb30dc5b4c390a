use thiserror::Error;

/// Every failure the library reports. Variants map onto the machine-readable
/// `error` tags emitted by the command-line tool.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field towers")]
    TowerMismatch,
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("tower too small for {what}; adjoin a root of {missing}")]
    TowerTooSmall { what: String, missing: String },
    #[error("points are not in general position")]
    NotGeneralPosition,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("singular curve: lambda^3 = 1")]
    SingularCurve,
    #[error("points lie on different curves")]
    CurveMismatch,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("curve with j = {j} must be given in the fixed form lambda = {expected}")]
    NotFixedForm { j: String, expected: String },
    #[error("exceptional set is only defined for lambda = 0")]
    ExceptionalNeedsLambdaZero,
    #[error("sigma is not determined at this point: pencil rank {rank}")]
    SigmaUndetermined { rank: usize },
    #[error("point is not on the point variety")]
    NotOnVariety,
    #[error("relation kernel has dimension {0}, expected 3")]
    KernelDimension(usize),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("map is undefined at a point")]
    MapUndefined,
    #[error("not enough sample points: {0}")]
    Sampling(String),
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// Short stable tag used in JSON error objects.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::TowerMismatch => "tower_mismatch",
            Error::InvalidTower(_) => "invalid_tower",
            Error::Parse(_) => "parse",
            Error::TowerTooSmall { .. } => "tower_too_small",
            Error::NotGeneralPosition => "not_general_position",
            Error::SingularMatrix => "singular_matrix",
            Error::SingularCurve => "singular_curve",
            Error::CurveMismatch => "curve_mismatch",
            Error::NotOnCurve => "not_on_curve",
            Error::NotFixedForm { .. } => "not_fixed_form",
            Error::ExceptionalNeedsLambdaZero => "exceptional_needs_lambda_zero",
            Error::SigmaUndetermined { .. } => "sigma_undetermined",
            Error::NotOnVariety => "not_on_variety",
            Error::KernelDimension(_) => "kernel_dimension",
            Error::Constraint(_) => "constraint",
            Error::MapUndefined => "map_undefined",
            Error::Sampling(_) => "sampling",
            Error::Unsupported(_) => "unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
