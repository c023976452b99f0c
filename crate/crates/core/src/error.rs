use thiserror::Error;

#[derive(Debug, Error)]
pub enum AcmsError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("tensor is not in C(V): residual {residual:.3e}")]
    NotInCv { residual: f64 },
    #[error("inconsistent intrinsic data: {0}")]
    Inconsistent(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("Lie algebra model fails {what}: residual {residual:.3e}")]
    InvalidModel { what: String, residual: f64 },
    #[error("unknown class label `{0}`")]
    UnknownLabel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("characteristic connection does not exist (class residual {class_residual:.3e}, Killing/skew-N residual {fi_residual:.3e})")]
    NoCharacteristic { class_residual: f64, fi_residual: f64 },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, AcmsError>;
