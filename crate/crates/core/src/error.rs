use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("search exhausted: {0}")]
    NotFound(String),
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("theorem check violated: {0}")]
    TheoremViolation(String),
    #[error("element is not detectable: {0}")]
    NotDetectable(String),
    #[error("scalar of finite order: no detecting invariant")]
    TorsionScalar,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("infeasible within budget: {0}")]
    Infeasible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
