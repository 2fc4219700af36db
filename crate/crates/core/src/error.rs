use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("inexact division")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("gcd of an all-zero family")]
    AllZero,
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantInput,
    #[error("matrix entry ({row}, {col}) is not homogeneous of degree {expected}")]
    Inhomogeneous { row: usize, col: usize, expected: i64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSize { k: usize, rows: usize, cols: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("Hilbert polynomial did not stabilize below degree {cap}")]
    NotStabilized { cap: i64 },
    #[error("degree window exhausted before q stabilized at n = {n_max}")]
    WindowExhausted { n_max: i64 },
    #[error("the sheaf is dissociated; no curve family exists")]
    Dissociated,
    #[error("total mass of p is {got}, expected {expected}")]
    MassMismatch { got: u64, expected: u64 },
    #[error("p is not admissible: {0}")]
    Inadmissible(String),
    #[error("morphism check failed: {0}")]
    MorphismCheck(String),
    #[error("Hilbert polynomial does not have the shape of a twisted curve ideal: {0}")]
    ShapeMismatch(String),
    #[error("non-integral sheaf degree {0}")]
    NonIntegralDegree(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("retry cap of {0} exceeded while sampling a general morphism")]
    RetryCap(usize),
    #[error("fixture check failed: {0}")]
    Fixture(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
