use thiserror::Error;

/// Errors raised by the exact computation layer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HwError {
    #[error("degree mismatch: |lambda| = {0} but |mu| = {1}")]
    DegreeMismatch(usize, usize),
    #[error("ground sets differ: {0} vs {1}")]
    GroundSetMismatch(usize, usize),
    #[error("partitions are not comparable in refinement order")]
    Incomparable,
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes at d = {0}")]
    PoleAt(i64),
    #[error("Laurent expansion needs degree <= 0, got degree {0}")]
    PositiveDegree(i64),
    #[error("d = {d} is below the stable range d >= {q}")]
    OutOfStableRange { d: i64, q: usize },
    #[error("cost guard exceeded: {0}")]
    CostGuard(String),
    #[error("moment assignment missing a value for block {0:?}")]
    MissingMoment(Vec<usize>),
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("spectrum has repeated eigenvalues; confluent case unsupported")]
    DegenerateSpectrum,
    #[error("closed form disagrees with enumeration: closed {closed} vs enumerated {enumerated}")]
    ClosedFormMismatch { closed: String, enumerated: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, HwError>;
