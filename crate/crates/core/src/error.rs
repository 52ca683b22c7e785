use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("central charge vanishes on class {0}")]
    ZeroCharge(String),
    #[error("class {0} is not a spherical-candidate class (|a| must be 1)")]
    NotSphericalClass(String),
    #[error("class {0} together with [O_x] is not a basis of K")]
    NotABasis(String),
    #[error("degree {0} outside the range {{0, 1, 2}}")]
    DegreeOutOfRange(i64),
    #[error("invalid normal form: {0}")]
    InvalidNormalForm(String),
    #[error("twist by O({t}) of O({s}) is not determined by normal forms (|s - t| >= 2)")]
    UnsupportedTwistDistance { t: i64, s: i64 },
    #[error("inadmissible pair: {0}")]
    InadmissiblePair(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("Yoneda product of degrees {0} and {1} exceeds 2")]
    DegreeOverflow(u8, u8),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("object is not semistable")]
    NotSemistable,
    #[error("charge degenerate: {0}")]
    ChargeDegenerate(String),
    #[error("phases are not strictly decreasing")]
    PhasesNotDecreasing,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
