use thiserror::Error;

/// Errors raised by the algebra kernel and the analyses built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible operands: {0}")]
    IncompatibleOperands(String),
    #[error("index {index} out of range (expected < {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("target degree {target} is smaller than polynomial degree {degree}")]
    DegreeTooSmall { target: i64, degree: i64 },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("coefficient {value} is not representable over {field}")]
    NotRepresentable { value: String, field: String },
    #[error("identity is not linear in its unknowns: {0}")]
    NotLinear(String),
    #[error("invariant violated: {which} (witness: {witness})")]
    InvariantViolation { which: String, witness: String },
    #[error("system is not zero-dimensional: {0}")]
    NotZeroDimensional(String),
    #[error("operation requires an empty double curve")]
    UnsupportedDoubleCurve,
    #[error("no adjointness strategy available: {0}")]
    StrategyUnavailable(String),
    #[error("the given A admits no completion to a Picard solution")]
    NoCompletion,
    #[error("completion is not unique (fiber dimension {fiber_dim})")]
    NonUniqueCompletion { fiber_dim: usize },
    #[error("tuple does not satisfy Picard's relation: residual {residual}")]
    NotASolution { residual: String },
    #[error("{which} is not homogeneous of degree {expected}")]
    DegreeOverflow { which: String, expected: i64 },
    #[error("integrability defect {defect} has degree above the bound {bound}")]
    DegreeBoundViolated { defect: String, bound: i64 },
    #[error("characteristic {p} divides the degree {d}")]
    CharacteristicDividesDegree { p: u64, d: u32 },
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("unknown fixture {0}")]
    UnknownFixture(String),
}

impl Error {
    /// Variant name, used in machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IncompatibleOperands(_) => "IncompatibleOperands",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::Parse { .. } => "ParseError",
            Error::InvalidField(_) => "InvalidField",
            Error::NotRepresentable { .. } => "NotRepresentable",
            Error::NotLinear(_) => "NotLinear",
            Error::InvariantViolation { .. } => "InvariantViolation",
            Error::NotZeroDimensional(_) => "NotZeroDimensional",
            Error::UnsupportedDoubleCurve => "UnsupportedDoubleCurve",
            Error::StrategyUnavailable(_) => "StrategyUnavailable",
            Error::NoCompletion => "NoCompletion",
            Error::NonUniqueCompletion { .. } => "NonUniqueCompletion",
            Error::NotASolution { .. } => "NotASolution",
            Error::DegreeOverflow { .. } => "DegreeOverflow",
            Error::DegreeBoundViolated { .. } => "DegreeBoundViolated",
            Error::CharacteristicDividesDegree { .. } => "CharacteristicDividesDegree",
            Error::ContractViolation(_) => "ContractViolation",
            Error::UnknownFixture(_) => "UnknownFixture",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
