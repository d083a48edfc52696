use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization effort cap exceeded ({0})")]
    FactorTimeout(String),
    #[error("minimal polynomial is reducible over Q")]
    ReducibleMinPoly,
    #[error("field degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("prime {0} divides the index of Z[theta]; splitting via the minimal polynomial is unsound")]
    IndexDivisorUnsupported(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("precision exhausted at {0} bits")]
    PrecisionExhausted(u32),
    #[error("zero coordinate")]
    ZeroCoordinate,
    #[error("degenerate point: u must avoid 0 and 1")]
    DegeneratePoint,
    #[error("radical is zero")]
    ZeroRadical,
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("unbound constant `{0}`")]
    UnboundConstant(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("discriminant is not exact")]
    InexactDiscriminant,
    #[error("bound is not monotone in `{0}`")]
    NonMonotoneConstant(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("non-rational branch point `{0}`")]
    NonRationalBranchPoint(String),
    #[error("degree {degree} exceeds the Belyi degree cap {cap}")]
    DegreeOverflow { degree: u64, cap: u64 },
    #[error("fiber over {0} is critical")]
    CriticalFiber(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
