use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names are part of the external contract: the CLI prints
/// [`Error::name`] on stderr and the C ABI maps each variant to a stable
/// status code via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // semigroup
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators must be positive, got {0}")]
    NonPositiveGenerator(i64),
    #[error("gcd of generators is {0}, not 1 (infinite genus)")]
    GcdNotOne(i64),

    // hstar
    #[error("length n={n} must exceed 2g+2={bound}")]
    LengthTooSmall { n: usize, bound: usize },
    #[error("expected {expected} members, got {actual}")]
    WrongCardinality { expected: usize, actual: usize },
    #[error("{0} is not an element of H within [0, n+2g-1]")]
    NotSubsetOfH(i64),
    #[error("membership of {0} below n disagrees with H")]
    LowRangeMismatch(i64),
    #[error("{missing} is absent but {present} = {missing} + h is present")]
    ClosureViolation { missing: i64, present: i64 },
    #[error("malformed abundance sequence: {0}")]
    MalformedAbundance(String),
    #[error("abundance sequence yields an invalid set: {0}")]
    ResultInvalid(Box<Error>),
    #[error("malformed dimension chain: {0}")]
    MalformedChain(String),

    // bounds
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("delta {delta} out of range 1..={n}")]
    DeltaOutOfRange { delta: usize, n: usize },
    #[error("{0} is not an element of the semigroup")]
    NotAMember(i64),
    #[error("the code sequence does not satisfy the isometry-dual condition")]
    NotIsometryDual,
    #[error("enumeration exceeded the cap of {cap} nodes")]
    EnumerationCapExceeded { cap: u64 },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    // gf
    #[error("unsupported field GF({p}^{k})")]
    UnsupportedField { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    // evalcode
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("table invariant violated: {0}")]
    InvariantViolation(String),
    #[error("pole-order budget m={m} outside 0..={max}")]
    BudgetOutOfRange { m: i64, max: i64 },
    #[error("zero pairing at index {0}; the isometry witness is invalid")]
    ZeroPivot(usize),

    // generic_bound
    #[error("input vectors are linearly dependent")]
    DependentInput,

    // oracle
    #[error("search budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

impl Error {
    /// The variant name, as surfaced on the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyGenerators => "EmptyGenerators",
            Error::NonPositiveGenerator(_) => "NonPositiveGenerator",
            Error::GcdNotOne(_) => "GcdNotOne",
            Error::LengthTooSmall { .. } => "LengthTooSmall",
            Error::WrongCardinality { .. } => "WrongCardinality",
            Error::NotSubsetOfH(_) => "NotSubsetOfH",
            Error::LowRangeMismatch(_) => "LowRangeMismatch",
            Error::ClosureViolation { .. } => "ClosureViolation",
            Error::MalformedAbundance(_) => "MalformedAbundance",
            Error::ResultInvalid(_) => "ResultInvalid",
            Error::MalformedChain(_) => "MalformedChain",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DeltaOutOfRange { .. } => "DeltaOutOfRange",
            Error::NotAMember(_) => "NotAMember",
            Error::NotIsometryDual => "NotIsometryDual",
            Error::EnumerationCapExceeded { .. } => "EnumerationCapExceeded",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
            Error::UnsupportedField { .. } => "UnsupportedField",
            Error::DivisionByZero => "DivisionByZero",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::UnsupportedParameter(_) => "UnsupportedParameter",
            Error::SchemaError(_) => "SchemaError",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::BudgetOutOfRange { .. } => "BudgetOutOfRange",
            Error::ZeroPivot(_) => "ZeroPivot",
            Error::DependentInput => "DependentInput",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
        }
    }

    /// Stable numeric code used across the C ABI. Zero is reserved for success.
    pub fn code(&self) -> i32 {
        match self {
            Error::EmptyGenerators => 10,
            Error::NonPositiveGenerator(_) => 11,
            Error::GcdNotOne(_) => 12,
            Error::LengthTooSmall { .. } => 20,
            Error::WrongCardinality { .. } => 21,
            Error::NotSubsetOfH(_) => 22,
            Error::LowRangeMismatch(_) => 23,
            Error::ClosureViolation { .. } => 24,
            Error::MalformedAbundance(_) => 25,
            Error::ResultInvalid(_) => 26,
            Error::MalformedChain(_) => 27,
            Error::IndexOutOfRange { .. } => 30,
            Error::DeltaOutOfRange { .. } => 31,
            Error::NotAMember(_) => 32,
            Error::NotIsometryDual => 33,
            Error::EnumerationCapExceeded { .. } => 34,
            Error::InternalInvariantViolation(_) => 35,
            Error::UnsupportedField { .. } => 40,
            Error::DivisionByZero => 41,
            Error::DimensionMismatch(_) => 42,
            Error::UnsupportedParameter(_) => 50,
            Error::SchemaError(_) => 51,
            Error::InvariantViolation(_) => 52,
            Error::BudgetOutOfRange { .. } => 53,
            Error::ZeroPivot(_) => 54,
            Error::DependentInput => 60,
            Error::BudgetExceeded { .. } => 70,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
