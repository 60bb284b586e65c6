use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("p^B exceeds 64 bits (p = {p}, precision = {precision}, e = {e})")]
    PrecisionTooLarge { p: u64, precision: u32, e: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("no unit coefficient below X^{xprec}: Weierstrass degree not certified")]
    WidegNotCertified { xprec: usize },
    #[error("X-precision {xprec} is too small (need more than {needed})")]
    InsufficientXPrecision { xprec: usize, needed: usize },
    #[error("inner series has a nonzero constant term")]
    CompositionDomain,
    #[error("series has no unit coefficient")]
    NoUnitCoefficient,
    #[error("index undetermined at X-precision {xprec} for n = {n}")]
    IndeterminateAtPrecision { n: u32, xprec: usize },
    #[error("no candidate certified within a budget of {budget}")]
    BudgetExhausted { budget: u64 },
    #[error("term cap exceeded; formulas complete through order {completed_order:?}")]
    TruncationOverflow { completed_order: Option<u32> },
    #[error("non-integral coefficient {numerator}/{denominator}")]
    IntegralityViolation { numerator: String, denominator: String },
    #[error("no value assigned to variable {0}")]
    UncoveredVariable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
