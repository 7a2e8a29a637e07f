//! The crate-wide error type.
//!
//! Every variant maps to a stable, machine-readable code via [`Error::code`];
//! the command-line front end prints that code in its JSON error object.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All domain errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity {arity} is outside the supported range 1..={cap}")]
    ArityOutOfRange { arity: usize, cap: usize },
    #[error("truth table has {got} rows but arity {arity} needs {expected}")]
    TableLengthMismatch {
        arity: usize,
        expected: usize,
        got: usize,
    },
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("threshold parameters n={n}, m={m} must satisfy n >= m >= 1")]
    BadThresholdParams { n: usize, m: usize },
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("malformed function literal `{0}` (expected `arity:hexTable`)")]
    BadLiteral(String),
    #[error("closure exceeded the budget of {limit} functions")]
    BudgetExceeded { limit: usize },
    #[error("separation degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("connective `{0}` is not declared in the basis")]
    UndeclaredConnective(String),
    #[error("variable `{0}` has no value in the assignment")]
    UnboundVariable(String),
    #[error("{count} variables exceed the brute-force cap of {cap}")]
    TooManyVariables { count: usize, cap: usize },
    #[error("unsupported logic `{0}`")]
    UnsupportedLogic(String),
    #[error("bad modal operator set: {0}")]
    BadModalSet(String),
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("containment is not decided for the Type C logic `{0}`")]
    TypeCUnsupported(String),
    #[error("simple fragments must use the same modal operators")]
    ModalSetMismatch,
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("malformed Kripke model: {0}")]
    BadModel(String),
    #[error("model violates the frame conditions of {0}")]
    FrameViolation(String),
    #[error("example kind does not match the formula kind")]
    KindMismatch,
    #[error("fragment is not teachable: {0}")]
    FragmentNotTeachable(String),
    #[error("formula is not expressible in the fragment: {0}")]
    NotExpressible(String),
    #[error("{count} variables exceed the enumeration cap of {cap}")]
    PropCapExceeded { count: usize, cap: usize },
    #[error("fragment is not learnable with membership queries: {0}")]
    NotLearnable(String),
    #[error("oracle answers are inconsistent with the fragment: {0}")]
    OracleInconsistent(String),
    #[error("no odd parity function fits the examples")]
    Inconsistent,
    #[error("formula is outside the fragment: {0}")]
    NotInFragment(String),
    #[error("bound {bound} is below the required minimum {required}")]
    BoundTooSmall { bound: usize, required: usize },
    #[error("formula is outside the source fragment of the reduction: {0}")]
    NotInSourceFragment(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable error code string, suitable for scripting.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ArityOutOfRange { .. } => "ARITY_OUT_OF_RANGE",
            Error::TableLengthMismatch { .. } => "TABLE_LENGTH_MISMATCH",
            Error::UnknownName(_) => "UNKNOWN_NAME",
            Error::BadThresholdParams { .. } => "BAD_THRESHOLD_PARAMS",
            Error::ArityMismatch { .. } => "ARITY_MISMATCH",
            Error::BadLiteral(_) => "BAD_LITERAL",
            Error::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
            Error::DegreeCapExceeded { .. } => "DEGREE_CAP_EXCEEDED",
            Error::InternalInconsistency(_) => "INTERNAL_INCONSISTENCY",
            Error::SyntaxError { .. } => "SYNTAX_ERROR",
            Error::UndeclaredConnective(_) => "UNDECLARED_CONNECTIVE",
            Error::UnboundVariable(_) => "UNBOUND_VARIABLE",
            Error::TooManyVariables { .. } => "TOO_MANY_VARIABLES",
            Error::UnsupportedLogic(_) => "UNSUPPORTED_LOGIC",
            Error::BadModalSet(_) => "BAD_MODAL_SET",
            Error::UnknownProblem(_) => "UNKNOWN_PROBLEM",
            Error::TypeCUnsupported(_) => "TYPE_C_UNSUPPORTED",
            Error::ModalSetMismatch => "MODAL_SET_MISMATCH",
            Error::UnknownWorld(_) => "UNKNOWN_WORLD",
            Error::BadModel(_) => "BAD_MODEL",
            Error::FrameViolation(_) => "FRAME_VIOLATION",
            Error::KindMismatch => "KIND_MISMATCH",
            Error::FragmentNotTeachable(_) => "FRAGMENT_NOT_TEACHABLE",
            Error::NotExpressible(_) => "NOT_EXPRESSIBLE",
            Error::PropCapExceeded { .. } => "PROP_CAP_EXCEEDED",
            Error::NotLearnable(_) => "NOT_LEARNABLE",
            Error::OracleInconsistent(_) => "ORACLE_INCONSISTENT",
            Error::Inconsistent => "INCONSISTENT",
            Error::NotInFragment(_) => "NOT_IN_FRAGMENT",
            Error::BoundTooSmall { .. } => "BOUND_TOO_SMALL",
            Error::NotInSourceFragment(_) => "NOT_IN_SOURCE_FRAGMENT",
            Error::InvalidInput(_) => "INVALID_INPUT",
        }
    }
}
