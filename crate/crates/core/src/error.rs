use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("moduli not coprime")]
    ModuliNotCoprime,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not irreducible: has factor {factor}")]
    NotIrreducible { factor: String },
    #[error("not divisible")]
    NotDivisible,
    #[error("substitution pole")]
    SubstitutionPole,
    #[error("groebner budget exceeded ({limit} S-pairs)")]
    GroebnerBudget { limit: usize },
    #[error("primitive element search exceeded ({limit} candidates)")]
    PrimitiveSearch { limit: usize },
    #[error("search cap exceeded: {0}")]
    SearchCap(String),
    #[error("system is not zero-dimensional")]
    NotZeroDimensional,
    #[error("unexpected positive-dimensional infinity")]
    PositiveDimensionalInfinity,
    #[error("line extraction failed: {0}")]
    LineExtraction(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GroebnerBudget { .. } | Error::PrimitiveSearch { .. } | Error::SearchCap(_) => 3,
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::Input(_)
            | Error::InvalidArgument(_)
            | Error::NotIrreducible { .. }
            | Error::ModuliNotCoprime
            | Error::DivisionByZero
            | Error::SubstitutionPole => 2,
            _ => 4,
        }
    }

    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::ModuliNotCoprime => "moduli_not_coprime",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NotIrreducible { .. } => "not_irreducible",
            Error::NotDivisible => "not_divisible",
            Error::SubstitutionPole => "substitution_pole",
            Error::GroebnerBudget { .. } => "groebner_budget",
            Error::PrimitiveSearch { .. } => "primitive_search",
            Error::SearchCap(_) => "search_cap",
            Error::NotZeroDimensional => "not_zero_dimensional",
            Error::PositiveDimensionalInfinity => "positive_dimensional_infinity",
            Error::LineExtraction(_) => "line_extraction",
            Error::Inconsistent(_) => "internal_inconsistency",
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::Input(_) => "input",
        }
    }
}
