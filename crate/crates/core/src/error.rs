use thiserror::Error;

/// Errors raised by the engine. Verification *failures* are not errors; they
/// are recorded as report entries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("additive shift applied to a negative power of variable {var}")]
    ShiftOfInverse { var: usize },

    #[error("endomorphism does not act on this coefficient ring: {0}")]
    EndoMismatch(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid generalized Cartan matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),

    #[error("context mismatch between skew elements")]
    ContextMismatch,

    #[error("inversion supported only for unit monomials: {0}")]
    NotUnitMonomial(String),

    #[error("operation requires a quantum context")]
    NotQuantum,

    #[error("datum unsolvable with the quadratic ansatz: {0}")]
    DatumUnsolvable(String),

    #[error("unassigned generator `{0}`")]
    UnassignedGenerator(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("rewriting exceeded {limit} steps; last words: {trace}")]
    StepLimit { limit: usize, trace: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
