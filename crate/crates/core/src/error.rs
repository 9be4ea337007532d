use thiserror::Error;

/// Which of the two products of a compatible algebra an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    First,
    Second,
}

impl std::fmt::Display for Which {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Which::First => write!(f, "bracket1"),
            Which::Second => write!(f, "bracket2"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("operation requires a parameter-free algebra or vector (substitute parameters first)")]
    Parametric,

    #[error("no value assigned to parameter `{0}`")]
    MissingParameter(String),

    #[error("parameter `{0}` is not declared")]
    UndeclaredParameter(String),

    #[error("zero denominator in rational literal")]
    ZeroDenominator,

    #[error("expression error at column {column}: {message}")]
    Expression { column: usize, message: String },

    #[error("{0} does not satisfy the Jacobi identity")]
    NotLie(Which),

    #[error("subspace is not an ideal")]
    NotIdeal,

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("algebra is not filiform")]
    NotFiliform,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("pair ({k}, {r}) lies outside the admissible index set for n = {n}")]
    OutsideDelta { n: usize, k: usize, r: usize },

    #[error("cochain pair is not a compatible 2-cocycle")]
    NotCocyclePair,

    #[error("derivation is not in the diagonal torus")]
    NotTorus,

    #[error("identity {identity} fails at ({}, {}, {}) in coordinate {coordinate}", .triple.0 + 1, .triple.1 + 1, .triple.2 + 1)]
    IdentityFails {
        identity: String,
        triple: (usize, usize, usize),
        coordinate: usize,
    },

    #[error("adapted basis search exhausted {attempts} attempts (seed {seed})")]
    RetryBudgetExhausted { attempts: usize, seed: u64 },

    #[error("{message} (line {line}, column {column})")]
    Format {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
