use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A circuit-text parse failure, always tied to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside the supported range 1..=12")]
    QubitCount(usize),
    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitIndex { index: usize, n_qubits: usize },
    #[error("gate {gate} expects {expected} target(s), got {got}")]
    Arity {
        gate: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("qubit {0} listed twice")]
    DuplicateQubit(usize),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("{name} = {value} is not a probability in [0, 1]")]
    Probability { name: &'static str, value: f64 },
    #[error("bitstring width mismatch: expected {expected}, got {got}")]
    Width { expected: usize, got: usize },
    #[error("invalid distribution: {0}")]
    Distribution(String),
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("circuit structure: {0}")]
    Structure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
