use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit index {0} listed more than once")]
    DuplicateIndex(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("dimension {0} exceeds the supported maximum")]
    DimensionTooLarge(usize),

    #[error("{0} qubits requested; supported range is {1}..={2}")]
    QubitCount(usize, usize, usize),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("not a normalized state: squared norm {0}")]
    NotNormalized(f64),

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("{what} = {value} is outside its domain {domain}")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// The two-qubit entropy bound only constrains fidelity for entropies in [1, 2].
    #[error("S_v2 = {0} is below the bound domain [1, 2]; no entropy bound constrains F there")]
    BelowBoundDomain(f64),

    #[error("invalid protocol spec: {0}")]
    InvalidSpec(String),

    #[error("unknown campaign `{0}`")]
    UnknownCampaign(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
