use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("spin-orbital index {index} out of range for {n_modes} modes")]
    IndexOutOfRange { index: usize, n_modes: usize },

    #[error("too many qubits: {0} (at most 64 supported)")]
    TooManyQubits(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid active space: {0}")]
    InvalidActiveSpace(String),

    #[error("invalid integrals: {0}")]
    InvalidIntegrals(String),

    #[error("odd electron count {0}: closed-shell reference required")]
    OpenShell(usize),

    #[error("degenerate reference: orbital energy denominator {0:e} below threshold")]
    DegenerateReference(f64),

    #[error("metric matrix has no modes above the linear-dependence threshold")]
    NoExcitations,

    #[error("unstable reference: eigenvalue pair {re} +/- {im}i is not real")]
    Instability { re: f64, im: f64 },

    #[error("vanishing excitation norm {0:e}")]
    DegenerateState(f64),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("oracle limited to {max} qubits, got {got}")]
    OracleTooLarge { max: usize, got: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Innermost error with stage wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}
