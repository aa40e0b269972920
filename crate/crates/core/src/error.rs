use thiserror::Error;

use crate::statevec::MAX_QUBITS;

#[derive(Debug, Error)]
pub enum Error {
    #[error("register of {0} qubits is outside the supported range 1..={MAX_QUBITS}")]
    Capacity(usize),

    #[error("qubit {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("classical bit {index} out of range for {num_clbits} bits")]
    ClbitOutOfRange { index: usize, num_clbits: usize },

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("operator acts on {op} qubits but the state has {state}")]
    WidthMismatch { op: usize, state: usize },

    #[error("requested outcome has probability {0:e}")]
    ImpossibleOutcome(f64),

    #[error("state vector has zero norm or invalid length")]
    InvalidState,

    #[error("topology error: {0}")]
    Topology(String),

    #[error("routing error: {0}")]
    Routing(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("statistic undefined: {0}")]
    UndefinedStatistic(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
