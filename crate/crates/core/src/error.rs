use thiserror::Error;

/// Errors produced anywhere in the relaxation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("no {degree}-regular graph on {n} vertices: {reason}")]
    InfeasibleRegular { n: usize, degree: usize, reason: &'static str },

    #[error("rejection sampling failed to produce a simple graph after {0} attempts")]
    RetryBudgetExhausted(usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("exact oracle limited to n <= {limit}, got n = {n}")]
    OracleLimit { n: usize, limit: usize },

    #[error("coloring is improper on edge ({0}, {1})")]
    ImproperColoring(usize, usize),

    #[error("edge ({0}, {1}) has both endpoints on qubit {2}")]
    SharedQubit(usize, usize, usize),

    #[error("qubit count {0} outside supported range 1..={max}", max = crate::sim::MAX_QUBITS)]
    QubitCount(usize),

    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitIndex { index: usize, num_qubits: usize },

    #[error("CNOT control and target coincide on qubit {0}")]
    SameControlTarget(usize),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("requested {requested} random pairs but only {available} exist")]
    TooManyPairs { requested: usize, available: usize },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
