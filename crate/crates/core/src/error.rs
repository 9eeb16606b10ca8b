use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unknown name `{name}`")]
    UnknownName { line: usize, column: usize, name: String },
    #[error("line {line}, column {column}: wrong arity: {message}")]
    Arity { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: parameter element {index} is zero")]
    ZeroParameter { line: usize, column: usize, index: usize },
    #[error("line {line}, column {column}: parameter element {index} is not homogeneous")]
    InhomogeneousParameter { line: usize, column: usize, index: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("containment violated: {0}")]
    Containment(String),
    #[error("not a parameter ideal for the module: {0}")]
    NotParameterIdeal(String),
    #[error("wrong number of elements: expected {expected}, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("Hilbert function did not stabilize for n <= {ncap}; raise --ncap")]
    Unstable { ncap: usize },
    #[error("module is not generalized Cohen-Macaulay: {0}")]
    NotGeneralizedCm(String),
    #[error("index {index} out of range {lo}..={hi}")]
    OutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("module presentation is not graded: {0}")]
    NotGraded(String),
    #[error("zero module: {0}")]
    ZeroModule(String),
    #[error("sampler exhausted after {attempts} attempts: {detail}")]
    SamplerExhausted { attempts: usize, detail: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error("guard violation: {0}")]
    Guard(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
