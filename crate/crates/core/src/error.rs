use thiserror::Error;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: i64, max: i64 },
    #[error("operation undefined on zero")]
    ZeroInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative input")]
    NegativeInput,
    #[error("not representable in the current square-root tower")]
    NotRepresentable,
    #[error("square root of {0} requires extending the scalar tower, which is disabled")]
    SqrtNotRepresentable(String),
    #[error("element has negative value; residue undefined")]
    NegativeValue,
    #[error("curve polynomial is not square-free")]
    NotSquareFree,
    #[error("factor of degree {0} >= 3; supply f factored into linear and quadratic factors")]
    IrreducibleFactorOfDegreeGE3(usize),
    #[error("unsupported factor {0}: only linear factors and quadratics with nonreal root field are handled")]
    UnsupportedFactor(String),
    #[error("curve datum mismatch: {0}")]
    CurveMismatch(String),
    #[error("malformed candidate: {0}")]
    MalformedCandidate(String),
    #[error("could not construct generator: {0}")]
    WitnessConstructionFailed(String),
    #[error("precondition could not be verified: {0}")]
    PreconditionUnverified(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InternalAssertion(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
