use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("expected two distinct vertices, got {0} twice")]
    SameVertex(usize),

    #[error("labeling is not a bijection onto 1..={n}")]
    InvalidLabeling { n: usize },

    #[error("argument outside the function domain: {0}")]
    Domain(String),

    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),

    #[error("digraph has {n} vertices, this oracle is limited to {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("the given vertex set is not a feedback vertex set")]
    NotFeedbackVertexSet,

    #[error("feedback vertex set is not minimal: DL reproduced {produced:?} instead")]
    NotMinimal { produced: Vec<usize> },

    #[error("joint probability {value} for pair ({u}, {v}) lies outside [0, 1]")]
    ProbabilityOutOfRange { u: usize, v: usize, value: f64 },

    #[error("variance evaluated to {0}, which is negative beyond rounding")]
    NegativeVariance(f64),

    #[error("denominator sum(rho) - c evaluated to {0}, which is negative beyond rounding")]
    NegativeDenominator(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
