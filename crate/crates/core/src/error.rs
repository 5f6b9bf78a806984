use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("division by the zero element of the function field")]
    ZeroFieldElement,

    #[error("duplicate interpolation node {0}")]
    DuplicateNode(String),

    #[error("need at least {needed} interpolation points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("samples are inconsistent with degree bound {bound}")]
    InconsistentInterpolation { bound: usize },

    #[error("no rational function of total degree <= {cap} fits the samples")]
    ReconstructionFailed { cap: usize },

    #[error("unsupported square-root branch: constant term must be 1, got {0}")]
    UnsupportedBranch(String),

    #[error("truncation order {order} is insufficient: {what}")]
    TruncationInsufficient { order: i64, what: String },

    #[error("singular curve: F(z) has a repeated root (c1 = {c1}, c2 = {c2})")]
    SingularCurve { c1: String, c2: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("domain error at n = {n}: {what}")]
    Domain { n: i64, what: String },

    #[error("pole at the requested point: {0}")]
    Pole(String),

    #[error("linear system is singular")]
    Singular,

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("constraint {constraint} violated at n = {n}: {detail}")]
    Constraint { n: i64, constraint: String, detail: String },

    #[error("no relation of weighted degree <= {0}")]
    NoRelation(i64),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{0}")]
    Parse(#[from] crate::parse::ParseError),

    #[error("nonzero residual {value} at n = {n}")]
    Residual { n: i64, value: String },

    #[error("window too short: {0}")]
    Window(String),
}
