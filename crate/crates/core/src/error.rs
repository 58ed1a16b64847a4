use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed wire data: {0}")]
    Wire(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("substitution leaves the ring: {0}")]
    SubstitutionLeavesRing(String),
    #[error("sigma data is not mutually inverse: {0}")]
    InvalidSigma(String),
    #[error("degree cap {cap} exceeded")]
    DegreeCapExceeded { cap: u32 },
    #[error("empty window")]
    WindowEmpty,
    #[error("hypothesis could not be verified: {0}")]
    HypothesisUnverified(String),
    #[error("weight has finite sigma-orbit (u0 = 0)")]
    ZeroU0,
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("unsupported module shape: {0}")]
    UnsupportedShape(String),
    #[error("weight is not in the set M: {0}")]
    NotInM(String),
    #[error("module is not chain-type: {0}")]
    NotChainType(String),
    #[error("module is not simple")]
    NotSimple,
    #[error("u does not act invertibly")]
    UNotInvertible,
    #[error("relation failure: {0}")]
    RelationFailure(String),
    #[error("no stabilization inside the window: {0}")]
    NoStabilization(String),
    #[error("invalid stratum descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("infinite-dimensional module requested: {0}")]
    InfiniteDimension(String),
}
