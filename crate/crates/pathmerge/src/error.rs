use crate::graph::EdgeId;

/// Everything that can go wrong while building or analysing a network.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph contains a directed cycle")]
    CycleDetected,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("no path from `{from}` to `{to}`")]
    NoPath { from: String, to: String },
    #[error("graph has {edges} edges, above the limit of {limit} (set MERGE_MAX_EDGES to raise it)")]
    TooLarge { edges: usize, limit: usize },
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("edge {0} lies on no group path")]
    NotCovered(EdgeId),
    #[error("group {group}: {reason}")]
    InvalidGroup { group: usize, reason: String },
    #[error("invalid stroke at position {position}: {reason}")]
    InvalidStroke { position: usize, reason: String },
    #[error("expected exactly two path groups, found {0}")]
    NotTwoGroup(usize),
    #[error("merging at edge {0} is shared by more than two paths")]
    MultiwayMerging(EdgeId),
    #[error("walk revisited path pair ({0},{1}); the network is reroutable")]
    RerouteDetected(usize, usize),
    #[error("walks along the first group are undefined when sources coincide")]
    PhiWalkUnsupported,
    #[error("expected a non-reroutable network with two groups, the first of cut 2")]
    NotTwoByN,
    #[error("adjacent pairs {0} and {1} are incomparable")]
    Incomparable(String, String),
    #[error("incompatible interface: {0}")]
    IncompatibleInterface(String),
    #[error("mismatched cuts: expected {expected}, found {found}")]
    MismatchedN { expected: usize, found: usize },
    #[error("parameter {name} = {value} is below the minimum {min}")]
    ParamTooSmall { name: &'static str, value: usize, min: usize },
    #[error("group cuts must be non-decreasing")]
    NonMonotoneCuts,
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
