use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported diagram `{0}` (expected A_n n>=1, D_n n>=4, E6, E7 or E8)")]
    UnsupportedDiagram(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("vertex ({node},{level}) leaves the window {lo}..{hi}")]
    WindowExceeded { node: usize, level: i64, lo: i64, hi: i64 },

    #[error("invalid vertex ({node},{level}): {reason}")]
    InvalidVertex { node: usize, level: i64, reason: String },

    #[error("invalid height function: {0}")]
    InvalidHeight(String),

    #[error("node {node} is not a {expected} of the orientation")]
    NotSourceOrSink { node: usize, expected: &'static str },

    #[error("size limit exceeded for {what}: required {required}, limit {limit}")]
    SizeLimitExceeded { what: String, required: u128, limit: u128 },

    #[error("not a complex: d_{degree} o d_{next} is nonzero", next = degree + 1)]
    NotAComplex { degree: usize },

    #[error("knitting inconsistency: {0}")]
    KnittingInconsistency(String),

    #[error("reflection closure exceeded {0} vectors; diagram is not of finite type")]
    NonFiniteType(usize),

    #[error("linear map not well defined: {0}")]
    NotWellDefined(String),

    #[error("root system mismatch: {0}")]
    Mismatch(String),

    #[error("operation requires a Dynkin diagram")]
    RequiresDynkin,

    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
