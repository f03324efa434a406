use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid {family} parameter: {detail}")]
    Parameter { family: &'static str, detail: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{what} limited to {cap}, got {size}")]
    Capacity { what: &'static str, size: usize, cap: usize },

    #[error("unsupported field characteristic {0}")]
    Characteristic(u64),

    #[error("{0} requires the algebra oracle, which is disabled")]
    NeedsOracle(String),

    #[error("parse error at position {position}: expected {}, found {found}", .expected.join(" | "))]
    Parse { position: usize, expected: Vec<String>, found: String },

    #[error("outside the range of the closed forms: {0}")]
    OutOfRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
