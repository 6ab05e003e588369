use thiserror::Error;

/// Errors raised by graph ingestion, form construction and the calculus.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex `{label}` (graphs must be simple)")]
    SelfLoop { line: usize, label: String },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),

    #[error("vertex tuple {0:?} is not in strictly ascending order")]
    NotCanonical(Vec<usize>),

    #[error("vertex set {0:?} is not a clique of the complex")]
    NotAClique(Vec<usize>),

    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("{0}")]
    Domain(String),

    #[error("operands live on different clique complexes")]
    ComplexMismatch,

    #[error("complex built with max_card = {max_card}, but max_card >= {required} is needed; rebuild the complex")]
    Capacity { required: usize, max_card: usize },

    #[error("invalid JSON input: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable identifier used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::SelfLoop { .. } => "self_loop",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::UnknownLabel(_) => "unknown_label",
            Error::NotCanonical(_) => "not_canonical",
            Error::NotAClique(_) => "not_a_clique",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::Domain(_) => "domain",
            Error::ComplexMismatch => "complex_mismatch",
            Error::Capacity { .. } => "capacity",
            Error::Json(_) => "json",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
