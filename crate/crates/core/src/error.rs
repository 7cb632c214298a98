use thiserror::Error;

use crate::gkm::Reason;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input shape: {0}")]
    InputShape(String),

    #[error("subspace containment: {0}")]
    SubspaceContainment(String),

    /// The graph failed one or more mandatory checks of `validate_graph`.
    #[error("invalid graph: {}", reasons_list(.reasons))]
    Validation { reasons: Vec<Reason> },

    #[error("unsupported ring structure: {0}")]
    UnsupportedRingStructure(String),

    #[error("formality violation: coefficient {value} at degree {degree} is negative")]
    FormalityViolation { degree: usize, value: i64 },

    #[error("gysin inconsistency: {0}")]
    GysinInconsistency(String),

    #[error("polytope is not simple: {0}")]
    Simplicity(String),

    #[error("isotropy rank: {0}")]
    IsotropyRank(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn reasons_list(reasons: &[Reason]) -> String {
    reasons
        .iter()
        .map(|r| r.as_str())
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::InputShape(msg.into())
}
