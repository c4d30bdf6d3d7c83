use thiserror::Error;

use crate::mesh::ValidationReport;

/// Malformed input text (OFF, field files, JSON).
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("field has {found} values but the mesh has {expected} vertices")]
    FieldLength { expected: usize, found: usize },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("mesh is not a valid surface: {0}")]
    Invalid(ValidationReport),
    #[error("mesh has {0} connected components, expected 1")]
    DisconnectedMesh(usize),
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: String, hi: String },
    #[error("field has {found} values but the mesh has {expected} vertices")]
    FieldLength { expected: usize, found: usize },
    #[error("sample count must be positive")]
    InvalidSampleCount,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
}

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("decoration is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidDecoration(Vec<crate::realize::DecorationViolation>),
    #[error("user-supplied heights are not injective: {0:?} and {1:?} share a height")]
    NonInjectiveHeights(String, String),
    #[error("genus {genus} is smaller than the first Betti number {betti1}")]
    GenusTooSmall { genus: i64, betti1: usize },
    #[error("graph has a loop edge {0:?}")]
    LoopEdge(String),
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: i64, hi: i64 },
    #[error("invalid construction parameter: {0}")]
    InvalidParameter(String),
    #[error("verification failed at clause {clause}")]
    VerificationFailed {
        clause: u8,
        report: Box<crate::realize::VerificationReport>,
    },
    #[error(transparent)]
    Mesh(#[from] MeshError),
}
