use thiserror::Error;

/// Errors raised by the graph, monoid, polyhedral and subdivision layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("element {0:?} is not a member of the monoid")]
    NotAMember(Vec<i64>),
    #[error("empty set")]
    EmptySet,
    #[error("set is not r-close")]
    NotRClose,
    #[error("all elements are zero, the root is undefined")]
    AllZero,
    #[error("curve is not r-rich")]
    NotRRich,
    #[error("invalid r: {0}")]
    InvalidLevel(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("the given rays do not span a face of the cone")]
    NotAFace,
    #[error("invalid choice function: {0}")]
    InvalidChoice(String),
    #[error("choice does not generate a minimal order: {0}")]
    NotMinimalOrder(String),
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("unknown coordinate {0}")]
    UnknownCoordinate(usize),
    #[error("cross sections need a fan of rank 3, got rank {0}")]
    RankNotThree(usize),
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Stable machine-readable code, used in the CLI error JSON.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DisconnectedGraph => "DisconnectedGraph",
            Error::EmptyGraph => "EmptyGraph",
            Error::DuplicateId(_) => "DuplicateId",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownEdge(_) => "UnknownEdge",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotAMember(_) => "NotAMember",
            Error::EmptySet => "EmptySet",
            Error::NotRClose => "NotRClose",
            Error::AllZero => "AllZero",
            Error::NotRRich => "NotRRich",
            Error::InvalidLevel(_) => "InvalidLevel",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotAFace => "NotAFace",
            Error::InvalidChoice(_) => "InvalidChoice",
            Error::NotMinimalOrder(_) => "NotMinimalOrder",
            Error::MalformedFan(_) => "MalformedFan",
            Error::UnknownCoordinate(_) => "UnknownCoordinate",
            Error::RankNotThree(_) => "RankNotThree",
            Error::InvalidCone(_) => "InvalidCone",
            Error::InvalidFamily(_) => "InvalidFamily",
            Error::InvalidCurve(_) => "InvalidCurve",
            Error::Malformed(_) => "Malformed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
