use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("dimension vectors have mismatched lengths")]
    DimensionMismatch,
    #[error("not a positive root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("operation needs a Dynkin quiver")]
    NonDynkinUnsupported,
    #[error("objects live over different quivers")]
    QuiverMismatch,
    #[error("Ext^1 vanishes, no extension to build")]
    NoExtension,
    #[error("two-term complex does not split into one indecomposable: {0}")]
    ConeNotIndecomposable(String),
    #[error("degree {0} outside the admissible range")]
    DegreeOutOfRange(i64),
    #[error("segment of wrong length: {0}")]
    ConvexityViolation(String),
    #[error("Ext vanishing fails: {0}")]
    ExtObstruction(String),
    #[error("mutation could not be lifted: {0}")]
    LiftFailure(String),
    #[error("diagram is not of type ADE")]
    NonSphericalType,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
