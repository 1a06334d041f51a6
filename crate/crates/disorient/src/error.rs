use thiserror::Error;

use crate::split::SplitLog;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("complex construction needs at least one simplex")]
    EmptyComplex,

    #[error("a simplex needs at least one vertex")]
    EmptySimplex,

    #[error("vertex {vertex} repeats in {context}")]
    DuplicateVertex { vertex: usize, context: String },

    #[error("{face} is not a face of {simplex}")]
    NotAFace { face: String, simplex: String },

    #[error("{simplex} is not in the complex")]
    NotInComplex { simplex: String },

    #[error("a 0-simplex has no faces")]
    VertexHasNoFaces,

    #[error("dimension {d} out of range for this operation on a {n}-dimensional complex")]
    DimensionOutOfRange { d: usize, n: usize },

    #[error("operation needs a complex of dimension at least one")]
    ZeroDimensionalComplex,

    #[error("operation needs a graph (a complex of dimension at most one), got dimension {got}")]
    NotAGraph { got: usize },

    #[error(
        "vertex {vertex} is isolated; the normalized graph Laplacian needs every degree positive"
    )]
    IsolatedVertex { vertex: usize },

    #[error("graph is disconnected; test each component separately")]
    DisconnectedGraph,

    #[error("matrix of size {size} exceeds the dense eigensolver cap {cap}")]
    MatrixTooLarge { size: usize, cap: usize },

    #[error("matrix is not symmetric (entry ({i},{j}) differs from ({j},{i}) by {delta:e})")]
    NotSymmetric { i: usize, j: usize, delta: f64 },

    #[error("{count} top simplices exceed the exhaustive search cap {cap}")]
    BruteForceCapExceeded { count: usize, cap: usize },

    #[error(
        "edge subdivision loop hit the iteration cap {cap} before reaching a disorientable complex"
    )]
    SplitIterationCap { cap: usize, log: Box<SplitLog> },

    #[error("max_iterations must be at least one")]
    ZeroIterationBudget,

    #[error("generator parameter out of range: {reason}")]
    GeneratorParameter { reason: String },

    #[error("document parse failure: {0}")]
    DocumentSyntax(String),

    #[error("unsupported document format version {0:?}")]
    UnsupportedFormatVersion(String),

    #[error("document label {label:?} is not in the vertex name table")]
    UnknownLabel { label: String },

    #[error("duplicate label {label:?} in the vertex name table")]
    DuplicateLabel { label: String },

    #[error("orientation override references {simplex}, which is not a top-dimensional simplex")]
    UnknownOrientationReference { simplex: String },

    #[error("duplicate orientation override for {simplex}")]
    DuplicateOrientationOverride { simplex: String },

    #[error("a vertex name table with {names} entries cannot label {vertices} vertices")]
    LabelTableSize { names: usize, vertices: usize },

    #[error("reference orientation list has {got} signs for {expected} top simplices")]
    OrientationCountMismatch { got: usize, expected: usize },

    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),
}
