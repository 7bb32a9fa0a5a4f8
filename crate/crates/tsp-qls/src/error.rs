use thiserror::Error;

/// Errors raised while reading a TSPLIB instance file.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header entry: {detail}")]
    MalformedHeader { line: usize, detail: String },

    #[error("missing required keyword {keyword}")]
    MissingKeyword { keyword: &'static str },

    #[error("line {line}: unsupported EDGE_WEIGHT_TYPE {found} (supported: EUC_2D, CEIL_2D, GEO, ATT)")]
    UnsupportedEdgeWeightType { line: usize, found: String },

    #[error("line {line}: malformed coordinate entry: {detail}")]
    MalformedCoordinate { line: usize, detail: String },

    #[error("DIMENSION is {expected} but NODE_COORD_SECTION has {found} entries")]
    CoordinateCountMismatch { expected: usize, found: usize },

    #[error("DIMENSION must be at least 3, got {0}")]
    DimensionTooSmall(usize),
}

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("city index {index} out of range for {dimension} cities")]
    CityOutOfRange { index: usize, dimension: usize },

    #[error("all points are collinear; convex hull is degenerate")]
    DegenerateHull,

    #[error("invalid cluster count k={k} for n={n}: {detail}")]
    InvalidK { k: usize, n: usize, detail: &'static str },

    #[error("tour has zero circumference; cannot embed on a circle")]
    ZeroCircumference,

    #[error("slice has no interior cities; nothing to optimize")]
    EmptyInterior,

    #[error("replacement interior is not a permutation of the slice interior")]
    InteriorMismatch,

    #[error("{num_vars} variables exceed the exhaustive solver cap of {cap}")]
    TooManyVariables { num_vars: usize, cap: usize },

    #[error("{interior} interior cities exceed the permutation oracle cap of {cap}")]
    TooManyInterior { interior: usize, cap: usize },

    #[error("assignment has {found} bits but the model has {expected} variables")]
    BitLengthMismatch { expected: usize, found: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed QUBO text map: {0}")]
    MalformedQuboText(String),

    #[error("malformed solver response: {0}")]
    MalformedResponse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
