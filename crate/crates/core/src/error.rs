use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("direction must be finite and non-zero, got ({0}, {1})")]
    ZeroDirection(f64, f64),

    #[error("coordinates must be finite, got ({0}, {1})")]
    NonFinite(f64, f64),

    #[error("lines are parallel")]
    ParallelLines,

    #[error("points coincide at ({0}, {1})")]
    CoincidentPoints(f64, f64),

    #[error("vertex index {index} out of range for {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("vertices {0} and {1} have equal height in direction ({2}, {3})")]
    DegenerateDirection(usize, usize, f64, f64),

    #[error("two filtration lines share height {0}")]
    DuplicateHeights(f64),

    #[error("expected exactly one zero-dimensional feature, found {0}")]
    WrongCardinality(usize),

    #[error("line families have different sizes ({0} and {1})")]
    FamilySizeMismatch(usize, usize),

    #[error("vertices {0} and {1} coincide")]
    DegeneratePoints(usize, usize),

    #[error("no positive bow tie width exists: vertex {0} is collinear with two others")]
    ZeroBowTieWidth(usize),

    #[error("could not isolate vertex {1} in a bow tie at vertex {0} after {2} shrinks")]
    RetryExhausted(usize, usize, usize),

    #[error("enumeration limited to {limit} vertices, got {n}")]
    Overflow { n: usize, limit: usize },

    #[error("graph generation failed after {0} attempts")]
    GenerationFailed(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
