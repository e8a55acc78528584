use thiserror::Error;

/// Errors raised by the engines. Variants are grouped by the stage that raises them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("facet list is empty")]
    EmptyFacets,
    #[error("facet {index} repeats vertex {vertex}")]
    DuplicateVertex { index: usize, vertex: usize },
    #[error("facet {index} has {found} vertices, expected {expected}")]
    MixedArity { index: usize, expected: usize, found: usize },
    #[error("facet {index} has {found} vertices, the limit is {limit}")]
    FacetTooLarge { index: usize, found: usize, limit: usize },
    #[error("complex is not a closed pseudomanifold")]
    NotClosedPseudomanifold,
    #[error("complex is not orientable")]
    NonOrientable,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("cochain has {found} values, degree {degree} has {expected} simplices")]
    CochainLength { degree: usize, expected: usize, found: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("Poincaré duality fails: betti {0:?}")]
    DualityFailure(Vec<usize>),
    #[error("degree {degree}: numerical nullspace has dimension {found}, betti number is {expected}")]
    NullspaceMismatch { degree: usize, expected: usize, found: usize },
    #[error("iterative solve did not converge: relative residual {residual:.3e} after {iterations} iterations")]
    SolveFailed { iterations: usize, residual: f64 },
    #[error("cochain is not harmonic: relative residual {0:.3e}")]
    NotHarmonic(f64),
    #[error("cochain is identically zero")]
    ZeroCochain,
    #[error("intersection form requires even dimension, got {0}")]
    OddDimension(usize),
    #[error("intersection form is degenerate ({0} near-zero eigenvalues)")]
    DegenerateForm(usize),
    #[error("inconsistent summary: {0}")]
    InconsistentSummary(String),
    #[error("dimension {0} exceeds the supported limit")]
    DimensionTooLarge(usize),
    #[error("exact and floating-point routes disagree: {0}")]
    RouteMismatch(String),
    #[error("invalid complex file: {0}")]
    InvalidComplexFile(String),
    #[error("invalid identifier {0:?}: {1}")]
    BadIdentifier(String, String),
    #[error("invalid search configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
