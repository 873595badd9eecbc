use thiserror::Error;

/// Errors raised by graph, polynomial, algebra and report constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("monomial ideal has no generators")]
    EmptyGenerators,

    #[error("quotient is not Artinian: no pure power of variable {label} among the generators")]
    NotArtinian { variable: usize, label: String },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "classification mismatch for L({m},{n}): computed WLP = {computed}, expected WLP = {expected}"
    )]
    ClassificationMismatch {
        m: usize,
        n: usize,
        computed: bool,
        expected: bool,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
