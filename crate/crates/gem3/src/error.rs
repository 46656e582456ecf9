use thiserror::Error;

/// Errors across graph validation, the Heegaard machinery, complexity
/// computation and catalogue I/O.
#[derive(Debug, Error)]
pub enum GemError {
    #[error("order {0} is not an even positive integer")]
    OddOrder(usize),
    #[error("matching {colour} fixes vertex {vertex}")]
    FixedPoint { colour: usize, vertex: u32 },
    #[error("matching {colour} is not an involution at vertex {vertex}")]
    NotInvolution { colour: usize, vertex: u32 },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexRange { vertex: usize, order: usize },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("colour set is empty")]
    EmptyColourSet,
    #[error("vertices {v1} and {v2} lie in the same bipartition class")]
    BipartitionClash { v1: u32, v2: u32 },
    #[error("graph is not bipartite")]
    NonBipartite,
    #[error("graph is not contracted")]
    NotContracted,
    #[error("graph is not a manifold gem")]
    NotAManifoldGem,
    #[error("residue counts disagree across the partition: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },
    #[error("surface Euler characteristic {actual} disagrees with residue genus {expected}")]
    EulerMismatch { expected: i64, actual: i64 },
    #[error("residue index {index} out of range ({count} residues)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("starting face is not a residue of the requested colour pair")]
    NotAFace,
    #[error("region was not produced by the stated choice")]
    ChoiceMismatch,
    #[error("entry carries no known_complexity annotation")]
    MissingAnnotation,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("max order {requested} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { requested: usize, ceiling: usize },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Semantic {
        line: usize,
        #[source]
        source: Box<GemError>,
    },
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: Box<GemError>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid JSON record: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, GemError>;

impl GemError {
    /// True for failures of internal consistency rather than bad input.
    /// The CLI maps these to exit code 2.
    pub fn is_internal(&self) -> bool {
        match self {
            GemError::GenusMismatch { .. }
            | GemError::EulerMismatch { .. }
            | GemError::ChoiceMismatch => true,
            GemError::Semantic { source, .. } | GemError::File { source, .. } => {
                source.is_internal()
            }
            _ => false,
        }
    }

    /// Coarse class of the error, ignoring location wrappers.
    pub fn class(&self) -> &'static str {
        match self {
            GemError::Semantic { source, .. } | GemError::File { source, .. } => source.class(),
            GemError::OddOrder(_) => "odd-order",
            GemError::FixedPoint { .. } => "fixed-point",
            GemError::NotInvolution { .. } => "non-involution",
            GemError::VertexRange { .. } => "vertex-range",
            GemError::Disconnected { .. } => "disconnected",
            GemError::Syntax { .. } => "syntax",
            GemError::EmptyColourSet => "empty-colour-set",
            GemError::BipartitionClash { .. } => "bipartition-clash",
            GemError::NonBipartite => "non-bipartite",
            GemError::NotContracted => "not-contracted",
            GemError::NotAManifoldGem => "not-a-manifold-gem",
            GemError::GenusMismatch { .. } | GemError::EulerMismatch { .. } => "genus-mismatch",
            GemError::IndexOutOfRange { .. } => "index-out-of-range",
            GemError::NotAFace => "not-a-face",
            GemError::ChoiceMismatch => "choice-mismatch",
            GemError::MissingAnnotation => "missing-annotation",
            GemError::Parameter(_) => "parameter",
            GemError::CeilingExceeded { .. } => "ceiling-exceeded",
            GemError::Io(_) => "io",
            GemError::Json(_) => "json",
        }
    }
}
