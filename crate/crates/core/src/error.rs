use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set must contain at least one element")]
    EmptyGroundSet,
    #[error("ground set has {0} elements; at most {max} are supported", max = crate::relation::MAX_ELEMENTS)]
    TooManyElements(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("`{field}`: unknown element `{label}`")]
    UnknownElement { field: String, label: String },
    #[error("relations are defined over different ground sets")]
    GroundMismatch,
    #[error("`{field}`: {message}")]
    Invalid { field: String, message: String },

    #[error("relation is not a partial order (fails: {property})")]
    NotPartialOrder { property: &'static str },
    #[error("relation is not a strict partial order (fails: {property})")]
    NotStrictPartialOrder { property: &'static str },
    #[error("forcing ({x}, {y}) creates a cycle")]
    AcyclicityViolation { x: String, y: String },
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),

    #[error("relation is not complete and transitive (fails: {property})")]
    NotCompleteTransitive { property: &'static str },
    #[error("relation is not complete and negatively transitive (fails: {property})")]
    NotCompleteNegativelyTransitive { property: &'static str },
    #[error("relation is not closed in the product topology")]
    NotContinuous,
    #[error("no continuous embedding exists: {0}")]
    NotContinuouslyEmbeddable(String),
    #[error("internal contract violated: {0}")]
    InternalContractViolation(String),

    #[error("tuple lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("epsilon must be positive and finite, got {0}")]
    NonpositiveEpsilon(f64),
    #[error("utility family is empty")]
    EmptyFamily,
    #[error("tolerance violated at ({x}, {y}): margin {margin:e}")]
    ToleranceViolation { x: f64, y: f64, margin: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
