use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by constructions. Law failures are not errors; they are
/// reported through [`crate::LawReport`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A structure component required by an operation is absent, or an
    /// operation was requested on a backend that does not support it.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("element {element} is not in {set}")]
    NotInCarrier { element: String, set: String },

    #[error("not composable: {0}")]
    Composability(String),

    #[error("not a section: {0}")]
    NotASection(String),

    #[error("not left invariant: {0}")]
    NotInvariant(String),

    #[error("{chart}: defining residual {residual:e} exceeds {tolerance:e}")]
    ChartResidual {
        chart: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("not in the vertical equaliser: residual {residual:e} exceeds {tolerance:e}")]
    EqualiserViolation { residual: f64, tolerance: f64 },

    #[error("bracket does not factor through the source-constant bundle: residual {residual:e} exceeds {tolerance:e}")]
    ClosureResidual { residual: f64, tolerance: f64 },

    #[error("base points differ by {residual:e}")]
    BaseMismatch { residual: f64 },

    #[error("jet order exceeded: {0}")]
    JetOrder(String),

    #[error("evaluation domain error: {0}")]
    Domain(String),

    #[error("basis is singular: rank {rank} < {size}")]
    SingularBasis { rank: usize, size: usize },
}

impl Error {
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }

    pub(crate) fn missing(component: &str) -> Self {
        Error::Config(format!("tangent witness has no `{component}` component"))
    }
}
