use thiserror::Error;

/// Normalisation denominators at or below this are treated as total conflict.
pub const CONFLICT_TOLERANCE: f64 = 1e-12;

/// Tolerance on mass and belief-degree sums.
pub const SUM_TOLERANCE: f64 = 1e-9;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grade frame: {0}")]
    InvalidFrame(String),

    #[error("operands are defined on different grade frames")]
    FrameMismatch,

    #[error("unknown grade `{0}`")]
    UnknownGrade(String),

    #[error("{what} = {value} is outside [0, 1]")]
    OutOfRange { what: String, value: f64 },

    #[error("masses sum to {sum}, expected 1")]
    MassSum { sum: f64 },

    #[error("belief degrees sum to {sum}, which exceeds 1")]
    DegreeSum { sum: f64 },

    #[error("expected a plain BBA, got an importance-discounted BBA")]
    NotPlainBba,

    #[error("complete conflict: combination is undefined")]
    CompleteConflict,

    #[error("all mass is on the indecisiveness element; nothing left to normalise")]
    DegenerateOmega,

    #[error("frame has {grades} grades, at most {max} supported here")]
    FrameTooLarge { grades: usize, max: usize },

    #[error("nothing to aggregate")]
    EmptyInput,

    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },

    #[error("axiom not applicable to this instance: {0}")]
    Inapplicable(String),

    #[error("{path}: missing {what}")]
    MissingParameter { path: String, what: &'static str },

    #[error("{path}: explicit reliability {explicit} differs from derived mean {derived}")]
    ReliabilityMismatch {
        path: String,
        explicit: f64,
        derived: f64,
    },

    #[error("{path}: no assessment for alternative `{alternative}`")]
    MissingAssessment { path: String, alternative: String },

    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),

    #[error("{path}: {source}")]
    AtNode {
        path: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at(self, path: &str) -> Self {
        match self {
            // keep the innermost path
            e @ (Error::AtNode { .. }
            | Error::MissingParameter { .. }
            | Error::MissingAssessment { .. }
            | Error::ReliabilityMismatch { .. }) => e,
            e => Error::AtNode {
                path: path.to_string(),
                source: Box::new(e),
            },
        }
    }

    /// Strips node annotations.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::AtNode { source, .. } => source.root_cause(),
            e => e,
        }
    }
}

pub(crate) fn check_unit(what: impl Into<String>, value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            what: what.into(),
            value,
        })
    }
}
