//! Error types shared across the crate.

use thiserror::Error;

use crate::homotopy::CertificationReport;

/// Everything that can go wrong in the library, one variant per contract.
#[derive(Debug, Error)]
pub enum Error {
    /// Speed drops below the relative threshold; the rotation number is undefined.
    #[error("curve is not regular: min speed {min_speed:.3e} vs max {max_speed:.3e}")]
    Regularity { min_speed: f64, max_speed: f64 },

    /// Angle-unwrapping refinement budget exhausted.
    #[error("winding computation exhausted its refinement budget")]
    Aliasing,

    /// A circle map that was supposed to be strictly increasing is not.
    #[error("reparametrization is not strictly monotone: {0}")]
    Monotonicity(String),

    /// A degenerate zero of y' (or x' vanishing there) where a simple cusp was required.
    #[error("curve is not generic: {0}")]
    Genericity(String),

    /// A zero-area precondition failed; carries the measured area and, when
    /// the offender is a homotopy frame, its time.
    #[error("signed area {area:.6e} is not zero within tolerance{}", t.map(|v| format!(" (frame t = {v:.4})")).unwrap_or_default())]
    NonZeroArea { area: f64, t: Option<f64> },

    /// A cusp word whose tally record disagrees with its letters.
    #[error("cusp word tally is inconsistent")]
    InconsistentWord,

    /// The requested cusp pair cannot be cancelled.
    #[error("cusp pair is not cancellable: {0}")]
    NotCancellable(String),

    /// No admissible surgery window exists (x' vanishes in all of them).
    #[error("no admissible surgery window: {0}")]
    WindowObstruction(String),

    /// Requested cusp labels are incompatible with the local x' sign.
    #[error("requested cusp labels are incompatible with the window: {0}")]
    IncompatibleLabels(String),

    /// A constructed homotopy failed its certification checks.
    #[error("homotopy certification failed during {stage}")]
    Certification {
        stage: String,
        report: Box<CertificationReport>,
    },

    /// Area normalization ran out of pump weights.
    #[error("area normalization failed after {attempts} attempts")]
    Normalization { attempts: usize },

    /// Concatenation endpoints do not agree.
    #[error("homotopy endpoints differ by {gap:.3e}")]
    MismatchedEndpoints { gap: f64 },

    /// Interpolation could not be certified; carries the worst offending point.
    #[error("interpolation failed: relative speed {speed:.3e} at (t={t:.4}, s={s:.4})")]
    Interpolation { t: f64, s: f64, speed: f64 },

    /// Rotation numbers differ, so no regular homotopy exists.
    #[error("rotation numbers differ: {rot0} vs {rot1}")]
    RotationMismatch { rot0: i64, rot1: i64 },

    /// The planner failed at a named stage.
    #[error("planner failed during {stage}: {message}")]
    Planner { stage: String, message: String },

    /// Cusp words do not match where alignment required them to.
    #[error("cusp words do not match: {0}")]
    WordMismatch(String),

    /// Malformed document text.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },

    /// Unrecognized document format version.
    #[error("unsupported document version {found}")]
    Version { found: u64 },

    /// Unknown catalog entry.
    #[error("unknown catalog name: {0}")]
    UnknownName(String),

    /// A generic precondition violation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
