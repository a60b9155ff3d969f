//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the dfm-core library.
#[derive(Debug, Error)]
pub enum DfmError {
    /// Two arrays that must agree in shape do not.
    #[error("shape mismatch in {context}: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        context: &'static str,
        expected: Vec<usize>,
        got: Vec<usize>,
    },

    /// A foreground class fills the entire mask, so no pixel of a different
    /// label exists and the direction field is undefined.
    #[error("no boundary for class {0}: every pixel has this label")]
    NoBoundary(u8),

    /// A label value lies outside the declared class range.
    #[error("label {label} outside valid range 0..={max} in {context}")]
    LabelOutOfRange {
        label: i64,
        max: u8,
        context: String,
    },

    /// Configuration rejected before any work started.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// Hausdorff distance is undefined when either voxel set is empty.
    #[error("undefined Hausdorff for class {class}: {side} set is empty")]
    UndefinedHausdorff { class: u8, side: &'static str },

    /// Dataset files missing or malformed.
    #[error("dataset error: {0}")]
    Dataset(String),

    /// Checkpoint archive unreadable or incompatible with the requested model.
    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    /// Training aborted because the loss became non-finite.
    #[error("non-finite loss at epoch {epoch}, step {step} (samples {batch_ids:?}): ce_initial={ce_initial}, ce_final={ce_final}, df={df_loss}")]
    NonFiniteLoss {
        epoch: usize,
        step: usize,
        batch_ids: Vec<usize>,
        ce_initial: f64,
        ce_final: f64,
        df_loss: f64,
    },

    /// Malformed field file or unsupported version.
    #[error("field file error: {0}")]
    FieldFile(String),

    #[error("NIfTI error: {0}")]
    Nifti(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("plot error: {0}")]
    Plot(String),
}

pub type Result<T> = std::result::Result<T, DfmError>;
