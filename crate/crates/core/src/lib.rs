//! Directional feature maps (DFM) for 2D cardiac MRI segmentation.
//!
//! The method augments a U-Net with two small modules:
//!
//! 1. a **direction field (DF) head** that regresses, for every foreground
//!    pixel, the unit vector pointing away from the nearest tissue boundary
//!    (zero on background), and
//! 2. a **feature rectification and fusion (FRF) operator** that repeatedly
//!    resamples the segmentation features along that field via differentiable
//!    bilinear interpolation, then concatenates the rectified features with
//!    the originals before the final classifier.
//!
//! Crate layout:
//!
//! - [`field`] — ground-truth direction fields from label masks (exact
//!   nearest-boundary distance transform), a brute-force oracle, polar
//!   encoding and file/PNG output.
//! - [`frf`] — the differentiable warp operator with analytic gradients.
//! - [`losses`] — cross-entropy, the weighted direction-field loss and the
//!   class-balance weight map.
//! - [`nn`] — the layer toolkit (conv, batch norm, pooling, bilinear
//!   upsampling, Adam) used by the network, with explicit backward passes.
//! - [`model`] — the U-Net backbone with the three heads and checkpointing.
//! - [`data`] — NIfTI ingestion (ACDC layout), slicing/preprocessing,
//!   augmentation and a synthetic cardiac-like phantom generator.
//! - [`metrics`] — 3D Dice, 3D Hausdorff (mm) and stratified
//!   boundary-distance accuracy.
//! - [`harness`] — training loop, evaluation, step-count ablation, reports
//!   and plots.
//!
//! Data-parallel inner loops (distance-transform line sweeps, per-sample
//! batch work, per-case evaluation) run on rayon when the default `parallel`
//! feature is enabled and fall back to equivalent sequential code without it.
//! Both paths perform identical floating-point reductions, so results are
//! bitwise reproducible either way.

pub mod data;
pub mod error;
pub mod field;
pub mod frf;
pub mod harness;
pub mod losses;
pub mod metrics;
pub mod model;
pub mod nn;
pub mod par;

pub use error::{DfmError, Result};
