//! Ground-truth direction fields from label masks.
//!
//! For every foreground pixel `p` of class `c` the field stores the unit
//! vector pointing from the nearest different-label pixel `b` toward `p`;
//! background pixels hold `(0, 0)`. "Different label" includes both
//! background and other foreground classes, so inter-structure borders count
//! as tissue boundary and `|p - b| >= 1` always holds. Equidistant candidates
//! for `b` are resolved toward the smallest `(row, col)`, making the field a
//! total, deterministic function of the mask.
//!
//! Channel conventions, fixed end to end: channel 0 is the x (column)
//! displacement, channel 1 the y (row) displacement. Distances are Euclidean
//! in pixel units.

mod edt;
mod io;

pub use io::{field_to_image, read_field, write_field, write_field_viz};

use ndarray::{Array2, Array3};

use crate::error::{DfmError, Result};
use crate::par::Exec;

pub(crate) use edt::{envelope_dist2, nearest_sites, NearestSiteMap};

/// 2D integer class map: 0 is background, `1..=num_classes` are structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMask {
    data: Array2<u8>,
    num_classes: u8,
}

impl LabelMask {
    /// Validates that every value lies in `0..=num_classes` and that the mask
    /// is non-empty.
    pub fn new(data: Array2<u8>, num_classes: u8) -> Result<Self> {
        let (h, w) = data.dim();
        if h == 0 || w == 0 {
            return Err(DfmError::InvalidConfig(format!(
                "label mask must be non-empty, got {h}x{w}"
            )));
        }
        if num_classes == 0 {
            return Err(DfmError::InvalidConfig(
                "num_classes must be >= 1".into(),
            ));
        }
        if let Some(&bad) = data.iter().find(|&&v| v > num_classes) {
            return Err(DfmError::LabelOutOfRange {
                label: bad as i64,
                max: num_classes,
                context: "label mask".into(),
            });
        }
        Ok(Self { data, num_classes })
    }

    pub fn data(&self) -> &Array2<u8> {
        &self.data
    }

    pub fn num_classes(&self) -> u8 {
        self.num_classes
    }

    pub fn dim(&self) -> (usize, usize) {
        self.data.dim()
    }

    /// Foreground classes that actually occur in the mask, ascending.
    pub fn present_classes(&self) -> Vec<u8> {
        let mut seen = [false; 256];
        for &v in self.data.iter() {
            seen[v as usize] = true;
        }
        (1..=self.num_classes).filter(|&c| seen[c as usize]).collect()
    }
}

/// Per-pixel unit vectors away from the nearest boundary; `(0, 0)` on
/// background. Shape `(2, H, W)` with channel 0 = x, channel 1 = y.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionField {
    data: Array3<f32>,
}

impl DirectionField {
    /// Wraps a raw `(2, H, W)` array without checking the unit-norm invariant
    /// (predicted fields are not unit length).
    pub fn from_raw(data: Array3<f32>) -> Result<Self> {
        if data.dim().0 != 2 {
            return Err(DfmError::ShapeMismatch {
                context: "direction field",
                expected: vec![2],
                got: vec![data.dim().0],
            });
        }
        Ok(Self { data })
    }

    pub fn data(&self) -> &Array3<f32> {
        &self.data
    }

    pub fn into_inner(self) -> Array3<f32> {
        self.data
    }

    /// Spatial dimensions `(H, W)`.
    pub fn hw(&self) -> (usize, usize) {
        let (_, h, w) = self.data.dim();
        (h, w)
    }
}

/// Marks pixels whose label differs from at least one 4-neighbor.
///
/// A constant mask (all background included) yields an all-false map.
pub fn compute_boundary(mask: &LabelMask) -> Array2<bool> {
    let (h, w) = mask.dim();
    let data = mask.data();
    Array2::from_shape_fn((h, w), |(r, c)| {
        let v = data[(r, c)];
        (r > 0 && data[(r - 1, c)] != v)
            || (r + 1 < h && data[(r + 1, c)] != v)
            || (c > 0 && data[(r, c - 1)] != v)
            || (c + 1 < w && data[(r, c + 1)] != v)
    })
}

/// The boundary set used by the direction field for pixels of class `c`:
/// every pixel whose label differs from `c`.
pub fn class_boundary_set(mask: &LabelMask, class: u8) -> Array2<bool> {
    mask.data().mapv(|v| v != class)
}

/// Computes the ground-truth direction field via the exact nearest-site
/// distance transform (one pass per foreground class present).
///
/// Errors with [`DfmError::NoBoundary`] if some foreground class covers the
/// whole image, since no different-label pixel exists for it.
pub fn compute_direction_field(mask: &LabelMask) -> Result<DirectionField> {
    compute_direction_field_exec(Exec::default(), mask)
}

/// [`compute_direction_field`] with an explicit execution strategy (exposed
/// for the benchmark suite).
#[doc(hidden)]
pub fn compute_direction_field_exec(exec: Exec, mask: &LabelMask) -> Result<DirectionField> {
    let (h, w) = mask.dim();
    let labels = mask.data();
    let flat = labels.as_slice().expect("label mask is standard layout");
    let mut df = Array3::<f32>::zeros((2, h, w));

    for class in mask.present_classes() {
        let sites: Vec<bool> = flat.iter().map(|&v| v != class).collect();
        let nearest = nearest_sites(exec, &sites, h, w)
            .ok_or(DfmError::NoBoundary(class))?;
        for r in 0..h {
            for c in 0..w {
                if labels[(r, c)] != class {
                    continue;
                }
                let i = r * w + c;
                let (v_x, v_y) = unit_from_site(r, c, nearest.row[i] as usize, nearest.col[i] as usize);
                df[(0, r, c)] = v_x;
                df[(1, r, c)] = v_y;
            }
        }
    }
    DirectionField::from_raw(df)
}

/// Exhaustive-search reference for [`compute_direction_field`]: identical
/// contract, O(n^2) scan over all different-label pixels per foreground
/// pixel. Intended as a test oracle.
pub fn brute_force_direction_field(mask: &LabelMask) -> Result<DirectionField> {
    let (h, w) = mask.dim();
    let labels = mask.data();
    let mut df = Array3::<f32>::zeros((2, h, w));

    for class in mask.present_classes() {
        let mut any_site = false;
        for r in 0..h {
            for c in 0..w {
                if labels[(r, c)] != class {
                    continue;
                }
                let mut best: Option<(f64, usize, usize)> = None;
                for br in 0..h {
                    for bc in 0..w {
                        if labels[(br, bc)] == class {
                            continue;
                        }
                        let dr = r as f64 - br as f64;
                        let dc = c as f64 - bc as f64;
                        let cand = (dr * dr + dc * dc, br, bc);
                        if best.map_or(true, |b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
                match best {
                    Some((_, br, bc)) => {
                        any_site = true;
                        let (v_x, v_y) = unit_from_site(r, c, br, bc);
                        df[(0, r, c)] = v_x;
                        df[(1, r, c)] = v_y;
                    }
                    None => return Err(DfmError::NoBoundary(class)),
                }
            }
        }
        // A class occupying every pixel has no candidate sites at all.
        if !any_site {
            return Err(DfmError::NoBoundary(class));
        }
    }
    DirectionField::from_raw(df)
}

fn unit_from_site(r: usize, c: usize, br: usize, bc: usize) -> (f32, f32) {
    let dx = c as f64 - bc as f64;
    let dy = r as f64 - br as f64;
    let len = (dx * dx + dy * dy).sqrt();
    ((dx / len) as f32, (dy / len) as f32)
}

/// Splits a field (ground truth or raw prediction) into per-pixel angle
/// `atan2(y, x)` and magnitude. Zero-magnitude pixels get angle 0.
pub fn field_to_polar(df: &Array3<f32>) -> (Array2<f32>, Array2<f32>) {
    let (_, h, w) = df.dim();
    let mut angle = Array2::<f32>::zeros((h, w));
    let mut mag = Array2::<f32>::zeros((h, w));
    for r in 0..h {
        for c in 0..w {
            let x = df[(0, r, c)];
            let y = df[(1, r, c)];
            let m = (x * x + y * y).sqrt();
            mag[(r, c)] = m;
            if m > 0.0 {
                angle[(r, c)] = y.atan2(x);
            }
        }
    }
    (angle, mag)
}
