//! Direction-field file format and PNG visualization.
//!
//! File layout: one ASCII header line `DFM-DF v1 <H> <W>\n` followed by
//! `2*H*W` little-endian f32 values in channel-major order (full x plane,
//! then full y plane), rows in row-major order within a plane.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use image::{Rgb, RgbImage};
use ndarray::Array3;

use super::{field_to_polar, DirectionField};
use crate::error::{DfmError, Result};

const MAGIC: &str = "DFM-DF v1";

/// Writes a field in the `DFM-DF v1` binary format.
pub fn write_field(df: &DirectionField, path: &Path) -> Result<()> {
    let (h, w) = df.hw();
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "{MAGIC} {h} {w}")?;
    let data = df.data();
    for ch in 0..2 {
        for r in 0..h {
            for c in 0..w {
                out.write_all(&data[(ch, r, c)].to_le_bytes())?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads a `DFM-DF v1` field file.
pub fn read_field(path: &Path) -> Result<DirectionField> {
    let mut rd = BufReader::new(File::open(path)?);
    let mut header = Vec::new();
    loop {
        let mut b = [0u8; 1];
        rd.read_exact(&mut b)
            .map_err(|_| DfmError::FieldFile("truncated header".into()))?;
        if b[0] == b'\n' {
            break;
        }
        if header.len() > 128 {
            return Err(DfmError::FieldFile("header line too long".into()));
        }
        header.push(b[0]);
    }
    let header = String::from_utf8(header)
        .map_err(|_| DfmError::FieldFile("header is not UTF-8".into()))?;
    let mut parts = header.split_whitespace();
    let magic = format!(
        "{} {}",
        parts.next().unwrap_or(""),
        parts.next().unwrap_or("")
    );
    if magic != MAGIC {
        return Err(DfmError::FieldFile(format!(
            "bad magic {magic:?}, expected {MAGIC:?}"
        )));
    }
    let h: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| DfmError::FieldFile("missing height".into()))?;
    let w: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| DfmError::FieldFile("missing width".into()))?;

    let mut buf = vec![0u8; 2 * h * w * 4];
    rd.read_exact(&mut buf)
        .map_err(|_| DfmError::FieldFile("truncated payload".into()))?;
    let mut data = Array3::<f32>::zeros((2, h, w));
    let mut off = 0;
    for ch in 0..2 {
        for r in 0..h {
            for c in 0..w {
                data[(ch, r, c)] =
                    f32::from_le_bytes([buf[off], buf[off + 1], buf[off + 2], buf[off + 3]]);
                off += 4;
            }
        }
    }
    DirectionField::from_raw(data)
}

/// Renders a field to an RGB image: angle maps to hue, magnitude to value
/// (scaled down if any magnitude exceeds 1, so predictions stay in gamut).
pub fn field_to_image(df: &DirectionField) -> RgbImage {
    let (h, w) = df.hw();
    let (angle, mag) = field_to_polar(df.data());
    let max_mag = mag.iter().fold(1.0f32, |a, &m| a.max(m));
    let mut img = RgbImage::new(w as u32, h as u32);
    for r in 0..h {
        for c in 0..w {
            let hue = (angle[(r, c)].to_degrees() + 360.0) % 360.0;
            let value = mag[(r, c)] / max_mag;
            img.put_pixel(c as u32, r as u32, hsv_to_rgb(hue, 1.0, value));
        }
    }
    img
}

/// Writes the HSV visualization as a PNG.
pub fn write_field_viz(df: &DirectionField, path: &Path) -> Result<()> {
    field_to_image(df)
        .save(path)
        .map_err(|e| DfmError::FieldFile(format!("PNG write failed: {e}")))
}

fn hsv_to_rgb(h_deg: f32, s: f32, v: f32) -> Rgb<u8> {
    let c = v * s;
    let hp = h_deg / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    Rgb([
        ((r + m) * 255.0).round() as u8,
        ((g + m) * 255.0).round() as u8,
        ((b + m) * 255.0).round() as u8,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{compute_direction_field, LabelMask};
    use ndarray::Array2;

    #[test]
    fn field_file_round_trip() {
        let mut m = Array2::<u8>::zeros((6, 9));
        for r in 2..5 {
            for c in 3..7 {
                m[(r, c)] = 1;
            }
        }
        let mask = LabelMask::new(m, 1).unwrap();
        let df = compute_direction_field(&mask).unwrap();

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("field.dfmdf");
        write_field(&df, &path).unwrap();
        let back = read_field(&path).unwrap();
        assert_eq!(df, back);
    }

    #[test]
    fn rejects_bad_magic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bogus.dfmdf");
        std::fs::write(&path, b"NOT-A-FIELD 4 4\n").unwrap();
        assert!(matches!(
            read_field(&path).unwrap_err(),
            DfmError::FieldFile(_)
        ));
    }

    #[test]
    fn viz_has_black_background() {
        let mut m = Array2::<u8>::zeros((4, 4));
        m[(1, 1)] = 1;
        let mask = LabelMask::new(m, 1).unwrap();
        let df = compute_direction_field(&mask).unwrap();
        let img = field_to_image(&df);
        assert_eq!(img.get_pixel(0, 0), &Rgb([0, 0, 0]));
        assert_ne!(img.get_pixel(1, 1), &Rgb([0, 0, 0]));
    }
}
