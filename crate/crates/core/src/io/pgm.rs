//! Greyscale filmstrip of the normalised intensity as a plain (`P2`) PGM.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::screen::ResultCurves;

pub const MAXVAL: u32 = 255;
/// Plain PGM lines stay within 70 characters.
const LINE_LIMIT: usize = 70;

/// `round(255 * I/I0)` per bin.
pub fn pixel_row(curves: &ResultCurves) -> Vec<u8> {
    curves
        .intensity_norm
        .iter()
        .map(|&v| (MAXVAL as f64 * v).round().clamp(0.0, MAXVAL as f64) as u8)
        .collect()
}

pub fn filmstrip(curves: &ResultCurves, height: u32) -> Result<String> {
    if height == 0 {
        return Err(Error::InvalidArgument(
            "filmstrip height must be positive".into(),
        ));
    }
    let row = pixel_row(curves);
    let mut out = format!("P2\n{} {}\n{}\n", row.len(), height, MAXVAL);
    let mut row_text = String::new();
    let mut line_len = 0;
    for px in &row {
        let token = px.to_string();
        if line_len > 0 && line_len + 1 + token.len() > LINE_LIMIT {
            row_text.push('\n');
            line_len = 0;
        }
        if line_len > 0 {
            row_text.push(' ');
            line_len += 1;
        }
        row_text.push_str(&token);
        line_len += token.len();
    }
    row_text.push('\n');
    for _ in 0..height {
        out.push_str(&row_text);
    }
    Ok(out)
}

pub fn write_filmstrip(curves: &ResultCurves, path: &Path, height: u32) -> Result<()> {
    let text = filmstrip(curves, height)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curves(intensity: Vec<f64>) -> ResultCurves {
        let n = intensity.len();
        ResultCurves {
            bin_width: 1e-8,
            bin_centers: vec![0.0; n],
            count_raw: vec![0; n],
            count_norm: vec![0.0; n],
            intensity_raw: intensity.clone(),
            intensity_norm: intensity,
            mean_phase: vec![0.0; n],
            phase_defined: vec![false; n],
        }
    }

    #[test]
    fn zero_intensity_is_black() {
        let text = filmstrip(&curves(vec![0.0; 3]), 2).unwrap();
        assert_eq!(text, "P2\n3 2\n255\n0 0 0\n0 0 0\n");
    }

    #[test]
    fn maximum_maps_to_white() {
        assert_eq!(pixel_row(&curves(vec![1.0, 0.5, 0.0])), [255, 128, 0]);
    }

    #[test]
    fn zero_height_is_an_error() {
        assert!(filmstrip(&curves(vec![1.0]), 0).is_err());
    }

    #[test]
    fn long_rows_are_wrapped() {
        let text = filmstrip(&curves(vec![1.0; 600]), 1).unwrap();
        assert!(text.lines().all(|l| l.len() <= 70));
        let values: Vec<&str> = text
            .lines()
            .skip(3)
            .flat_map(str::split_whitespace)
            .collect();
        assert_eq!(values.len(), 600);
    }
}
