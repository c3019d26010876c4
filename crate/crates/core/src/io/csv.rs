//! Curve and photon-log CSV files.
//!
//! Floats are written in scientific notation with 17 significant digits,
//! integers verbatim, LF line endings. Identical inputs give identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::PhotonRecord;
use crate::screen::ResultCurves;

pub const CURVE_HEADER: &str =
    "bin_center_m,count_raw,count_norm,intensity_raw,intensity_norm,mean_phase_rad,phase_defined";

pub const PHOTON_HEADER: &str = "slit_index,initial_phase_turns,scatter_angle_rad,\
post_scatter_phase_rad,impact_coordinate_m,impact_phase_rad,polarization_angle_rad";

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn curves_to_csv(curves: &ResultCurves) -> String {
    let mut out = String::with_capacity(160 * (curves.len() + 1));
    out.push_str(CURVE_HEADER);
    out.push('\n');
    for i in 0..curves.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(curves.bin_centers[i]),
            curves.count_raw[i],
            fmt_f64(curves.count_norm[i]),
            fmt_f64(curves.intensity_raw[i]),
            fmt_f64(curves.intensity_norm[i]),
            fmt_f64(curves.mean_phase[i]),
            u8::from(curves.phase_defined[i]),
        );
    }
    out
}

pub fn write_csv(curves: &ResultCurves, path: &Path) -> Result<()> {
    fs::write(path, curves_to_csv(curves)).map_err(|e| Error::io(path, e))
}

/// Reads a curve file produced by [`write_csv`].
pub fn curves_from_csv(text: &str) -> Result<ResultCurves> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == CURVE_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: "missing or unexpected curve CSV header".into(),
            })
        }
    }
    let mut curves = ResultCurves {
        bin_width: 0.0,
        bin_centers: Vec::new(),
        count_raw: Vec::new(),
        count_norm: Vec::new(),
        intensity_raw: Vec::new(),
        intensity_norm: Vec::new(),
        mean_phase: Vec::new(),
        phase_defined: Vec::new(),
    };
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: n + 1,
            message,
        };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 7 {
            return Err(err(format!("expected 7 columns, found {}", fields.len())));
        }
        let float = |i: usize| {
            fields[i]
                .parse::<f64>()
                .map_err(|_| err(format!("invalid number `{}`", fields[i])))
        };
        curves.bin_centers.push(float(0)?);
        curves.count_raw.push(
            fields[1]
                .parse()
                .map_err(|_| err(format!("invalid count `{}`", fields[1])))?,
        );
        curves.count_norm.push(float(2)?);
        curves.intensity_raw.push(float(3)?);
        curves.intensity_norm.push(float(4)?);
        curves.mean_phase.push(float(5)?);
        curves.phase_defined.push(match fields[6] {
            "0" => false,
            "1" => true,
            other => return Err(err(format!("invalid phase flag `{other}`"))),
        });
    }
    if curves.bin_centers.len() >= 2 {
        let n = curves.bin_centers.len();
        curves.bin_width = (curves.bin_centers[n - 1] - curves.bin_centers[0]) / (n - 1) as f64;
    }
    Ok(curves)
}

pub fn read_csv(path: &Path) -> Result<ResultCurves> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    curves_from_csv(&text)
}

pub fn photon_log_to_csv(records: &[PhotonRecord]) -> String {
    let mut out = String::with_capacity(180 * (records.len() + 1));
    out.push_str(PHOTON_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.slit_index,
            fmt_f64(r.initial_phase),
            fmt_f64(r.scatter_angle),
            fmt_f64(r.post_scatter_phase),
            fmt_f64(r.impact_coordinate),
            fmt_f64(r.impact_phase),
            fmt_f64(r.polarization_angle),
        );
    }
    out
}

pub fn write_photon_log(records: &[PhotonRecord], path: &Path) -> Result<()> {
    fs::write(path, photon_log_to_csv(records)).map_err(|e| Error::io(path, e))
}
