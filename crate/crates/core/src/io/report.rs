//! Analysis report as plain text or CSV rows.

use std::fmt::Write as _;

use crate::analysis::{AnalysisReport, Coincidence, Extremum};
use crate::io::csv::fmt_f64;

pub const REPORT_CSV_HEADER: &str = "kind,index,position_m,value";

fn extrema_lines(out: &mut String, title: &str, extrema: &[Extremum]) {
    let _ = writeln!(out, "{title}: {}", extrema.len());
    for e in extrema {
        let _ = writeln!(
            out,
            "  x = {:+.4} um  value = {:.6}  prominence = {:.4}",
            e.position * 1e6,
            e.value,
            e.prominence
        );
    }
}

pub fn report_to_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "prominence threshold: {}\ncoincidence tolerance: {} m",
        report.params.prominence, report.params.tolerance
    );
    extrema_lines(&mut out, "intensity maxima", &report.maxima);
    extrema_lines(&mut out, "intensity minima", &report.minima);
    extrema_lines(&mut out, "count maxima", &report.count_maxima);
    let _ = writeln!(out, "visibility: {:.6}", report.visibility);
    let verdict = match report.coincidence.verdict {
        Coincidence::Coincident => "coincident",
        Coincidence::NonCoincident => "non-coincident",
    };
    let _ = writeln!(out, "peak coincidence: {verdict}");
    for offset in &report.coincidence.offsets {
        let _ = writeln!(out, "  offset = {:.4} um", offset * 1e6);
    }
    for d in &report.coincidence.diagnostics {
        let _ = writeln!(out, "  note: {d}");
    }
    match report.fringe.primary {
        Some(dphi) => {
            let _ = writeln!(
                out,
                "fringe phase difference (delta phi): {:.6} rad ({:.4} pi)",
                dphi,
                dphi / std::f64::consts::PI
            );
        }
        None => {
            let _ = writeln!(
                out,
                "fringe phase difference (delta phi): undefined (fewer than 2 maxima)"
            );
        }
    }
    for (i, d) in report.fringe.adjacent.iter().enumerate() {
        let _ = writeln!(out, "  maxima {} -> {}: {:.6} rad", i, i + 1, d);
    }
    for bin in &report.fringe.substituted {
        let _ = writeln!(
            out,
            "  note: maximum in empty bin {bin}, nearest populated bin used"
        );
    }
    out
}

pub fn report_to_csv(report: &AnalysisReport) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    let mut row = |kind: &str, index: usize, position: f64, value: f64| {
        let _ = writeln!(
            out,
            "{kind},{index},{},{}",
            fmt_f64(position),
            fmt_f64(value)
        );
    };
    for e in &report.maxima {
        row("maximum", e.index, e.position, e.value);
    }
    for e in &report.minima {
        row("minimum", e.index, e.position, e.value);
    }
    row("visibility", 0, 0.0, report.visibility);
    for (i, o) in report.coincidence.offsets.iter().enumerate() {
        row("coincidence_offset", i, 0.0, *o);
    }
    if let Some(p) = report.fringe.primary {
        row("delta_phi", 0, 0.0, p);
    }
    for (i, d) in report.fringe.adjacent.iter().enumerate() {
        row("adjacent_phase_difference", i, 0.0, *d);
    }
    out
}
