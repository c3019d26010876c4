//! Diagnostics over finished curves: extrema, visibility, peak coincidence
//! and the phase difference between neighbouring intensity maxima.

use std::f64::consts::{PI, TAU};

use crate::screen::ResultCurves;

pub const DEFAULT_PROMINENCE: f64 = 0.05;
pub const DEFAULT_TOLERANCE: f64 = 0.1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub index: usize,
    pub position: f64,
    pub value: f64,
    /// Prominence relative to the curve maximum.
    pub prominence: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Extrema {
    pub maxima: Vec<Extremum>,
    pub minima: Vec<Extremum>,
}

/// Interior local maxima of `values`; a plateau reports its midpoint.
fn local_maxima(values: &[f64]) -> Vec<usize> {
    let mut peaks = Vec::new();
    let n = values.len();
    if n < 3 {
        return peaks;
    }
    let mut i = 1;
    while i < n - 1 {
        if values[i - 1] < values[i] {
            let mut ahead = i + 1;
            while ahead < n - 1 && values[ahead] == values[i] {
                ahead += 1;
            }
            if values[ahead] < values[i] {
                peaks.push((i + ahead - 1) / 2);
                i = ahead;
                continue;
            }
        }
        i += 1;
    }
    peaks
}

/// Height of `peak` above the higher of its two bases. A base is the lowest
/// point between the peak and the nearest strictly higher sample (or the end).
fn prominence(values: &[f64], peak: usize) -> f64 {
    let height = values[peak];
    let mut left_min = height;
    for &v in values[..peak].iter().rev() {
        if v > height {
            break;
        }
        left_min = left_min.min(v);
    }
    let mut right_min = height;
    for &v in &values[peak + 1..] {
        if v > height {
            break;
        }
        right_min = right_min.min(v);
    }
    height - left_min.max(right_min)
}

/// Local maxima and minima whose prominence is at least `min_prominence`
/// times the curve maximum. Positions are bin centres.
pub fn find_extrema(values: &[f64], centers: &[f64], min_prominence: f64) -> Extrema {
    let scale = values.iter().copied().fold(0.0, f64::max);
    if values.is_empty() || scale <= 0.0 {
        return Extrema::default();
    }
    let pick = |curve: &[f64], sign: f64| -> Vec<Extremum> {
        local_maxima(curve)
            .into_iter()
            .filter_map(|i| {
                let p = prominence(curve, i) / scale;
                (p >= min_prominence).then(|| Extremum {
                    index: i,
                    position: centers[i],
                    value: sign * curve[i],
                    prominence: p,
                })
            })
            .collect()
    };
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    Extrema {
        maxima: pick(values, 1.0),
        minima: pick(&negated, -1.0),
    }
}

/// Fringe contrast `(I_max - I_min) / (I_max + I_min)` over bins whose centre
/// lies in `[lo, hi]`. Empty, flat or all-zero regions give 0.
pub fn visibility(values: &[f64], centers: &[f64], lo: f64, hi: f64) -> f64 {
    let (mut max, mut min) = (f64::NEG_INFINITY, f64::INFINITY);
    for (&v, &x) in values.iter().zip(centers) {
        if x >= lo && x <= hi {
            max = max.max(v);
            min = min.min(v);
        }
    }
    if !max.is_finite() || max + min <= 0.0 {
        return 0.0;
    }
    ((max - min) / (max + min)).clamp(0.0, 1.0)
}

/// Visibility of the minima flanking the global maximum: for each side, the
/// contrast between the neighbouring maximum and the minimum that separates
/// it from the global maximum. Returns the larger of the two sides, or 0 when
/// the curve has a single maximum.
pub fn central_visibility(values: &[f64], centers: &[f64], extrema: &Extrema) -> f64 {
    let Some(global) = extrema
        .maxima
        .iter()
        .max_by(|a, b| a.value.total_cmp(&b.value))
    else {
        return 0.0;
    };
    let mut best: f64 = 0.0;
    let left = extrema
        .maxima
        .iter().rfind(|m| m.index < global.index);
    let right = extrema.maxima.iter().find(|m| m.index > global.index);
    for neighbour in [left, right].into_iter().flatten() {
        let (a, b) = if neighbour.index < global.index {
            (neighbour.index, global.index)
        } else {
            (global.index, neighbour.index)
        };
        let Some(dip) = extrema
            .minima
            .iter()
            .filter(|m| m.index > a && m.index < b)
            .min_by(|x, y| x.value.total_cmp(&y.value))
        else {
            continue;
        };
        let (lo, hi) = if neighbour.index < dip.index {
            (neighbour.position, dip.position)
        } else {
            (dip.position, neighbour.position)
        };
        best = best.max(visibility(values, centers, lo, hi));
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coincidence {
    Coincident,
    NonCoincident,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoincidenceReport {
    pub verdict: Coincidence,
    /// Distance from each intensity maximum to its nearest count maximum.
    pub offsets: Vec<f64>,
    pub diagnostics: Vec<String>,
}

/// Matches each intensity maximum to the nearest count maximum. Coincident
/// iff both curves have the same number of maxima and every offset is within
/// `tolerance`.
pub fn peak_coincidence(
    count: &[f64],
    intensity: &[f64],
    centers: &[f64],
    tolerance: f64,
    min_prominence: f64,
) -> CoincidenceReport {
    let count_peaks = find_extrema(count, centers, min_prominence).maxima;
    let intensity_peaks = find_extrema(intensity, centers, min_prominence).maxima;
    let mut diagnostics = Vec::new();
    let offsets: Vec<f64> = intensity_peaks
        .iter()
        .filter_map(|ip| {
            count_peaks
                .iter()
                .map(|cp| (cp.position - ip.position).abs())
                .min_by(f64::total_cmp)
        })
        .collect();
    let mut coincident = !intensity_peaks.is_empty();
    if count_peaks.len() != intensity_peaks.len() {
        coincident = false;
        diagnostics.push(format!(
            "{} intensity maxima vs {} count maxima",
            intensity_peaks.len(),
            count_peaks.len()
        ));
    }
    for (peak, offset) in intensity_peaks.iter().zip(&offsets) {
        if *offset > tolerance {
            coincident = false;
            diagnostics.push(format!(
                "intensity maximum at {:.4e} m is {:.4e} m from the nearest count maximum",
                peak.position, offset
            ));
        }
    }
    if intensity_peaks.is_empty() {
        diagnostics.push("no intensity maxima".to_string());
    }
    CoincidenceReport {
        verdict: if coincident {
            Coincidence::Coincident
        } else {
            Coincidence::NonCoincident
        },
        offsets,
        diagnostics,
    }
}

/// `b - a` on the circle, in `(-π, π]`.
pub fn circular_difference(a: f64, b: f64) -> f64 {
    let d = (b - a).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FringePhaseReport {
    /// Phase difference from the maximum nearest the pattern centre to the
    /// next nearest one.
    pub primary: Option<f64>,
    /// Differences between positionally adjacent maxima, left to right.
    pub adjacent: Vec<f64>,
    /// Maxima whose own bin was empty; the nearest populated bin was used.
    pub substituted: Vec<usize>,
}

/// Count-weighted centroid of the impacts, used as the pattern centre.
pub fn pattern_center(curves: &ResultCurves) -> f64 {
    let total: f64 = curves.count_raw.iter().map(|&c| c as f64).sum();
    if total == 0.0 {
        return 0.0;
    }
    curves
        .count_raw
        .iter()
        .zip(&curves.bin_centers)
        .map(|(&c, &x)| c as f64 * x)
        .sum::<f64>()
        / total
}

fn phase_at(curves: &ResultCurves, bin: usize) -> Option<(f64, bool)> {
    if curves.phase_defined[bin] {
        return Some((curves.mean_phase[bin], false));
    }
    (0..curves.len())
        .filter(|&i| curves.phase_defined[i])
        .min_by_key(|&i| i.abs_diff(bin))
        .map(|i| (curves.mean_phase[i], true))
}

/// Mean impact phase differences between intensity maxima.
pub fn fringe_phase_difference(curves: &ResultCurves, maxima: &[Extremum]) -> FringePhaseReport {
    let mut report = FringePhaseReport::default();
    if maxima.len() < 2 {
        return report;
    }
    let mut sorted: Vec<&Extremum> = maxima.iter().collect();
    sorted.sort_by_key(|m| m.index);
    let mut phases = Vec::with_capacity(sorted.len());
    for m in &sorted {
        let Some((phase, substituted)) = phase_at(curves, m.index) else {
            return report;
        };
        if substituted {
            report.substituted.push(m.index);
        }
        phases.push(phase);
    }
    report.adjacent = phases
        .windows(2)
        .map(|w| circular_difference(w[0], w[1]))
        .collect();

    let center = pattern_center(curves);
    let mut by_distance: Vec<usize> = (0..sorted.len()).collect();
    by_distance.sort_by(|&a, &b| {
        (sorted[a].position - center)
            .abs()
            .total_cmp(&(sorted[b].position - center).abs())
    });
    report.primary = Some(circular_difference(
        phases[by_distance[0]],
        phases[by_distance[1]],
    ));
    report
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisParams {
    pub prominence: f64,
    pub tolerance: f64,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        AnalysisParams {
            prominence: DEFAULT_PROMINENCE,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub params: AnalysisParams,
    pub maxima: Vec<Extremum>,
    pub minima: Vec<Extremum>,
    pub count_maxima: Vec<Extremum>,
    pub visibility: f64,
    pub coincidence: CoincidenceReport,
    pub fringe: FringePhaseReport,
}

impl AnalysisReport {
    pub fn coincidence_offsets(&self) -> &[f64] {
        &self.coincidence.offsets
    }

    pub fn fringe_phase_differences(&self) -> &[f64] {
        &self.fringe.adjacent
    }
}

/// Runs every diagnostic on the normalised curves.
pub fn analyze(curves: &ResultCurves, params: AnalysisParams) -> AnalysisReport {
    let centers = &curves.bin_centers;
    let extrema = find_extrema(&curves.intensity_norm, centers, params.prominence);
    let count_maxima = find_extrema(&curves.count_norm, centers, params.prominence).maxima;
    let visibility = central_visibility(&curves.intensity_norm, centers, &extrema);
    let coincidence = peak_coincidence(
        &curves.count_norm,
        &curves.intensity_norm,
        centers,
        params.tolerance,
        params.prominence,
    );
    let fringe = fringe_phase_difference(curves, &extrema.maxima);
    AnalysisReport {
        params,
        maxima: extrema.maxima,
        minima: extrema.minima,
        count_maxima,
        visibility,
        coincidence,
        fringe,
    }
}
