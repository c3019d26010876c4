//! Detector screen: binning, field superposition, intensity, smoothing.
//!
//! Photons closer than one bin width interact, so the screen is a fixed grid
//! of `bin_width` cells. Field sums use Neumaier compensated summation; merged
//! accumulators therefore agree with a single sequential pass to within one
//! rounding of the final value.

use std::f64::consts::TAU;

use crate::model::ApparatusConfig;
use crate::polarization::FieldProjection;
use crate::transport::Impact;

/// Smoothing kernels are truncated at this many standard deviations.
pub const KERNEL_TRUNCATION: f64 = 4.0;

/// Neumaier running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.compensation += other.compensation;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Uniform bin grid centred on zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreenGrid {
    lower: f64,
    bin_width: f64,
    bins: usize,
}

impl ScreenGrid {
    pub fn new(bins: usize, bin_width: f64) -> Self {
        ScreenGrid {
            lower: -0.5 * bins as f64 * bin_width,
            bin_width,
            bins,
        }
    }

    pub fn from_config(config: &ApparatusConfig) -> Self {
        Self::new(config.bin_count(), config.bin_width)
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }

    pub fn lower_edge(&self) -> f64 {
        self.lower
    }

    pub fn center(&self, bin: usize) -> f64 {
        self.lower + (bin as f64 + 0.5) * self.bin_width
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.bins).map(|i| self.center(i)).collect()
    }

    /// Bin holding `x`, or `None` outside the grid.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let k = ((x - self.lower) / self.bin_width).floor();
        if k >= 0.0 && k < self.bins as f64 {
            Some(k as usize)
        } else {
            None
        }
    }
}

/// Per-bin photon counts and field sums.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreenAccumulator {
    grid: ScreenGrid,
    counts: Vec<u64>,
    field_h: Vec<CompensatedSum>,
    field_v: Vec<CompensatedSum>,
    phase_sin: Vec<CompensatedSum>,
    phase_cos: Vec<CompensatedSum>,
    overflow: u64,
}

impl ScreenAccumulator {
    pub fn new(grid: ScreenGrid) -> Self {
        let n = grid.bins();
        ScreenAccumulator {
            grid,
            counts: vec![0; n],
            field_h: vec![CompensatedSum::default(); n],
            field_v: vec![CompensatedSum::default(); n],
            phase_sin: vec![CompensatedSum::default(); n],
            phase_cos: vec![CompensatedSum::default(); n],
            overflow: 0,
        }
    }

    pub fn grid(&self) -> &ScreenGrid {
        &self.grid
    }

    pub fn accumulate(&mut self, impact: &Impact, projection: &dyn FieldProjection) {
        let Some(bin) = self.grid.index_of(impact.coordinate) else {
            self.overflow += 1;
            return;
        };
        let [h, v] = projection.project(impact.phi2, impact.polarization_angle);
        self.counts[bin] += 1;
        self.field_h[bin].add(h);
        self.field_v[bin].add(v);
        let (s, c) = impact.phi2.sin_cos();
        self.phase_sin[bin].add(s);
        self.phase_cos[bin].add(c);
    }

    /// Adds `other` bin-wise. Merging in a fixed order gives a fixed result.
    pub fn merge(&mut self, other: &ScreenAccumulator) {
        assert_eq!(
            self.grid, other.grid,
            "cannot merge accumulators on different grids"
        );
        for i in 0..self.counts.len() {
            self.counts[i] += other.counts[i];
            self.field_h[i].merge(&other.field_h[i]);
            self.field_v[i].merge(&other.field_v[i]);
            self.phase_sin[i].merge(&other.phase_sin[i]);
            self.phase_cos[i].merge(&other.phase_cos[i]);
        }
        self.overflow += other.overflow;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Impacts that fell outside the grid.
    pub fn overflow(&self) -> u64 {
        self.overflow
    }

    pub fn total_counts(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn field_h(&self) -> Vec<f64> {
        self.field_h.iter().map(CompensatedSum::value).collect()
    }

    pub fn field_v(&self) -> Vec<f64> {
        self.field_v.iter().map(CompensatedSum::value).collect()
    }

    /// `E_h² + E_v²` per bin; the vertical channel is zero in scalar modes.
    pub fn intensity(&self) -> Vec<f64> {
        self.field_h
            .iter()
            .zip(&self.field_v)
            .map(|(h, v)| {
                let (h, v) = (h.value(), v.value());
                h * h + v * v
            })
            .collect()
    }

    /// Circular mean of the impact phase per bin, in `[0, 2π)`; `None` for
    /// empty bins.
    pub fn mean_phase(&self) -> Vec<Option<f64>> {
        (0..self.counts.len())
            .map(|i| {
                (self.counts[i] > 0).then(|| {
                    let phase = self.phase_sin[i].value().atan2(self.phase_cos[i].value());
                    let phase = phase.rem_euclid(TAU);
                    if phase >= TAU {
                        0.0
                    } else {
                        phase
                    }
                })
            })
            .collect()
    }

    /// Finished curves: raw values plus smoothed, max-normalised copies.
    pub fn finish(&self, smoothing_halfwidth: f64) -> ResultCurves {
        let width = self.grid.bin_width();
        let counts: Vec<f64> = self.counts.iter().map(|&c| c as f64).collect();
        let intensity_raw = self.intensity();
        let phases = self.mean_phase();
        ResultCurves {
            bin_width: width,
            bin_centers: self.grid.centers(),
            count_norm: smooth_and_normalize(&counts, smoothing_halfwidth, width),
            intensity_norm: smooth_and_normalize(&intensity_raw, smoothing_halfwidth, width),
            count_raw: self.counts.clone(),
            intensity_raw,
            phase_defined: phases.iter().map(Option::is_some).collect(),
            mean_phase: phases.into_iter().map(|p| p.unwrap_or(0.0)).collect(),
        }
    }
}

/// Per-bin result of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultCurves {
    pub bin_width: f64,
    pub bin_centers: Vec<f64>,
    pub count_raw: Vec<u64>,
    /// Smoothed counts divided by their maximum (N / N0).
    pub count_norm: Vec<f64>,
    pub intensity_raw: Vec<f64>,
    /// Smoothed intensity divided by its maximum (I / I0).
    pub intensity_norm: Vec<f64>,
    /// Circular mean impact phase; meaningful only where `phase_defined`.
    pub mean_phase: Vec<f64>,
    pub phase_defined: Vec<bool>,
}

impl ResultCurves {
    pub fn len(&self) -> usize {
        self.bin_centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bin_centers.is_empty()
    }

    /// Index of the bin whose centre is nearest to `x`.
    pub fn nearest_bin(&self, x: f64) -> Option<usize> {
        self.bin_centers
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()))
            .map(|(i, _)| i)
    }
}

/// Unit-sum Gaussian kernel with standard deviation `std_bins`, truncated at
/// [`KERNEL_TRUNCATION`] standard deviations. Zero width gives `[1.0]`.
pub fn gaussian_kernel(std_bins: f64) -> Vec<f64> {
    if std_bins <= 0.0 {
        return vec![1.0];
    }
    let radius = (KERNEL_TRUNCATION * std_bins).ceil() as i64;
    let denom = 2.0 * std_bins * std_bins;
    let mut kernel: Vec<f64> = (-radius..=radius)
        .map(|k| (-((k * k) as f64) / denom).exp())
        .collect();
    let total: f64 = kernel.iter().sum();
    kernel.iter_mut().for_each(|w| *w /= total);
    kernel
}

/// Direct convolution with [`gaussian_kernel`]; values beyond the ends count
/// as zero.
pub fn smooth(values: &[f64], std_bins: f64) -> Vec<f64> {
    let kernel = gaussian_kernel(std_bins);
    let radius = (kernel.len() / 2) as isize;
    let n = values.len() as isize;
    (0..n)
        .map(|i| {
            let mut acc = 0.0;
            for (j, w) in kernel.iter().enumerate() {
                let k = i + j as isize - radius;
                if (0..n).contains(&k) {
                    acc += w * values[k as usize];
                }
            }
            acc
        })
        .collect()
}

/// Divides by the maximum so the peak is exactly one. All-zero input is
/// returned unchanged.
pub fn normalize(values: &[f64]) -> Vec<f64> {
    let max = values.iter().copied().fold(0.0, f64::max);
    if max > 0.0 {
        values.iter().map(|v| v / max).collect()
    } else {
        values.to_vec()
    }
}

pub fn smooth_and_normalize(values: &[f64], halfwidth: f64, bin_width: f64) -> Vec<f64> {
    normalize(&smooth(values, halfwidth / bin_width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarization::{DiagonalPolarizer, PerSlitOrthogonal, Scalar};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn acc(bins: usize) -> ScreenAccumulator {
        ScreenAccumulator::new(ScreenGrid::new(bins, 10e-9))
    }

    fn hit(coordinate: f64, phi2: f64, polarization_angle: f64) -> Impact {
        Impact {
            coordinate,
            phi2,
            polarization_angle,
        }
    }

    #[test]
    fn in_phase_photons_add() {
        let mut a = acc(4);
        a.accumulate(&hit(1e-9, 0.0, 0.0), &Scalar);
        a.accumulate(&hit(2e-9, 0.0, 0.0), &Scalar);
        let bin = a.grid().index_of(1e-9).unwrap();
        assert_eq!(a.field_h()[bin], 2.0);
        assert_eq!(a.intensity()[bin], 4.0);
        assert!(a.field_v().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn opposite_phases_cancel() {
        let mut a = acc(4);
        a.accumulate(&hit(1e-9, 0.0, 0.0), &Scalar);
        a.accumulate(&hit(1e-9, PI, 0.0), &Scalar);
        let bin = a.grid().index_of(1e-9).unwrap();
        assert_eq!(a.counts()[bin], 2);
        assert_eq!(a.field_h()[bin], 0.0);
    }

    #[test]
    fn orthogonal_channels_superpose_independently() {
        let mut a = acc(4);
        a.accumulate(&hit(1e-9, 0.0, 0.0), &PerSlitOrthogonal);
        a.accumulate(&hit(1e-9, 0.0, FRAC_PI_2), &PerSlitOrthogonal);
        let bin = a.grid().index_of(1e-9).unwrap();
        assert_eq!(a.field_h()[bin], 1.0 + FRAC_PI_2.cos());
        assert_eq!(a.field_v()[bin], 1.0);
        assert!((a.intensity()[bin] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_polarizer_restores_single_channel() {
        let mut a = acc(4);
        a.accumulate(&hit(1e-9, 0.0, 0.0), &DiagonalPolarizer);
        a.accumulate(&hit(1e-9, 0.0, FRAC_PI_2), &DiagonalPolarizer);
        let bin = a.grid().index_of(1e-9).unwrap();
        assert!((a.field_h()[bin] - 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(a.field_v()[bin], 0.0);
    }

    #[test]
    fn outside_impacts_are_tallied() {
        let mut a = acc(4);
        a.accumulate(&hit(1.0, 0.0, 0.0), &Scalar);
        a.accumulate(&hit(-20e-9, 0.0, 0.0), &Scalar);
        a.accumulate(&hit(19.9e-9, 0.0, 0.0), &Scalar);
        assert_eq!(a.overflow(), 1);
        assert_eq!(a.total_counts(), 2);
    }

    #[test]
    fn empty_accumulator_gives_zero_intensity() {
        let a = acc(8);
        assert!(a.intensity().iter().all(|&i| i == 0.0));
        let curves = a.finish(10e-9);
        assert!(curves.intensity_norm.iter().all(|&i| i == 0.0));
        assert!(curves.phase_defined.iter().all(|d| !d));
    }

    #[test]
    fn grid_is_centred() {
        let g = ScreenGrid::new(600, 10e-9);
        assert!((g.lower_edge() + 3e-6).abs() < 1e-18);
        assert!((g.center(0) + 2.995e-6).abs() < 1e-18);
        assert_eq!(g.index_of(0.0), Some(300));
        assert_eq!(g.index_of(-1e-12), Some(299));
    }

    #[test]
    fn identity_smoothing_then_normalize() {
        assert_eq!(
            smooth_and_normalize(&[0.0, 4.0, 0.0], 0.0, 1.0),
            [0.0, 1.0, 0.0]
        );
    }

    #[test]
    fn delta_spike_becomes_sampled_gaussian() {
        let mut spike = vec![0.0; 201];
        spike[100] = 1.0;
        let out = smooth(&spike, 10.0);
        let oracle: Vec<f64> = (-40i32..=40)
            .map(|k| (-(k * k) as f64 / 200.0).exp())
            .collect();
        let z: f64 = oracle.iter().sum();
        for (k, w) in (-40i32..=40).zip(&oracle) {
            assert!((out[(100 + k) as usize] - w / z).abs() < 1e-15);
        }
        assert_eq!(out[59], 0.0);
        assert!((out.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn constant_curve_stays_constant_in_interior() {
        let out = smooth_and_normalize(&vec![3.0; 200], 5.0, 1.0);
        for v in &out[20..180] {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mean_phase_is_circular() {
        let mut a = acc(2);
        a.accumulate(&hit(1e-9, 0.1, 0.0), &Scalar);
        a.accumulate(&hit(1e-9, TAU - 0.1, 0.0), &Scalar);
        let p = a.mean_phase()[a.grid().index_of(1e-9).unwrap()].unwrap();
        assert!(p < 1e-12 || (TAU - p) < 1e-12, "{p}");
    }

    fn random_impacts(values: &[(f64, f64)]) -> Vec<Impact> {
        values
            .iter()
            .map(|&(x, phi)| hit(x * 1e-6, phi, 0.0))
            .collect()
    }

    proptest! {
        #[test]
        fn merge_conserves_and_matches_sequential(
            points in prop::collection::vec((-1.2f64..1.2, 0.0f64..TAU), 0..300),
            split in 0usize..300,
        ) {
            let impacts = random_impacts(&points);
            let split = split.min(impacts.len());
            let grid = ScreenGrid::new(200, 10e-9);
            let mut whole = ScreenAccumulator::new(grid);
            impacts.iter().for_each(|i| whole.accumulate(i, &Scalar));
            let mut left = ScreenAccumulator::new(grid);
            let mut right = ScreenAccumulator::new(grid);
            impacts[..split].iter().for_each(|i| left.accumulate(i, &Scalar));
            impacts[split..].iter().for_each(|i| right.accumulate(i, &Scalar));
            left.merge(&right);
            prop_assert_eq!(left.counts(), whole.counts());
            prop_assert_eq!(left.total_counts() + left.overflow(), impacts.len() as u64);
            for (a, b) in left.field_h().iter().zip(whole.field_h()) {
                prop_assert!((a - b).abs() <= 4.0 * f64::EPSILON * b.abs().max(1.0));
            }
            prop_assert!(left.intensity().iter().all(|&i| i >= 0.0));
        }

        #[test]
        fn smoothing_preserves_interior_mass(
            values in prop::collection::vec(0.0f64..100.0, 10),
            std_bins in 0.0f64..6.0,
        ) {
            let mut padded = vec![0.0; 60];
            padded.extend(values);
            padded.extend(vec![0.0; 60]);
            let before: f64 = padded.iter().sum();
            let after: f64 = smooth(&padded, std_bins).iter().sum();
            prop_assert!((after - before).abs() <= 1e-9 * before.max(1.0));
        }
    }
}
