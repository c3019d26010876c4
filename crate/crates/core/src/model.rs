//! Domain types shared by the whole pipeline.
//!
//! All lengths are metres and all angles radians. The one exception is the
//! emission phase, which is kept in turns (`[0, 1)`) because the sampler works
//! directly on uniform variates.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::ConfigError;

/// Tolerance on the slit weight sum rule.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// How photon fields are projected onto the screen channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PolarizationMode {
    /// All photons share one polarization; a single scalar field channel.
    #[default]
    Scalar,
    /// Slit 1 horizontal, slit 2 vertical; fields superpose per channel.
    PerSlitOrthogonal,
    /// As [`PolarizationMode::PerSlitOrthogonal`] followed by a 45° polarizer.
    PerSlitOrthogonalWithDiagonalPolarizer,
}

impl PolarizationMode {
    pub const ALL: [PolarizationMode; 3] = [
        PolarizationMode::Scalar,
        PolarizationMode::PerSlitOrthogonal,
        PolarizationMode::PerSlitOrthogonalWithDiagonalPolarizer,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PolarizationMode::Scalar => "scalar",
            PolarizationMode::PerSlitOrthogonal => "per-slit-orthogonal",
            PolarizationMode::PerSlitOrthogonalWithDiagonalPolarizer => {
                "per-slit-orthogonal-with-diagonal-polarizer"
            }
        }
    }

    pub fn is_per_slit(self) -> bool {
        !matches!(self, PolarizationMode::Scalar)
    }
}

impl fmt::Display for PolarizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolarizationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolarizationMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = PolarizationMode::ALL.iter().map(|m| m.as_str()).collect();
                format!(
                    "unknown polarization mode `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// Geometry, source and screen parameters of one simulated apparatus.
#[derive(Debug, Clone, PartialEq)]
pub struct ApparatusConfig {
    pub wavelength: f64,
    pub source_slit_distance: f64,
    pub slit_screen_distance: f64,
    /// Transverse slit coordinates, strictly increasing.
    pub slit_positions: Vec<f64>,
    /// Share of the photon budget sent through each slit; sums to one.
    pub slit_weights: Vec<f64>,
    /// Photons per slit for equal weights. The total budget is
    /// `photons_per_slit * slit_count`, split according to `slit_weights`.
    pub photons_per_slit: u64,
    /// Standard deviation of the scattering angle, radians.
    pub sigma: f64,
    /// Proportionality between scattering angle and post-scatter phase.
    pub alpha: f64,
    pub multi_slit_phase_offset: f64,
    pub bin_width: f64,
    pub smoothing_halfwidth: f64,
    pub polarization_mode: PolarizationMode,
    pub seed: u64,
    /// Half-width of the recorded screen region, centred on zero.
    pub screen_extent: f64,
}

impl Default for ApparatusConfig {
    /// Standard double slit: 500 nm light, 10 mm arms, 0.5 µm slit spacing.
    fn default() -> Self {
        ApparatusConfig {
            wavelength: 500e-9,
            source_slit_distance: 10e-3,
            slit_screen_distance: 10e-3,
            slit_positions: symmetric_positions(2, 0.5e-6),
            slit_weights: equal_weights(2),
            photons_per_slit: 100_000,
            sigma: 6e-5,
            alpha: 1.0,
            multi_slit_phase_offset: 0.2 * PI,
            bin_width: 10e-9,
            smoothing_halfwidth: 0.1e-6,
            polarization_mode: PolarizationMode::Scalar,
            seed: 1,
            screen_extent: 3e-6,
        }
    }
}

/// `count` slits with spacing `spacing`, centred on zero.
pub fn symmetric_positions(count: usize, spacing: f64) -> Vec<f64> {
    let center = (count as f64 - 1.0) / 2.0;
    (0..count).map(|i| (i as f64 - center) * spacing).collect()
}

pub fn equal_weights(count: usize) -> Vec<f64> {
    vec![1.0 / count as f64; count]
}

impl ApparatusConfig {
    pub fn slit_count(&self) -> usize {
        self.slit_positions.len()
    }

    /// Propagation phase from source to slit, in turns: `frac(L1 / lambda)`.
    pub fn propagation_phase_turns(&self) -> f64 {
        let q = self.source_slit_distance / self.wavelength;
        q - q.floor()
    }

    /// Photons sent through `slit`, rounded up to an even number so that
    /// photons are always simulated in pairs.
    pub fn photons_for_slit(&self, slit: usize) -> u64 {
        let total = (self.photons_per_slit * self.slit_count() as u64) as f64;
        let share = (self.slit_weights[slit] * total).round() as u64;
        share + share % 2
    }

    pub fn total_photons(&self) -> u64 {
        (0..self.slit_count())
            .map(|s| self.photons_for_slit(s))
            .sum()
    }

    /// Number of screen bins covering `±screen_extent`.
    pub fn bin_count(&self) -> usize {
        (2.0 * self.screen_extent / self.bin_width).round() as usize
    }
}

/// Full history of one simulated photon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonRecord {
    pub slit_index: usize,
    /// Emission phase, turns in `[0, 1)`.
    pub initial_phase: f64,
    pub scatter_angle: f64,
    pub post_scatter_phase: f64,
    pub impact_coordinate: f64,
    /// Phase at impact, radians in `[0, 2π)`.
    pub impact_phase: f64,
    pub polarization_angle: f64,
}

/// Checks every invariant of `config`, returning it unchanged when all hold
/// and every violation otherwise. Nothing is clamped.
pub fn validate_config(config: ApparatusConfig) -> Result<ApparatusConfig, Vec<ConfigError>> {
    let mut errors = Vec::new();
    let mut positive = |field: &'static str, value: f64, name: &str| {
        if !(value > 0.0 && value.is_finite()) {
            errors.push(ConfigError::new(field, format!("{name} must be positive")));
        }
    };
    positive("wavelength", config.wavelength, "wavelength");
    positive(
        "source_slit_distance",
        config.source_slit_distance,
        "source_slit_distance",
    );
    positive(
        "slit_screen_distance",
        config.slit_screen_distance,
        "slit_screen_distance",
    );
    positive("bin_width", config.bin_width, "bin_width");
    positive("sigma", config.sigma, "sigma");
    positive("screen_extent", config.screen_extent, "screen_extent");

    if !(config.smoothing_halfwidth >= 0.0 && config.smoothing_halfwidth.is_finite()) {
        errors.push(ConfigError::new(
            "smoothing_halfwidth",
            "smoothing_halfwidth must be non-negative",
        ));
    }
    if !config.alpha.is_finite() {
        errors.push(ConfigError::new("alpha", "alpha must be finite"));
    }
    if !config.multi_slit_phase_offset.is_finite() {
        errors.push(ConfigError::new(
            "multi_slit_phase_offset",
            "multi_slit_phase_offset must be finite",
        ));
    }

    if config.slit_positions.is_empty() {
        errors.push(ConfigError::new(
            "slit_positions",
            "at least one slit is required",
        ));
    }
    if config.slit_positions.iter().any(|x| !x.is_finite()) {
        errors.push(ConfigError::new(
            "slit_positions",
            "slit positions must be finite",
        ));
    } else if config.slit_positions.windows(2).any(|w| w[1] <= w[0]) {
        errors.push(ConfigError::new(
            "slit_positions",
            "slit positions must be strictly increasing",
        ));
    }

    if config.slit_weights.len() != config.slit_positions.len() {
        errors.push(ConfigError::new(
            "slit_weights",
            format!(
                "expected {} slit weights, found {}",
                config.slit_positions.len(),
                config.slit_weights.len()
            ),
        ));
    }
    if config.slit_weights.iter().any(|w| !(*w >= 0.0)) {
        errors.push(ConfigError::new(
            "slit_weights",
            "weights must be non-negative",
        ));
    }
    let sum: f64 = config.slit_weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        errors.push(ConfigError::new("slit_weights", "weights must sum to 1"));
    }

    if config.polarization_mode.is_per_slit() && config.slit_positions.len() != 2 {
        errors.push(ConfigError::new(
            "polarization_mode",
            format!("{} requires exactly 2 slits", config.polarization_mode),
        ));
    }

    if config.bin_width > 0.0 && config.screen_extent > 0.0 && config.bin_count() == 0 {
        errors.push(ConfigError::new(
            "screen_extent",
            "screen_extent must cover at least one bin",
        ));
    }

    if errors.is_empty() {
        Ok(config)
    } else {
        Err(errors)
    }
}
