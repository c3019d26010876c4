//! Named apparatus presets.
//!
//! Each preset is a [`Scenario`] trait object held in a [`ScenarioRegistry`].
//! The built-in registry carries the nine standard configurations; callers can
//! register their own.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{
    equal_weights, symmetric_positions, validate_config, ApparatusConfig, PolarizationMode,
};

pub const WAVELENGTH: f64 = 500e-9;
pub const ARM_LENGTH: f64 = 10e-3;
pub const SLIT_SPACING: f64 = 0.5e-6;
pub const SIGMA: f64 = 6e-5;
pub const PHOTONS_PER_SLIT: u64 = 100_000;
pub const MULTI_SLIT_OFFSET: f64 = 0.2 * PI;
/// Angular width for presets where the impact regions of neighbouring slits
/// barely overlap.
pub const NARROW_SIGMA: f64 = SIGMA / 8.0;
/// Angular width of the weighted three-slit preset: narrow enough to keep
/// distinct side peaks, wide enough that the minima between them stay shallow.
pub const THREE_SLIT_SIGMA: f64 = 1.0e-5;

pub trait Scenario: Send + Sync {
    fn name(&self) -> &str;

    /// One-line description for listings.
    fn summary(&self) -> &str;

    fn config(&self) -> ApparatusConfig;

    /// Qualitative features a run of this preset is expected to show.
    fn expected_features(&self) -> Vec<String> {
        Vec::new()
    }
}

/// A resolved preset.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioPreset {
    pub name: String,
    pub config: ApparatusConfig,
    pub expected_features: Vec<String>,
}

impl ScenarioPreset {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.config.seed = seed;
        self
    }
}

fn base_config(slits: usize, spacing: f64, sigma: f64) -> ApparatusConfig {
    ApparatusConfig {
        wavelength: WAVELENGTH,
        source_slit_distance: ARM_LENGTH,
        slit_screen_distance: ARM_LENGTH,
        slit_positions: symmetric_positions(slits, spacing),
        slit_weights: equal_weights(slits),
        photons_per_slit: PHOTONS_PER_SLIT,
        sigma,
        alpha: 1.0,
        multi_slit_phase_offset: if slits > 1 { MULTI_SLIT_OFFSET } else { 0.0 },
        ..ApparatusConfig::default()
    }
}

/// Equally illuminated array of identical slits.
pub struct SlitArray {
    pub name: &'static str,
    pub summary: &'static str,
    pub slits: usize,
    pub spacing: f64,
    pub sigma: f64,
    pub features: &'static [&'static str],
}

impl Scenario for SlitArray {
    fn name(&self) -> &str {
        self.name
    }

    fn summary(&self) -> &str {
        self.summary
    }

    fn config(&self) -> ApparatusConfig {
        base_config(self.slits, self.spacing, self.sigma)
    }

    fn expected_features(&self) -> Vec<String> {
        self.features.iter().map(|s| s.to_string()).collect()
    }
}

/// Double slit with orthogonally polarized slits, optionally viewed through a
/// diagonal polarizer.
pub struct WelcherWeg {
    pub diagonal_polarizer: bool,
}

impl Scenario for WelcherWeg {
    fn name(&self) -> &str {
        if self.diagonal_polarizer {
            "welcher-weg-polarizer"
        } else {
            "welcher-weg"
        }
    }

    fn summary(&self) -> &str {
        if self.diagonal_polarizer {
            "which-path double slit seen through a 45 degree polarizer"
        } else {
            "double slit, slit 1 horizontal and slit 2 vertical polarization"
        }
    }

    fn config(&self) -> ApparatusConfig {
        ApparatusConfig {
            polarization_mode: if self.diagonal_polarizer {
                PolarizationMode::PerSlitOrthogonalWithDiagonalPolarizer
            } else {
                PolarizationMode::PerSlitOrthogonal
            },
            ..base_config(2, SLIT_SPACING, SIGMA)
        }
    }

    fn expected_features(&self) -> Vec<String> {
        let feature = if self.diagonal_polarizer {
            "intensity maximum restored at the midpoint"
        } else {
            "intensity maxima at the slit positions"
        };
        vec![feature.to_string()]
    }
}

/// Slit array with unequal photon shares.
pub struct WeightedArray {
    pub name: &'static str,
    pub summary: &'static str,
    pub spacing: f64,
    pub sigma: f64,
    pub weights: &'static [f64],
    pub features: &'static [&'static str],
}

impl Scenario for WeightedArray {
    fn name(&self) -> &str {
        self.name
    }

    fn summary(&self) -> &str {
        self.summary
    }

    fn config(&self) -> ApparatusConfig {
        ApparatusConfig {
            slit_weights: self.weights.to_vec(),
            ..base_config(self.weights.len(), self.spacing, self.sigma)
        }
    }

    fn expected_features(&self) -> Vec<String> {
        self.features.iter().map(|s| s.to_string()).collect()
    }
}

pub struct ScenarioRegistry {
    entries: Vec<Box<dyn Scenario>>,
}

impl Default for ScenarioRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl ScenarioRegistry {
    pub fn empty() -> Self {
        ScenarioRegistry {
            entries: Vec::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut registry = Self::empty();
        registry.register(Box::new(SlitArray {
            name: "single",
            summary: "single narrow slit",
            slits: 1,
            spacing: SLIT_SPACING,
            sigma: SIGMA,
            features: &[
                "intensity main peak at the slit with two side peaks",
                "count curve is a single Gaussian",
            ],
        }));
        registry.register(Box::new(SlitArray {
            name: "double",
            summary: "double slit, d = 0.5 um",
            slits: 2,
            spacing: SLIT_SPACING,
            sigma: SIGMA,
            features: &[
                "intensity minima at both slit positions",
                "global intensity maximum at the midpoint",
            ],
        }));
        registry.register(Box::new(SlitArray {
            name: "double-wide",
            summary: "double slit, d = 2 lambda, sigma = 1.5e-4",
            slits: 2,
            spacing: 2.0 * WAVELENGTH,
            sigma: 1.5e-4,
            features: &["more intensity maxima than the standard double slit"],
        }));
        registry.register(Box::new(SlitArray {
            name: "four",
            summary: "four slits, d = 0.5 um",
            slits: 4,
            spacing: SLIT_SPACING,
            sigma: SIGMA,
            features: &["two main intensity peaks separated by a minor central peak"],
        }));
        registry.register(Box::new(SlitArray {
            name: "eight",
            summary: "eight slits, d = 0.5 um",
            slits: 8,
            spacing: SLIT_SPACING,
            sigma: SIGMA,
            features: &[
                "five inner maxima of roughly equal height",
                "all intensity maxima between slit positions",
            ],
        }));
        registry.register(Box::new(WelcherWeg {
            diagonal_polarizer: false,
        }));
        registry.register(Box::new(WelcherWeg {
            diagonal_polarizer: true,
        }));
        registry.register(Box::new(SlitArray {
            name: "eight-narrow",
            summary: "eight slits with a narrow angular distribution",
            slits: 8,
            spacing: SLIT_SPACING,
            sigma: NARROW_SIGMA,
            features: &["count and intensity peaks coincide"],
        }));
        registry.register(Box::new(WeightedArray {
            name: "c60-three-slit",
            summary: "three slits, 20/60/20 photon shares, narrow angular distribution",
            spacing: SLIT_SPACING,
            sigma: THREE_SLIT_SIGMA,
            weights: &[0.2, 0.6, 0.2],
            features: &[
                "one main peak and two side peaks",
                "low visibility of the minima",
            ],
        }));
        registry
    }

    /// Adds `scenario`, replacing any entry with the same name.
    pub fn register(&mut self, scenario: Box<dyn Scenario>) {
        self.entries.retain(|s| s.name() != scenario.name());
        self.entries.push(scenario);
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Scenario> {
        self.entries.iter().map(|s| s.as_ref())
    }

    pub fn get(&self, name: &str) -> Option<&dyn Scenario> {
        self.iter().find(|s| s.name() == name)
    }

    pub fn build(&self, name: &str) -> Result<ScenarioPreset> {
        let scenario = self.get(name).ok_or_else(|| Error::UnknownScenario {
            name: name.to_string(),
            valid: self.names().join(", "),
        })?;
        Ok(ScenarioPreset {
            name: scenario.name().to_string(),
            config: validate_config(scenario.config())?,
            expected_features: scenario.expected_features(),
        })
    }
}

/// Builds a preset from the built-in registry.
pub fn build_scenario(name: &str) -> Result<ScenarioPreset> {
    ScenarioRegistry::builtin().build(name)
}
