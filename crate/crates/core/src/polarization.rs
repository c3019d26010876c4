//! Field-projection strategies.
//!
//! A projection decides each photon's polarization angle from its slit and how
//! its scalar amplitude `cos(phi2)` splits into the horizontal and vertical
//! screen channels. Strategies are registered by name and looked up from the
//! configured [`PolarizationMode`].

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt::Debug;

use crate::model::PolarizationMode;

pub trait FieldProjection: Debug + Send + Sync {
    fn mode(&self) -> PolarizationMode;

    fn name(&self) -> &'static str {
        self.mode().as_str()
    }

    /// Polarization angle given to photons passing `slit_index`.
    fn polarization_angle(&self, slit_index: usize) -> f64;

    /// `[horizontal, vertical]` field contribution of one photon.
    fn project(&self, phi2: f64, polarization: f64) -> [f64; 2];
}

/// Every photon polarized alike; only the horizontal channel is used.
#[derive(Debug, Clone, Copy, Default)]
pub struct Scalar;

/// First slit horizontal, second vertical.
#[derive(Debug, Clone, Copy, Default)]
pub struct PerSlitOrthogonal;

/// Per-slit orthogonal polarization seen through a 45° polarizer.
#[derive(Debug, Clone, Copy, Default)]
pub struct DiagonalPolarizer;

fn orthogonal_angle(slit_index: usize) -> f64 {
    if slit_index == 0 {
        0.0
    } else {
        FRAC_PI_2
    }
}

impl FieldProjection for Scalar {
    fn mode(&self) -> PolarizationMode {
        PolarizationMode::Scalar
    }

    fn polarization_angle(&self, _slit_index: usize) -> f64 {
        0.0
    }

    fn project(&self, phi2: f64, _polarization: f64) -> [f64; 2] {
        [phi2.cos(), 0.0]
    }
}

impl FieldProjection for PerSlitOrthogonal {
    fn mode(&self) -> PolarizationMode {
        PolarizationMode::PerSlitOrthogonal
    }

    fn polarization_angle(&self, slit_index: usize) -> f64 {
        orthogonal_angle(slit_index)
    }

    fn project(&self, phi2: f64, polarization: f64) -> [f64; 2] {
        let amplitude = phi2.cos();
        [
            amplitude * polarization.cos(),
            amplitude * polarization.sin(),
        ]
    }
}

impl FieldProjection for DiagonalPolarizer {
    fn mode(&self) -> PolarizationMode {
        PolarizationMode::PerSlitOrthogonalWithDiagonalPolarizer
    }

    fn polarization_angle(&self, slit_index: usize) -> f64 {
        orthogonal_angle(slit_index)
    }

    fn project(&self, phi2: f64, polarization: f64) -> [f64; 2] {
        [apply_diagonal_polarizer(phi2, polarization), 0.0]
    }
}

/// Amplitude transmitted by a polarizer at 45°: `cos(phi2) * cos(pol - π/4)`.
pub fn apply_diagonal_polarizer(phi2: f64, polarization: f64) -> f64 {
    phi2.cos() * (polarization - FRAC_PI_4).cos()
}

static REGISTRY: [&dyn FieldProjection; 3] = [&Scalar, &PerSlitOrthogonal, &DiagonalPolarizer];

/// All registered projections.
pub fn registered() -> &'static [&'static dyn FieldProjection] {
    &REGISTRY
}

pub fn lookup(name: &str) -> Option<&'static dyn FieldProjection> {
    REGISTRY.iter().copied().find(|p| p.name() == name)
}

pub fn for_mode(mode: PolarizationMode) -> &'static dyn FieldProjection {
    REGISTRY
        .iter()
        .copied()
        .find(|p| p.mode() == mode)
        .expect("every polarization mode has a registered projection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn every_mode_is_registered() {
        for mode in PolarizationMode::ALL {
            assert_eq!(for_mode(mode).mode(), mode);
            assert_eq!(lookup(mode.as_str()).unwrap().mode(), mode);
        }
        assert!(lookup("circular").is_none());
    }

    #[test]
    fn orthogonal_channels() {
        let p = PerSlitOrthogonal;
        assert_eq!(p.polarization_angle(0), 0.0);
        assert_eq!(p.polarization_angle(1), FRAC_PI_2);
        assert_eq!(p.project(0.0, 0.0), [1.0, 0.0]);
        let [h, v] = p.project(0.0, FRAC_PI_2);
        assert!(h.abs() < 1e-16);
        assert_eq!(v, 1.0);
    }

    #[test]
    fn diagonal_projection_matches_for_both_slits() {
        let h = apply_diagonal_polarizer(0.0, 0.0);
        let v = apply_diagonal_polarizer(0.0, FRAC_PI_2);
        assert!((h - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((v - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(DiagonalPolarizer.project(0.0, FRAC_PI_2)[1], 0.0);
    }

    #[test]
    fn scalar_has_no_vertical_channel() {
        assert_eq!(Scalar.project(1.3, 0.7)[1], 0.0);
        assert_eq!(Scalar.polarization_angle(5), 0.0);
    }
}
