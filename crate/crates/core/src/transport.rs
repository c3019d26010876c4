//! Single-photon physics: emission, scattering at the slit and straight-line
//! propagation to the screen.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};
use crate::model::{ApparatusConfig, PhotonRecord};
use crate::polarization::FieldProjection;
use crate::rng::{sample_scatter_angles, RandomStream};

/// State of a photon immediately after it scatters at its slit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitEvent {
    pub slit_index: usize,
    /// Emission phase, turns.
    pub initial_phase: f64,
    /// Phase on arrival at the slit, turns.
    pub phi1: f64,
    pub theta1: f64,
    /// Phase after scattering: `alpha * theta1`. Replaces `phi1` entirely.
    pub phi1_prime: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Impact {
    /// Absolute transverse screen coordinate.
    pub coordinate: f64,
    /// Phase at impact, radians in `[0, 2π)`.
    pub phi2: f64,
    pub polarization_angle: f64,
}

/// Emits a photon pair through `slit_index` and scatters both photons.
pub fn emit_and_scatter(
    stream: &mut RandomStream,
    config: &ApparatusConfig,
    slit_index: usize,
) -> (SlitEvent, SlitEvent) {
    let z = config.propagation_phase_turns();
    let sample = sample_scatter_angles(stream, z, config.sigma);
    let event = |initial_phase, phi1, theta1: f64| SlitEvent {
        slit_index,
        initial_phase,
        phi1,
        theta1,
        phi1_prime: config.alpha * theta1,
    };
    (
        event(sample.initial_a, sample.phase_a, sample.theta_a),
        event(sample.initial_b, sample.phase_b, sample.theta_b),
    )
}

/// Phase at impact for a photon scattered by `theta` onto a screen at
/// `distance`, reduced to `[0, 2π)`.
///
/// Computes `alpha*theta + 2π·(distance / cos θ)/λ + offset` in turns, splitting
/// the path term into `frac(distance/λ)` plus `(distance/λ)(sec θ - 1)` so the
/// small angle-dependent part is not lost next to ~10^4 whole wavelengths.
pub fn impact_phase(theta: f64, alpha: f64, offset: f64, distance: f64, wavelength: f64) -> f64 {
    let wavelengths = distance / wavelength;
    let half = 0.5 * theta;
    let sec_minus_one = 2.0 * half.sin() * half.sin() / theta.cos();
    let turns = (wavelengths - wavelengths.floor())
        + wavelengths * sec_minus_one
        + (alpha * theta + offset) / TAU;
    let phase = (turns - turns.floor()) * TAU;
    if phase >= TAU {
        0.0
    } else {
        phase
    }
}

/// Propagates a scattered photon to the screen.
pub fn impact_from_scatter(
    event: &SlitEvent,
    config: &ApparatusConfig,
    projection: &dyn FieldProjection,
) -> Result<Impact> {
    let theta = event.theta1;
    if !(theta.abs() < FRAC_PI_2) {
        return Err(Error::BackwardScattering(theta));
    }
    let distance = config.slit_screen_distance;
    Ok(Impact {
        coordinate: config.slit_positions[event.slit_index] + distance * theta.tan(),
        phi2: impact_phase(
            theta,
            config.alpha,
            config.multi_slit_phase_offset,
            distance,
            config.wavelength,
        ),
        polarization_angle: projection.polarization_angle(event.slit_index),
    })
}

pub fn photon_record(event: &SlitEvent, impact: &Impact) -> PhotonRecord {
    PhotonRecord {
        slit_index: event.slit_index,
        initial_phase: event.initial_phase,
        scatter_angle: event.theta1,
        post_scatter_phase: event.phi1_prime,
        impact_coordinate: impact.coordinate,
        impact_phase: impact.phi2,
        polarization_angle: impact.polarization_angle,
    }
}
