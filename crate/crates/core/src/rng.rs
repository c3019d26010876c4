//! Seeded uniform streams and the paired polar-method Gaussian sampler.
//!
//! Uniforms come from ChaCha8 (`rand_chacha`), which produces the same
//! sequence on every platform. A uniform is the top 53 bits of one 64-bit
//! output scaled by 2^-53, so it lies in `[0, 1)`.
//!
//! Substreams: the generator for `(seed, index)` is ChaCha8 seeded with
//! `seed_from_u64(seed)` and switched to stream number `index`. The driver
//! uses one substream per work chunk, never per worker, so results do not
//! depend on the number of workers.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const UNIT: f64 = 1.0 / (1u64 << 53) as f64;

/// A deterministic stream of uniform variates in `[0, 1)`.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    index: u64,
    rng: ChaCha8Rng,
    draws: u64,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    pub fn substream(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        RandomStream {
            seed,
            index,
            rng,
            draws: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_index(&self) -> u64 {
        self.index
    }

    /// Number of uniforms drawn so far.
    pub fn draw_count(&self) -> u64 {
        self.draws
    }

    pub fn next_uniform(&mut self) -> f64 {
        self.draws += 1;
        (self.rng.next_u64() >> 11) as f64 * UNIT
    }
}

/// One accepted output of the paired sampler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterSample {
    pub theta_a: f64,
    pub theta_b: f64,
    /// Accepted emission phases (turns), i.e. the uniforms that survived.
    pub initial_a: f64,
    pub initial_b: f64,
    /// Accepted phases at the slit, `frac(initial + z)`, in turns.
    pub phase_a: f64,
    pub phase_b: f64,
    /// Discarded uniform pairs before acceptance.
    pub rejections: u32,
}

/// Fractional part, matching `X - FLOAT(INT(X))` for non-negative input.
#[inline]
pub fn frac(x: f64) -> f64 {
    x - x.trunc()
}

/// Polar-method transform of two phases into two unit Gaussian variates.
///
/// Each uniform is shifted by the propagation phase `z` (turns), reduced mod 1
/// and mapped to `[-1, 1)`. If the point falls outside the unit disk both
/// uniforms are redrawn from `stream`. `R == 0` is also redrawn since
/// `ln(0)` is undefined. `R == 1` is accepted and yields `(0, 0)`.
pub fn gaussian_pair(u1: f64, u2: f64, z: f64, stream: &mut RandomStream) -> ScatterSample {
    let z = frac(z);
    let (mut u1, mut u2) = (u1, u2);
    let mut rejections = 0;
    loop {
        let phi1 = frac(u1 + z);
        let phi2 = frac(u2 + z);
        let v1 = 2.0 * phi1 - 1.0;
        let v2 = 2.0 * phi2 - 1.0;
        let radius = v1 * v1 + v2 * v2;
        if radius > 1.0 || radius == 0.0 {
            rejections += 1;
            u1 = stream.next_uniform();
            u2 = stream.next_uniform();
            continue;
        }
        let factor = (-2.0 * radius.ln() / radius).sqrt();
        return ScatterSample {
            theta_a: v1 * factor,
            theta_b: v2 * factor,
            initial_a: u1,
            initial_b: u2,
            phase_a: phi1,
            phase_b: phi2,
            rejections,
        };
    }
}

/// Draws a photon pair's phases and returns their scattering angles with
/// standard deviation `sigma`. Each photon's phase acts as the slit
/// environment's random phase for the other.
pub fn sample_scatter_angles(stream: &mut RandomStream, z: f64, sigma: f64) -> ScatterSample {
    let u1 = stream.next_uniform();
    let u2 = stream.next_uniform();
    let mut sample = gaussian_pair(u1, u2, z, stream);
    sample.theta_a *= sigma;
    sample.theta_b *= sigma;
    sample
}
