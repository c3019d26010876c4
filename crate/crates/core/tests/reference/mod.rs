//! Plain single-threaded pipeline for scalar runs, written without any of the
//! engine's modules. Shares only the configuration struct.

use std::f64::consts::TAU;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use slitsim::ApparatusConfig;

const PAIRS_PER_CHUNK: u64 = 2048;

pub struct ReferenceCurves {
    pub counts: Vec<u64>,
    pub field: Vec<f64>,
    pub intensity_raw: Vec<f64>,
    pub count_norm: Vec<f64>,
    pub intensity_norm: Vec<f64>,
    /// Circular mean phase, `None` for empty bins.
    pub mean_phase: Vec<Option<f64>>,
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn wrap_turns(x: f64) -> f64 {
    x - x.trunc()
}

/// Two unit normals from the polar method, shifting both uniforms by `z`.
fn polar_pair(rng: &mut ChaCha8Rng, z: f64) -> (f64, f64) {
    loop {
        let a = 2.0 * wrap_turns(uniform(rng) + z) - 1.0;
        let b = 2.0 * wrap_turns(uniform(rng) + z) - 1.0;
        let r = a * a + b * b;
        if r > 1.0 || r == 0.0 {
            continue;
        }
        let f = (-2.0 * r.ln() / r).sqrt();
        return (a * f, b * f);
    }
}

fn screen_phase(theta: f64, c: &ApparatusConfig) -> f64 {
    let n = c.slit_screen_distance / c.wavelength;
    let s = (0.5 * theta).sin();
    let turns = (n - n.floor())
        + n * (2.0 * s * s / theta.cos())
        + (c.alpha * theta + c.multi_slit_phase_offset) / TAU;
    let phase = (turns - turns.floor()) * TAU;
    if phase >= TAU {
        0.0
    } else {
        phase
    }
}

/// Correctly rounded sum via exact partials (Shewchuk).
fn exact_sum(terms: &[f64]) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for &t in terms {
        let mut x = t;
        let mut kept = 0;
        for i in 0..partials.len() {
            let mut y = partials[i];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        partials.truncate(kept);
        partials.push(x);
    }
    let Some(mut hi) = partials.pop() else {
        return 0.0;
    };
    let mut lo = 0.0;
    while let Some(y) = partials.pop() {
        let x = hi;
        hi = x + y;
        lo = y - (hi - x);
        if lo != 0.0 {
            break;
        }
    }
    if let Some(&next) = partials.last() {
        if (lo < 0.0 && next < 0.0) || (lo > 0.0 && next > 0.0) {
            let y = 2.0 * lo;
            let x = hi + y;
            if y == x - hi {
                hi = x;
            }
        }
    }
    hi
}

fn gaussian_smooth(values: &[f64], std_bins: f64) -> Vec<f64> {
    let radius = (4.0 * std_bins).ceil() as i64;
    let weights: Vec<f64> = (-radius..=radius)
        .map(|k| (-((k * k) as f64) / (2.0 * std_bins * std_bins)).exp())
        .collect();
    let total: f64 = weights.iter().sum();
    let weights: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let n = values.len() as i64;
    let mut out = vec![0.0; values.len()];
    for i in 0..n {
        let mut acc = 0.0;
        for k in -radius..=radius {
            let j = i + k;
            if j >= 0 && j < n {
                acc += weights[(k + radius) as usize] * values[j as usize];
            }
        }
        out[i as usize] = acc;
    }
    let peak = out.iter().copied().fold(0.0, f64::max);
    if peak > 0.0 {
        for v in &mut out {
            *v /= peak;
        }
    }
    out
}

pub fn run(c: &ApparatusConfig) -> ReferenceCurves {
    let bins = (2.0 * c.screen_extent / c.bin_width).round() as usize;
    let lower = -0.5 * bins as f64 * c.bin_width;
    let q = c.source_slit_distance / c.wavelength;
    let z = q - q.floor();

    let mut counts = vec![0u64; bins];
    let mut field: Vec<Vec<f64>> = vec![Vec::new(); bins];
    let mut sines: Vec<Vec<f64>> = vec![Vec::new(); bins];
    let mut cosines: Vec<Vec<f64>> = vec![Vec::new(); bins];

    let total = (c.photons_per_slit * c.slit_positions.len() as u64) as f64;
    let mut stream = 0u64;
    for (slit, &x) in c.slit_positions.iter().enumerate() {
        let share = (c.slit_weights[slit] * total).round() as u64;
        let mut pairs = (share + share % 2) / 2;
        while pairs > 0 {
            let todo = pairs.min(PAIRS_PER_CHUNK);
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
            rng.set_stream(stream);
            for _ in 0..todo {
                let (a, b) = polar_pair(&mut rng, z);
                for theta in [a * c.sigma, b * c.sigma] {
                    assert!(theta.abs() < 0.5 * std::f64::consts::PI);
                    let y = x + c.slit_screen_distance * theta.tan();
                    let k = ((y - lower) / c.bin_width).floor();
                    if k < 0.0 || k >= bins as f64 {
                        continue;
                    }
                    let k = k as usize;
                    let phi = screen_phase(theta, c);
                    counts[k] += 1;
                    field[k].push(phi.cos());
                    sines[k].push(phi.sin());
                    cosines[k].push(phi.cos());
                }
            }
            pairs -= todo;
            stream += 1;
        }
    }

    let field: Vec<f64> = field.iter().map(|t| exact_sum(t)).collect();
    let sin_sum: Vec<f64> = sines.iter().map(|t| exact_sum(t)).collect();
    let cos_sum: Vec<f64> = cosines.iter().map(|t| exact_sum(t)).collect();
    let intensity_raw: Vec<f64> = field.iter().map(|e| e * e).collect();
    let std_bins = c.smoothing_halfwidth / c.bin_width;
    let count_f: Vec<f64> = counts.iter().map(|&n| n as f64).collect();
    let mean_phase = (0..bins)
        .map(|k| {
            (counts[k] > 0).then(|| {
                let p = sin_sum[k].atan2(cos_sum[k]).rem_euclid(TAU);
                if p >= TAU {
                    0.0
                } else {
                    p
                }
            })
        })
        .collect();
    ReferenceCurves {
        count_norm: gaussian_smooth(&count_f, std_bins),
        intensity_norm: gaussian_smooth(&intensity_raw, std_bins),
        counts,
        field,
        intensity_raw,
        mean_phase,
    }
}
