//! Simulation driver.
//!
//! Photon pairs are cut into fixed chunks (slit-major, [`PAIRS_PER_CHUNK`]
//! pairs each) and chunk `k` draws from substream `k` of the run seed. Workers
//! take chunks round-robin; the per-chunk accumulators are merged in chunk
//! order afterwards. The output therefore depends on the seed only, never on
//! the number of workers.

use std::thread;

use crate::error::Result;
use crate::model::{validate_config, ApparatusConfig, PhotonRecord};
use crate::polarization::{self, FieldProjection};
use crate::rng::RandomStream;
use crate::scenarios::ScenarioPreset;
use crate::screen::{ResultCurves, ScreenAccumulator, ScreenGrid};
use crate::transport::{emit_and_scatter, impact_from_scatter, photon_record};

pub const PAIRS_PER_CHUNK: u64 = 2048;

/// Overflow fraction above which a run reports a warning.
pub const OVERFLOW_WARNING_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub workers: usize,
    pub record_photons: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: 1,
            record_photons: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimulationOutput {
    pub curves: ResultCurves,
    pub accumulator: ScreenAccumulator,
    pub photons: u64,
    /// Per-photon log in chunk order, when requested.
    pub records: Option<Vec<PhotonRecord>>,
    pub warnings: Vec<String>,
}

/// A contiguous run of photon pairs through one slit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chunk {
    pub slit: usize,
    pub pairs: u64,
    pub stream: u64,
}

/// Work plan shared by the engine and anyone reproducing its random streams.
pub fn plan_chunks(config: &ApparatusConfig) -> Vec<Chunk> {
    let mut chunks = Vec::new();
    for slit in 0..config.slit_count() {
        let mut remaining = config.photons_for_slit(slit) / 2;
        while remaining > 0 {
            let pairs = remaining.min(PAIRS_PER_CHUNK);
            chunks.push(Chunk {
                slit,
                pairs,
                stream: chunks.len() as u64,
            });
            remaining -= pairs;
        }
    }
    chunks
}

struct ChunkResult {
    accumulator: ScreenAccumulator,
    records: Vec<PhotonRecord>,
}

fn run_chunk(
    config: &ApparatusConfig,
    projection: &dyn FieldProjection,
    grid: ScreenGrid,
    chunk: Chunk,
    record: bool,
) -> Result<ChunkResult> {
    let mut stream = RandomStream::substream(config.seed, chunk.stream);
    let mut accumulator = ScreenAccumulator::new(grid);
    let mut records = Vec::with_capacity(if record { 2 * chunk.pairs as usize } else { 0 });
    for _ in 0..chunk.pairs {
        let (a, b) = emit_and_scatter(&mut stream, config, chunk.slit);
        for event in [a, b] {
            let impact = impact_from_scatter(&event, config, projection)?;
            accumulator.accumulate(&impact, projection);
            if record {
                records.push(photon_record(&event, &impact));
            }
        }
    }
    Ok(ChunkResult {
        accumulator,
        records,
    })
}

/// Runs the full pipeline for `config` using `config.seed`.
pub fn run_simulation(config: &ApparatusConfig, options: &RunOptions) -> Result<SimulationOutput> {
    let config = validate_config(config.clone())?;
    let projection = polarization::for_mode(config.polarization_mode);
    let grid = ScreenGrid::from_config(&config);
    let chunks = plan_chunks(&config);
    let workers = options.workers.clamp(1, chunks.len().max(1));

    let mut slots: Vec<Option<Result<ChunkResult>>> = (0..chunks.len()).map(|_| None).collect();
    if workers == 1 {
        for (slot, &chunk) in slots.iter_mut().zip(&chunks) {
            *slot = Some(run_chunk(
                &config,
                projection,
                grid,
                chunk,
                options.record_photons,
            ));
        }
    } else {
        let config = &config;
        let chunks = &chunks;
        let done: Vec<Vec<(usize, Result<ChunkResult>)>> = thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        (w..chunks.len())
                            .step_by(workers)
                            .map(|i| {
                                let r = run_chunk(
                                    config,
                                    projection,
                                    grid,
                                    chunks[i],
                                    options.record_photons,
                                );
                                (i, r)
                            })
                            .collect()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("simulation worker panicked"))
                .collect()
        });
        for (i, r) in done.into_iter().flatten() {
            slots[i] = Some(r);
        }
    }

    let mut accumulator = ScreenAccumulator::new(grid);
    let mut records = options.record_photons.then(Vec::new);
    for slot in slots {
        let result = slot.expect("every chunk is scheduled")?;
        accumulator.merge(&result.accumulator);
        if let Some(all) = records.as_mut() {
            all.extend(result.records);
        }
    }

    let photons = accumulator.total_counts() + accumulator.overflow();
    let mut warnings = Vec::new();
    if photons > 0 && accumulator.overflow() as f64 > OVERFLOW_WARNING_FRACTION * photons as f64 {
        warnings.push(format!(
            "{} of {} photons ({:.2}%) landed outside the recorded screen region",
            accumulator.overflow(),
            photons,
            100.0 * accumulator.overflow() as f64 / photons as f64
        ));
    }

    Ok(SimulationOutput {
        curves: accumulator.finish(config.smoothing_halfwidth),
        accumulator,
        photons,
        records,
        warnings,
    })
}

/// Runs `preset` with `seed` replacing the preset's own seed.
pub fn run_preset(
    preset: &ScenarioPreset,
    seed: u64,
    options: &RunOptions,
) -> Result<SimulationOutput> {
    let config = ApparatusConfig {
        seed,
        ..preset.config.clone()
    };
    run_simulation(&config, options)
}
