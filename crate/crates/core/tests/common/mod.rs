//! Shared full-scale runs for the integration suites. Each preset is simulated
//! once per test binary.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use slitsim::scenarios::build_scenario;
use slitsim::simulate::run_preset;
use slitsim::{RunOptions, ScenarioPreset, SimulationOutput};

pub const SEED: u64 = 1;
pub const WORKERS: usize = 4;

type Cache = Mutex<HashMap<String, &'static OnceLock<SimulationOutput>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn preset(name: &str) -> ScenarioPreset {
    build_scenario(name).unwrap()
}

/// Full-scale run of preset `name` at [`SEED`].
pub fn run(name: &str) -> &'static SimulationOutput {
    let cell: &'static OnceLock<SimulationOutput> = cache()
        .lock()
        .unwrap()
        .entry(name.to_string())
        .or_insert_with(|| Box::leak(Box::new(OnceLock::new())));
    cell.get_or_init(|| {
        let options = RunOptions {
            workers: WORKERS,
            record_photons: false,
        };
        run_preset(&preset(name), SEED, &options).unwrap()
    })
}
