//! Monte Carlo simulation of multi-slit photon interference in a local
//! hidden-variables picture.
//!
//! Every photon carries its own emission phase, a scattering angle drawn at
//! the slit, and a phase at the moment of impact. The screen superposes the
//! scalar (or two-channel polarized) fields of all photons landing in the same
//! 10 nm bin and squares the sum to obtain the intensity. Number density and
//! intensity are recorded side by side so the two can be compared.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`]: configuration, validation and per-photon records.
//! * [`rng`]: seeded uniform streams and the paired polar-method sampler.
//! * [`transport`]: emission, slit scattering and propagation to the screen.
//! * [`polarization`]: field-projection strategies, selected by name.
//! * [`screen`]: binning, field superposition, smoothing and normalisation.
//! * [`scenarios`]: named presets behind a registry.
//! * [`simulate`]: the parallel, worker-count independent driver.
//! * [`analysis`]: extrema, visibility, peak coincidence and fringe phases.
//! * [`io`]: config files, CSV, PGM filmstrips, reports and manifests.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod io;
pub mod model;
pub mod polarization;
pub mod rng;
pub mod scenarios;
pub mod screen;
pub mod simulate;
pub mod transport;

pub use error::{ConfigError, Error, Result};
pub use model::{validate_config, ApparatusConfig, PhotonRecord, PolarizationMode};
pub use scenarios::{build_scenario, Scenario, ScenarioPreset, ScenarioRegistry};
pub use screen::{ResultCurves, ScreenAccumulator};
pub use simulate::{run_simulation, RunOptions, SimulationOutput};

/// Version string written into run manifests.
pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));
