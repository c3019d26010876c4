//! File formats: configuration, curve CSV, photon log, PGM filmstrip,
//! analysis report and run manifest.

pub mod config;
pub mod csv;
pub mod manifest;
pub mod pgm;
pub mod report;

pub use config::{parse_config, serialize_config};
pub use csv::{read_csv, write_csv, write_photon_log};
pub use manifest::{manifest_path, RunManifest, RunSource};
pub use pgm::write_filmstrip;
pub use report::{report_to_csv, report_to_text};
