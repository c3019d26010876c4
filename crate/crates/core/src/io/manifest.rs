//! Run manifest: everything needed to reproduce a `simulate` invocation.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::io::config::serialize_config;
use crate::model::ApparatusConfig;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunSource {
    Scenario(String),
    ConfigFile(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub source: RunSource,
    pub seed: u64,
    pub workers: usize,
    pub outputs: Vec<(String, PathBuf)>,
    pub tool_version: String,
    pub config: ApparatusConfig,
}

impl RunManifest {
    /// `key=value` text; resolved config lines carry a `config.` prefix.
    pub fn to_text(&self) -> String {
        let mut out = format!("tool_version={}\n", self.tool_version);
        match &self.source {
            RunSource::Scenario(name) => out.push_str(&format!("scenario={name}\n")),
            RunSource::ConfigFile(path) => {
                out.push_str(&format!("config_file={}\n", path.display()))
            }
        }
        out.push_str(&format!("seed={}\nworkers={}\n", self.seed, self.workers));
        for (kind, path) in &self.outputs {
            out.push_str(&format!("output.{kind}={}\n", path.display()));
        }
        for line in serialize_config(&self.config).lines() {
            out.push_str("config.");
            out.push_str(line);
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

/// Manifest path next to a CSV output: `run.csv` -> `run.manifest`.
pub fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("manifest")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::config::parse_config;

    #[test]
    fn manifest_echoes_resolved_config() {
        let manifest = RunManifest {
            source: RunSource::Scenario("double".into()),
            seed: 7,
            workers: 4,
            outputs: vec![("csv".into(), PathBuf::from("d.csv"))],
            tool_version: "slitsim 0.0.0".into(),
            config: ApparatusConfig::default(),
        };
        let text = manifest.to_text();
        assert!(
            text.starts_with("tool_version=slitsim 0.0.0\nscenario=double\nseed=7\nworkers=4\n")
        );
        assert!(text.contains("output.csv=d.csv\n"));
        let echoed: String = text
            .lines()
            .filter_map(|l| l.strip_prefix("config."))
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(parse_config(&echoed).unwrap(), ApparatusConfig::default());
        assert_eq!(
            manifest_path(Path::new("out/d.csv")),
            PathBuf::from("out/d.manifest")
        );
    }
}
