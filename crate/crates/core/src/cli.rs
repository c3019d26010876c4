//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{analyze, AnalysisParams, DEFAULT_PROMINENCE, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::io::{
    self, manifest_path, parse_config, report_to_csv, report_to_text, RunManifest, RunSource,
};
use crate::scenarios::ScenarioRegistry;
use crate::simulate::{run_simulation, RunOptions};
use crate::TOOL_VERSION;

#[derive(Debug, Parser)]
#[command(
    name = "slitsim",
    version,
    about = "Monte Carlo multi-slit photon interference"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a preset or a config file and write curves.
    Simulate(SimulateArgs),
    /// Extract extrema, visibility, peak coincidence and fringe phases from a curve CSV.
    Analyze(AnalyzeArgs),
    /// List the built-in presets.
    Scenarios,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["scenario", "config"])))]
struct SimulateArgs {
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    filmstrip: Option<PathBuf>,
    #[arg(long, default_value_t = 48, requires = "filmstrip")]
    height: u32,
    #[arg(long)]
    photon_log: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_PROMINENCE)]
    prominence: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long)]
    report: PathBuf,
    /// Also write the report as CSV rows.
    #[arg(long)]
    report_csv: Option<PathBuf>,
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let (source, mut config) = match (&args.scenario, &args.config) {
        (Some(name), _) => {
            let preset = ScenarioRegistry::builtin().build(name)?;
            (RunSource::Scenario(preset.name), preset.config)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            (RunSource::ConfigFile(path.clone()), parse_config(&text)?)
        }
        (None, None) => unreachable!("clap enforces a source"),
    };
    if args.workers == 0 {
        return Err(Error::InvalidArgument(
            "--workers must be at least 1".into(),
        ));
    }
    config.seed = args.seed;

    let output = run_simulation(
        &config,
        &RunOptions {
            workers: args.workers,
            record_photons: args.photon_log.is_some(),
        },
    )?;
    for warning in &output.warnings {
        eprintln!("warning: {warning}");
    }

    let mut outputs = vec![("csv".to_string(), args.out.clone())];
    io::write_csv(&output.curves, &args.out)?;
    if let Some(path) = &args.filmstrip {
        io::write_filmstrip(&output.curves, path, args.height)?;
        outputs.push(("filmstrip".to_string(), path.clone()));
    }
    if let (Some(path), Some(records)) = (&args.photon_log, &output.records) {
        io::write_photon_log(records, path)?;
        outputs.push(("photon_log".to_string(), path.clone()));
    }
    let manifest = RunManifest {
        source,
        seed: args.seed,
        workers: args.workers,
        outputs,
        tool_version: TOOL_VERSION.to_string(),
        config,
    };
    manifest.write(&manifest_path(&args.out))
}

fn analyze_command(args: AnalyzeArgs) -> Result<()> {
    if !(args.prominence > 0.0 && args.prominence < 1.0) {
        return Err(Error::InvalidArgument(
            "--prominence must lie in (0, 1)".into(),
        ));
    }
    if !(args.tolerance >= 0.0) {
        return Err(Error::InvalidArgument(
            "--tolerance must be non-negative".into(),
        ));
    }
    let curves = io::read_csv(&args.input)?;
    let report = analyze(
        &curves,
        AnalysisParams {
            prominence: args.prominence,
            tolerance: args.tolerance,
        },
    );
    fs::write(&args.report, report_to_text(&report)).map_err(|e| Error::io(&args.report, e))?;
    if let Some(path) = &args.report_csv {
        fs::write(path, report_to_csv(&report)).map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

/// Listing of every registered preset with its main parameters.
pub fn scenario_listing(registry: &ScenarioRegistry) -> String {
    let mut out = String::new();
    for scenario in registry.iter() {
        let c = scenario.config();
        let spacing = if c.slit_count() > 1 {
            format!(
                "{:.3} um",
                (c.slit_positions[1] - c.slit_positions[0]) * 1e6
            )
        } else {
            "-".to_string()
        };
        out.push_str(&format!(
            "{:<22} slits={} d={} sigma={:e} offset={:.2}pi weights={:?} mode={}\n    {}\n",
            scenario.name(),
            c.slit_count(),
            spacing,
            c.sigma,
            c.multi_slit_phase_offset / std::f64::consts::PI,
            c.slit_weights,
            c.polarization_mode,
            scenario.summary(),
        ));
    }
    out
}

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code: 0 on success, 1 on runtime errors, 2 on usage errors.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Analyze(args) => analyze_command(args),
        Command::Scenarios => {
            print!("{}", scenario_listing(&ScenarioRegistry::builtin()));
            Ok(())
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
