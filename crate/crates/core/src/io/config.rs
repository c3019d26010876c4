//! Plain-text `key=value` apparatus configuration.
//!
//! ```text
//! # two slits, 0.5 um apart
//! wavelength=500nm
//! slit_count=2
//! slit_spacing=0.5um
//! multi_slit_phase_offset=0.2pi
//! ```
//!
//! Lengths take an optional `nm`, `um`, `mm` or `m` suffix; angles an
//! optional `pi` suffix. Keys left out keep the standard double-slit values.
//! `slit_positions` and `slit_count`/`slit_spacing` are mutually exclusive.

use std::collections::HashSet;
use std::f64::consts::PI;

use crate::error::{ConfigError, Error, Result};
use crate::model::{equal_weights, symmetric_positions, validate_config, ApparatusConfig};

const KEYS: [&str; 16] = [
    "wavelength",
    "source_slit_distance",
    "slit_screen_distance",
    "slit_positions",
    "slit_count",
    "slit_spacing",
    "slit_weights",
    "photons_per_slit",
    "sigma",
    "alpha",
    "multi_slit_phase_offset",
    "bin_width",
    "smoothing_halfwidth",
    "polarization_mode",
    "seed",
    "screen_extent",
];

fn parse_length(text: &str) -> std::result::Result<f64, String> {
    let text = text.trim();
    let (number, divisor) = [
        ("nm", 1e9),
        ("um", 1e6),
        ("µm", 1e6),
        ("mm", 1e3),
        ("m", 1.0),
    ]
    .iter()
    .find_map(|(suffix, d)| text.strip_suffix(suffix).map(|n| (n.trim(), *d)))
    .unwrap_or((text, 1.0));
    let value: f64 = number
        .parse()
        .map_err(|_| format!("invalid length `{text}`"))?;
    Ok(value / divisor)
}

fn parse_angle(text: &str) -> std::result::Result<f64, String> {
    let text = text.trim();
    match text.strip_suffix("pi") {
        Some(n) => n
            .trim()
            .parse::<f64>()
            .map(|v| v * PI)
            .map_err(|_| format!("invalid angle `{text}`")),
        None => text.parse().map_err(|_| format!("invalid angle `{text}`")),
    }
}

fn parse_number<T: std::str::FromStr>(text: &str) -> std::result::Result<T, String> {
    text.trim()
        .parse()
        .map_err(|_| format!("invalid number `{}`", text.trim()))
}

fn parse_list<T>(
    text: &str,
    item: impl Fn(&str) -> std::result::Result<T, String>,
) -> std::result::Result<Vec<T>, String> {
    text.split(',').map(item).collect()
}

/// Parses and validates a configuration file.
pub fn parse_config(text: &str) -> Result<ApparatusConfig> {
    let mut config = ApparatusConfig::default();
    let mut seen = HashSet::new();
    let mut slit_count = None;
    let mut slit_spacing = None;
    let mut explicit_positions = false;
    let mut explicit_weights = false;
    let mut explicit_offset = false;

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, found `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(err(format!("unknown key `{key}`")));
        }
        if !seen.insert(key.to_string()) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        let parsed: std::result::Result<(), String> = (|| {
            match key {
                "wavelength" => config.wavelength = parse_length(value)?,
                "source_slit_distance" => config.source_slit_distance = parse_length(value)?,
                "slit_screen_distance" => config.slit_screen_distance = parse_length(value)?,
                "slit_positions" => {
                    config.slit_positions = parse_list(value, parse_length)?;
                    explicit_positions = true;
                }
                "slit_count" => slit_count = Some(parse_number::<usize>(value)?),
                "slit_spacing" => slit_spacing = Some(parse_length(value)?),
                "slit_weights" => {
                    config.slit_weights = parse_list(value, parse_number)?;
                    explicit_weights = true;
                }
                "photons_per_slit" => config.photons_per_slit = parse_number(value)?,
                "sigma" => config.sigma = parse_angle(value)?,
                "alpha" => config.alpha = parse_number(value)?,
                "multi_slit_phase_offset" => {
                    config.multi_slit_phase_offset = parse_angle(value)?;
                    explicit_offset = true;
                }
                "bin_width" => config.bin_width = parse_length(value)?,
                "smoothing_halfwidth" => config.smoothing_halfwidth = parse_length(value)?,
                "polarization_mode" => config.polarization_mode = value.parse()?,
                "seed" => config.seed = parse_number(value)?,
                "screen_extent" => config.screen_extent = parse_length(value)?,
                _ => unreachable!(),
            }
            Ok(())
        })();
        parsed.map_err(err)?;
    }

    if explicit_positions && (slit_count.is_some() || slit_spacing.is_some()) {
        return Err(Error::Parse {
            line: 0,
            message: "slit_positions cannot be combined with slit_count or slit_spacing".into(),
        });
    }
    if let Some(spacing) = slit_spacing {
        if !(spacing > 0.0) {
            return Err(Error::InvalidConfig(vec![ConfigError::new(
                "slit_spacing",
                "slit_spacing must be positive",
            )]));
        }
    }
    if !explicit_positions && (slit_count.is_some() || slit_spacing.is_some()) {
        let count = slit_count.unwrap_or(config.slit_count());
        let spacing = slit_spacing.unwrap_or(crate::scenarios::SLIT_SPACING);
        config.slit_positions = symmetric_positions(count, spacing);
    }
    if !explicit_weights {
        config.slit_weights = equal_weights(config.slit_count());
    }
    if !explicit_offset && config.slit_count() == 1 {
        config.multi_slit_phase_offset = 0.0;
    }

    Ok(validate_config(config)?)
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:e}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Canonical text form: every field, SI units, shortest round-trip numbers.
pub fn serialize_config(config: &ApparatusConfig) -> String {
    let lines = [
        format!("wavelength={:e}", config.wavelength),
        format!("source_slit_distance={:e}", config.source_slit_distance),
        format!("slit_screen_distance={:e}", config.slit_screen_distance),
        format!("slit_positions={}", join(&config.slit_positions)),
        format!("slit_weights={}", join(&config.slit_weights)),
        format!("photons_per_slit={}", config.photons_per_slit),
        format!("sigma={:e}", config.sigma),
        format!("alpha={:e}", config.alpha),
        format!(
            "multi_slit_phase_offset={:e}",
            config.multi_slit_phase_offset
        ),
        format!("bin_width={:e}", config.bin_width),
        format!("smoothing_halfwidth={:e}", config.smoothing_halfwidth),
        format!("polarization_mode={}", config.polarization_mode),
        format!("seed={}", config.seed),
        format!("screen_extent={:e}", config.screen_extent),
    ];
    let mut out = lines.join("\n");
    out.push('\n');
    out
}
