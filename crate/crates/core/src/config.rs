//! Run configuration for the command-line driver.
//!
//! Values resolve in three layers: built-in defaults for the chosen
//! experiment, then a `key=value` config file, then command-line flags.
//! Config-file keys are the long flag names without the leading dashes, and
//! `#` starts a comment. Angles are radians, powers dBm, distances meters.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgAction, CommandFactory, Parser};

use crate::error::{Error, Result};
use crate::harness::{ExperimentKind, ExperimentSpec};
use crate::linkrate::PhaseCodebook;
use crate::netmodel::Point3;
use crate::schemes::SchemeId;

#[derive(Debug, Parser)]
#[command(
    name = "irs-relay-sim",
    version,
    about = "Monte Carlo achievable-rate experiments for joint relay and IRS-assisted links",
    args_override_self = true,
    allow_negative_numbers = true
)]
struct Args {
    /// Experiment to run: power | relays | center | convergence
    #[arg(long, value_parser = parse_kind)]
    experiment: Option<ExperimentKind>,

    /// Comma-separated schemes: ql-jira, r-irs-optimal, rs, fpa, rpa, no-relay
    #[arg(long, value_parser = parse_schemes)]
    schemes: Option<SchemeList>,

    /// Monte Carlo trials per sweep point
    #[arg(long)]
    trials: Option<usize>,

    /// Master seed
    #[arg(long)]
    seed: Option<u64>,

    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,

    /// key=value config file; flags given on the command line take precedence
    #[arg(long)]
    config: Option<PathBuf>,

    /// Comma-separated sweep values (dBm, relay count, meters or episodes)
    #[arg(long, value_parser = parse_floats)]
    sweep: Option<FloatList>,

    /// Carrier frequency [GHz]
    #[arg(long, value_name = "GHZ")]
    carrier_freq_ghz: Option<f64>,

    /// Number of IRS elements
    #[arg(long, value_name = "N")]
    irs_elements: Option<usize>,

    /// Discrete phase levels per element (power of two)
    #[arg(long, value_name = "K")]
    phase_levels: Option<usize>,

    /// Noise power [dBm]
    #[arg(long, value_name = "DBM")]
    noise_dbm: Option<f64>,

    /// Transmit power of source and relay [dBm]
    #[arg(long, value_name = "DBM")]
    tx_power_dbm: Option<f64>,

    /// Source transmit power [dBm]; overrides --tx-power-dbm
    #[arg(long, value_name = "DBM")]
    source_power_dbm: Option<f64>,

    /// Relay transmit power [dBm]; overrides --tx-power-dbm
    #[arg(long, value_name = "DBM")]
    relay_power_dbm: Option<f64>,

    /// User terminal height in the NLoS path loss [m]
    #[arg(long, value_name = "M")]
    terminal_height_m: Option<f64>,

    /// Rician K-factor of LoS links [dB]
    #[arg(long, value_name = "DB", allow_hyphen_values = true)]
    k_los_db: Option<f64>,

    /// Rician K-factor of NLoS links [dB]; -inf is Rayleigh
    #[arg(long, value_name = "DB", allow_hyphen_values = true)]
    k_nlos_db: Option<f64>,

    /// Number of relays (fixed-count experiments)
    #[arg(long)]
    num_relays: Option<usize>,

    /// Relay disk radius [m]
    #[arg(long, value_name = "M")]
    disk_radius_m: Option<f64>,

    /// Relay disk centre as x,y,z [m]
    #[arg(long, value_name = "X,Y,Z", value_parser = parse_point)]
    disk_center_m: Option<Point3>,

    /// Draw relay positions once per experiment instead of per trial
    #[arg(long, num_args = 0..=1, default_missing_value = "true", action = ArgAction::Set)]
    freeze_relays: Option<bool>,

    /// Q-learning discount factor
    #[arg(long)]
    discount: Option<f64>,

    /// Epsilon-greedy exploration probability
    #[arg(long)]
    explore: Option<f64>,

    /// Q-learning rate
    #[arg(long)]
    learning_rate: Option<f64>,

    /// Q-learning episodes
    #[arg(long)]
    episodes: Option<usize>,

    /// Second-slot phase of the fixed-phase benchmark [rad]
    #[arg(long, value_name = "RAD")]
    fixed_phase_rad: Option<f64>,

    /// Successive refinement stop tolerance [bps/Hz]
    #[arg(long)]
    tolerance: Option<f64>,

    /// Successive refinement sweep limit
    #[arg(long)]
    max_sweeps: Option<usize>,

    /// Halve the relayless rate as if it used two slots
    #[arg(long, num_args = 0..=1, default_missing_value = "true", action = ArgAction::Set)]
    no_relay_half_rate: Option<bool>,
}

#[derive(Debug, Clone)]
struct SchemeList(Vec<SchemeId>);

#[derive(Debug, Clone)]
struct FloatList(Vec<f64>);

fn parse_kind(s: &str) -> std::result::Result<ExperimentKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_schemes(s: &str) -> std::result::Result<SchemeList, String> {
    SchemeId::parse_list(s).map(SchemeList).map_err(|e| e.to_string())
}

fn parse_floats(s: &str) -> std::result::Result<FloatList, String> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("'{}' is not a number", v.trim())))
        .collect::<std::result::Result<_, _>>()
        .map(FloatList)
}

fn parse_point(s: &str) -> std::result::Result<Point3, String> {
    match parse_floats(s)?.0[..] {
        [x, y, z] => Ok(Point3::new(x, y, z)),
        _ => Err(format!("expected x,y,z, got '{s}'")),
    }
}

/// A fully resolved run: the experiment and where to write it.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub spec: ExperimentSpec,
    pub out: PathBuf,
}

/// Parses `argv` (program name first).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = Args::try_parse_from(&argv)?;
    let merged = match &cli.config {
        Some(path) => {
            let mut full = vec![argv.first().cloned().unwrap_or_else(|| "irs-relay-sim".into())];
            full.extend(config_file_args(path)?);
            full.extend(argv.iter().skip(1).cloned());
            Args::try_parse_from(full)?
        }
        None => cli,
    };
    resolve(merged)
}

/// Reads a config file into the equivalent `--key value` arguments.
fn config_file_args(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    let known: Vec<String> = Args::command().get_arguments().filter_map(|a| a.get_long().map(str::to_owned)).collect();
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("{}:{}: expected key=value, got '{line}'", path.display(), lineno + 1))
        })?;
        let key = key.trim();
        if key == "config" || !known.iter().any(|k| k == key) {
            return Err(Error::Config(format!("{}:{}: unknown key '{key}'", path.display(), lineno + 1)));
        }
        out.push(format!("--{key}"));
        out.push(value.trim().to_owned());
    }
    Ok(out)
}

fn resolve(a: Args) -> Result<RunConfig> {
    let kind = a.experiment.unwrap_or(ExperimentKind::PowerSweep);
    let mut spec = ExperimentSpec::new(kind);
    if let Some(SchemeList(s)) = a.schemes {
        spec.schemes = s;
    }
    if let Some(t) = a.trials {
        spec.trials = t;
    }
    if let Some(s) = a.seed {
        spec.master_seed = s;
    }
    if let Some(FloatList(v)) = a.sweep {
        spec.sweep_values = v;
    }

    let p = &mut spec.ctx.params;
    if let Some(v) = a.carrier_freq_ghz {
        p.carrier_freq_ghz = v;
    }
    if let Some(v) = a.irs_elements {
        p.num_irs_elements = v;
    }
    if let Some(v) = a.noise_dbm {
        p.noise_power_dbm = v;
    }
    if let Some(v) = a.tx_power_dbm {
        p.source_power_dbm = v;
        p.relay_power_dbm = v;
    }
    if let Some(v) = a.source_power_dbm {
        p.source_power_dbm = v;
    }
    if let Some(v) = a.relay_power_dbm {
        p.relay_power_dbm = v;
    }
    if let Some(v) = a.terminal_height_m {
        p.terminal_height_m = v;
    }
    if let Some(v) = a.k_los_db {
        p.rician_k_los_db = v;
    }
    if let Some(v) = a.k_nlos_db {
        p.rician_k_nlos_db = v;
    }
    if let Some(k) = a.phase_levels {
        spec.ctx.codebook = PhaseCodebook::from_levels(k).map_err(|e| Error::Config(format!("--phase-levels: {e}")))?;
    }

    if let Some(v) = a.num_relays {
        spec.num_relays = v;
    }
    if let Some(v) = a.disk_radius_m {
        spec.disk_radius = v;
    }
    if let Some(v) = a.disk_center_m {
        spec.disk_center = v;
    }
    if let Some(v) = a.freeze_relays {
        spec.freeze_relays = v;
    }

    let q = &mut spec.ctx.qlearn;
    if let Some(v) = a.discount {
        q.discount = v;
    }
    if let Some(v) = a.explore {
        q.explore_prob = v;
    }
    if let Some(v) = a.learning_rate {
        q.learning_rate = v;
    }
    if let Some(v) = a.episodes {
        q.episodes = v;
    }
    if let Some(v) = a.fixed_phase_rad {
        spec.ctx.fixed_phase_rad = v;
    }
    if let Some(v) = a.tolerance {
        spec.ctx.refine.tolerance = v;
    }
    if let Some(v) = a.max_sweeps {
        spec.ctx.refine.max_sweeps = v;
    }
    if let Some(v) = a.no_relay_half_rate {
        spec.ctx.no_relay_half_rate = v;
    }

    let out = a.out.ok_or_else(|| Error::Config("missing output path: pass --out <path>".into()))?;
    spec.validate().map_err(|e| Error::Config(e.to_string()))?;
    Ok(RunConfig { spec, out })
}
