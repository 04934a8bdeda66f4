//! Seeded Monte Carlo experiments.
//!
//! Trial `t` of every sweep point draws from the substream
//! `master -> TRIAL -> t`, independent of the sweep index. Sweep points thus
//! share fading, relay placement and scheme randomness (common random
//! numbers), which is what makes the relayless scheme bit-identical across
//! relay counts and cell centres. Trials run in parallel and are reduced in
//! trial order, so results do not depend on scheduling.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::netmodel::{realize_channels, NetworkTopology, Point3};
use crate::qselect::{build_reward_matrix, select_relay, train_observed, QLearnConfig};
use crate::schemes::{SchemeContext, SchemeId, Trial};
use crate::seed::{label, StreamKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    /// Rate against transmit power of source and relay (dBm).
    PowerSweep,
    /// Rate against the number of relays.
    RelayCountSweep,
    /// Rate against the y coordinate of the relay disk centre (m).
    CellCenterSweep,
    /// Rate of the greedy Q-table relay against training episodes.
    ConvergenceTrace,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::PowerSweep => "power",
            ExperimentKind::RelayCountSweep => "relays",
            ExperimentKind::CellCenterSweep => "center",
            ExperimentKind::ConvergenceTrace => "convergence",
        }
    }

    /// Name of the swept quantity, as written to CSV.
    pub fn sweep_param(self) -> &'static str {
        match self {
            ExperimentKind::PowerSweep => "tx_power_dbm",
            ExperimentKind::RelayCountSweep => "num_relays",
            ExperimentKind::CellCenterSweep => "cell_center_y_m",
            ExperimentKind::ConvergenceTrace => "episode",
        }
    }

    pub fn default_sweep(self) -> Vec<f64> {
        match self {
            ExperimentKind::PowerSweep => (0..=7).map(|k| 10.0 * k as f64).collect(),
            ExperimentKind::RelayCountSweep => (1..=6).map(|k| 5.0 * k as f64).collect(),
            ExperimentKind::CellCenterSweep => (0..=4).map(|k| 5.0 * k as f64).collect(),
            ExperimentKind::ConvergenceTrace => (1..=100).map(|k| 100.0 * k as f64).collect(),
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "power" => Ok(ExperimentKind::PowerSweep),
            "relays" => Ok(ExperimentKind::RelayCountSweep),
            "center" | "centre" => Ok(ExperimentKind::CellCenterSweep),
            "convergence" => Ok(ExperimentKind::ConvergenceTrace),
            _ => Err(Error::invalid(format!("unknown experiment '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub sweep_values: Vec<f64>,
    pub schemes: Vec<SchemeId>,
    pub trials: usize,
    pub master_seed: u64,
    /// Link budget, codebook and algorithm settings; the swept field is
    /// overridden per sweep point.
    pub ctx: SchemeContext,
    pub num_relays: usize,
    pub disk_center: Point3,
    pub disk_radius: f64,
    /// Draw relay positions once per experiment instead of once per trial.
    pub freeze_relays: bool,
}

impl ExperimentSpec {
    pub const DEFAULT_TRIALS: usize = 500;
    pub const DEFAULT_NUM_RELAYS: usize = 10;

    /// Defaults for `kind`: 40 dBm (30 dBm for the convergence trace),
    /// 10 relays, every scheme (only QL-JIRA for convergence).
    pub fn new(kind: ExperimentKind) -> Self {
        let mut ctx = SchemeContext::default();
        let schemes = if kind == ExperimentKind::ConvergenceTrace {
            ctx.params.source_power_dbm = 30.0;
            ctx.params.relay_power_dbm = 30.0;
            vec![SchemeId::QlJira]
        } else {
            SchemeId::ALL.to_vec()
        };
        ExperimentSpec {
            kind,
            sweep_values: kind.default_sweep(),
            schemes,
            trials: Self::DEFAULT_TRIALS,
            master_seed: 1,
            ctx,
            num_relays: Self::DEFAULT_NUM_RELAYS,
            disk_center: NetworkTopology::DEFAULT_DISK_CENTER,
            disk_radius: NetworkTopology::DEFAULT_DISK_RADIUS,
            freeze_relays: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("experiment needs at least one trial"));
        }
        if self.schemes.is_empty() {
            return Err(Error::invalid("experiment needs at least one scheme"));
        }
        if self.sweep_values.is_empty() {
            return Err(Error::invalid("sweep values are empty"));
        }
        if self.sweep_values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("sweep values must be finite"));
        }
        if self.sweep_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("sweep values must be strictly increasing"));
        }
        let integral = |v: f64| v >= 0.0 && v.fract() == 0.0;
        match self.kind {
            ExperimentKind::RelayCountSweep => {
                if !self.sweep_values.iter().all(|&v| integral(v)) {
                    return Err(Error::invalid("relay counts must be non-negative integers"));
                }
            }
            ExperimentKind::ConvergenceTrace => {
                let max = self.ctx.qlearn.episodes as f64;
                if !self.sweep_values.iter().all(|&v| integral(v) && v >= 1.0 && v <= max) {
                    return Err(Error::invalid(format!("convergence checkpoints must be integers in [1, {max}]")));
                }
            }
            _ => {}
        }
        self.ctx.params.validate()?;
        self.ctx.refine.validate()?;
        self.ctx.qlearn.validate()?;
        Ok(())
    }

    fn trial_key(&self, trial: usize) -> StreamKey {
        StreamKey::new(self.master_seed).child(label::TRIAL).child(trial as u64)
    }

    /// Context and topology inputs for one sweep value.
    fn point(&self, value: f64) -> (SchemeContext, usize, Point3) {
        let mut ctx = self.ctx.clone();
        let mut relays = self.num_relays;
        let mut center = self.disk_center;
        match self.kind {
            ExperimentKind::PowerSweep => {
                ctx.params.source_power_dbm = value;
                ctx.params.relay_power_dbm = value;
            }
            ExperimentKind::RelayCountSweep => relays = value as usize,
            ExperimentKind::CellCenterSweep => center.y = value,
            ExperimentKind::ConvergenceTrace => {}
        }
        (ctx, relays, center)
    }

    fn topology(&self, key: StreamKey, relays: usize, center: Point3) -> Result<NetworkTopology> {
        let pos_key = if self.freeze_relays {
            StreamKey::new(self.master_seed).child(label::RELAY_POSITIONS)
        } else {
            key.child(label::RELAY_POSITIONS)
        };
        NetworkTopology::with_random_relays(center, self.disk_radius, relays, &mut pos_key.rng())
    }

    fn trial_setup(
        &self,
        value: f64,
        trial: usize,
    ) -> Result<(SchemeContext, StreamKey, crate::netmodel::ChannelRealization)> {
        let key = self.trial_key(trial);
        let (mut ctx, relays, center) = self.point(value);
        ctx.qlearn = QLearnConfig { seed: key.child(label::QLEARN).value(), ..ctx.qlearn };
        let topo = self.topology(key, relays, center)?;
        let real = realize_channels(&topo, &ctx.params, key.child(label::CHANNELS))?;
        Ok((ctx, key, real))
    }

    /// Rate of each scheme (in `schemes` order) for one trial at one sweep
    /// value.
    pub fn trial_rates(&self, value: f64, trial: usize) -> Result<Vec<f64>> {
        let (ctx, key, real) = self.trial_setup(value, trial)?;
        let mut runner = Trial::new(&real, &ctx)?;
        self.schemes
            .iter()
            .map(|&id| {
                let mut rng = key.child(label::SCHEME).child(id as u64).rng();
                runner.run(id, &mut rng).map(|r| r.rate)
            })
            .collect()
    }

    /// Rates of each scheme at every checkpoint for one convergence trial,
    /// indexed `[checkpoint][scheme]`. QL-JIRA uses the relay the Q-table
    /// would select at that checkpoint, with both slots refined; other
    /// schemes do not learn and repeat their single-trial rate.
    pub fn convergence_trial(&self, trial: usize) -> Result<Vec<Vec<f64>>> {
        let (ctx, key, real) = self.trial_setup(0.0, trial)?;
        let mut runner = Trial::new(&real, &ctx)?;
        let mut fixed = Vec::with_capacity(self.schemes.len());
        for &id in &self.schemes {
            if id == SchemeId::QlJira {
                fixed.push(None);
            } else {
                let mut rng = key.child(label::SCHEME).child(id as u64).rng();
                fixed.push(Some(runner.run(id, &mut rng)?.rate));
            }
        }
        let needs_ql = fixed.iter().any(Option::is_none);
        let mut checkpoints: Vec<Option<usize>> = vec![None; self.sweep_values.len()];
        if needs_ql {
            let rw = build_reward_matrix(runner.relay_gains())?;
            let targets: Vec<usize> = self.sweep_values.iter().map(|&v| v as usize).collect();
            let mut next = 0;
            train_observed(&rw, &ctx.qlearn, 1, |episode, q| {
                while next < targets.len() && targets[next] == episode {
                    checkpoints[next] = Some(select_relay(q));
                    next += 1;
                }
            })?;
        }
        let mut out = Vec::with_capacity(checkpoints.len());
        for relay in checkpoints {
            let mut row = Vec::with_capacity(fixed.len());
            for f in &fixed {
                row.push(match (f, relay) {
                    (Some(rate), _) => *rate,
                    (None, Some(r)) => runner.refined_for(SchemeId::QlJira, r)?.rate,
                    (None, None) => unreachable!("QL-JIRA checkpoints are recorded"),
                });
            }
            out.push(row);
        }
        Ok(out)
    }
}

/// Summary statistics of one (scheme, sweep value) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub scheme: SchemeId,
    pub sweep_value: f64,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator; zero for one trial).
    pub std: f64,
    pub trials: usize,
    /// Per-trial rates in trial order.
    pub rates: Vec<f64>,
}

impl AggregateRow {
    pub fn from_rates(scheme: SchemeId, sweep_value: f64, rates: Vec<f64>) -> Self {
        let n = rates.len();
        let mean = if n == 0 { 0.0 } else { rates.iter().sum::<f64>() / n as f64 };
        let std =
            if n < 2 { 0.0 } else { (rates.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt() };
        AggregateRow { scheme, sweep_value, mean, std, trials: n, rates }
    }

    pub fn std_error(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.std / (self.trials as f64).sqrt()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateResult {
    pub kind: ExperimentKind,
    pub master_seed: u64,
    /// Sorted by scheme, then sweep value.
    pub rows: Vec<AggregateRow>,
}

impl AggregateResult {
    pub fn row(&self, scheme: SchemeId, sweep_value: f64) -> Option<&AggregateRow> {
        self.rows.iter().find(|r| r.scheme == scheme && r.sweep_value == sweep_value)
    }

    /// Rows of one scheme in sweep order.
    pub fn series(&self, scheme: SchemeId) -> Vec<&AggregateRow> {
        self.rows.iter().filter(|r| r.scheme == scheme).collect()
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<AggregateResult> {
    spec.validate()?;
    let trials: Vec<usize> = (0..spec.trials).collect();
    // per_point[sweep][trial][scheme]
    let per_point: Vec<Vec<Vec<f64>>> = if spec.kind == ExperimentKind::ConvergenceTrace {
        let per_trial: Vec<Vec<Vec<f64>>> =
            trials.par_iter().map(|&t| spec.convergence_trial(t)).collect::<Result<_>>()?;
        (0..spec.sweep_values.len()).map(|k| per_trial.iter().map(|tr| tr[k].clone()).collect()).collect()
    } else {
        spec.sweep_values
            .iter()
            .map(|&v| trials.par_iter().map(|&t| spec.trial_rates(v, t)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?
    };

    let mut rows = Vec::with_capacity(spec.schemes.len() * spec.sweep_values.len());
    for (s_idx, &scheme) in spec.schemes.iter().enumerate() {
        for (k, &value) in spec.sweep_values.iter().enumerate() {
            let rates = per_point[k].iter().map(|tr| tr[s_idx]).collect();
            rows.push(AggregateRow::from_rates(scheme, value, rates));
        }
    }
    rows.sort_by(|a, b| a.scheme.cmp(&b.scheme).then(a.sweep_value.total_cmp(&b.sweep_value)));
    Ok(AggregateResult { kind: spec.kind, master_seed: spec.master_seed, rows })
}
