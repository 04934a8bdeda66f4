//! One trial of each relay/IRS scheme over a fixed channel realization.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linkrate::{end_to_end_rate, slot_rate, PhaseCodebook, PhaseConfig};
use crate::netmodel::{dbm_to_watts, ChannelRealization, LinkBudgetParams};
use crate::phaseopt::{successive_refinement, Refinement, RefinementConfig, SlotLink};
use crate::qselect::{build_reward_matrix, greedy_max_gain_relay, relay_gain, select_relay, train, QLearnConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemeId {
    /// Q-learning relay selection with refined phases in both slots.
    QlJira,
    /// Max relay-to-IRS gain relay with refined phases in both slots.
    RIrsOptimal,
    /// Uniformly random relay with refined phases in both slots.
    RandomSelection,
    /// Max-gain relay, refined first slot, constant second-slot phase.
    FixedPhase,
    /// Max-gain relay, refined first slot, random second-slot phases.
    RandomPhase,
    /// Source to destination through the IRS only.
    NoRelay,
}

impl SchemeId {
    pub const ALL: [SchemeId; 6] = [
        SchemeId::QlJira,
        SchemeId::RIrsOptimal,
        SchemeId::RandomSelection,
        SchemeId::FixedPhase,
        SchemeId::RandomPhase,
        SchemeId::NoRelay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::QlJira => "ql-jira",
            SchemeId::RIrsOptimal => "r-irs-optimal",
            SchemeId::RandomSelection => "rs",
            SchemeId::FixedPhase => "fpa",
            SchemeId::RandomPhase => "rpa",
            SchemeId::NoRelay => "no-relay",
        }
    }

    pub fn uses_relay(self) -> bool {
        self != SchemeId::NoRelay
    }

    /// Comma-separated list of scheme names.
    pub fn parse_list(list: &str) -> Result<Vec<SchemeId>> {
        let mut out = Vec::new();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let id: SchemeId = name.parse()?;
            if !out.contains(&id) {
                out.push(id);
            }
        }
        if out.is_empty() {
            return Err(Error::invalid("scheme list is empty"));
        }
        Ok(out)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let id = match lower.as_str() {
            "ql-jira" | "qljira" => SchemeId::QlJira,
            "r-irs-optimal" | "optimal" => SchemeId::RIrsOptimal,
            "rs" | "random-selection" => SchemeId::RandomSelection,
            "fpa" | "fixed-phase" => SchemeId::FixedPhase,
            "rpa" | "random-phase" => SchemeId::RandomPhase,
            "no-relay" | "norelay" => SchemeId::NoRelay,
            _ => return Err(Error::invalid(format!("unknown scheme '{s}'"))),
        };
        Ok(id)
    }
}

/// Everything a scheme needs besides the channels.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeContext {
    pub params: LinkBudgetParams,
    pub codebook: PhaseCodebook,
    pub refine: RefinementConfig,
    pub qlearn: QLearnConfig,
    /// Second-slot phase of the fixed-phase scheme, snapped to the codebook.
    pub fixed_phase_rad: f64,
    /// Halve the relayless rate as if it still spent two slots.
    pub no_relay_half_rate: bool,
}

impl Default for SchemeContext {
    fn default() -> Self {
        SchemeContext {
            params: LinkBudgetParams::default(),
            codebook: PhaseCodebook::from_levels(16).expect("16 is a power of two"),
            refine: RefinementConfig::default(),
            qlearn: QLearnConfig::default(),
            fixed_phase_rad: 2.1,
            no_relay_half_rate: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeResult {
    pub scheme: SchemeId,
    pub selected_relay: Option<usize>,
    pub gamma1: f64,
    pub gamma2: Option<f64>,
    pub rate: f64,
    pub phi1: PhaseConfig,
    pub phi2: Option<PhaseConfig>,
}

/// Runs `scheme` once. `rng` feeds the random relay or random phases of the
/// randomized benchmarks.
pub fn run_scheme<R: Rng + ?Sized>(
    scheme: SchemeId,
    realization: &ChannelRealization,
    ctx: &SchemeContext,
    rng: &mut R,
) -> Result<SchemeResult> {
    Trial::new(realization, ctx)?.run(scheme, rng)
}

/// A channel realization plus memoized per-relay refinements, so several
/// schemes evaluated on the same draw share work.
pub struct Trial<'a> {
    real: &'a ChannelRealization,
    ctx: &'a SchemeContext,
    source_w: f64,
    relay_w: f64,
    noise_w: f64,
    slot1: HashMap<usize, Refinement>,
    slot2: HashMap<usize, Refinement>,
    gains: Option<Vec<f64>>,
}

impl<'a> Trial<'a> {
    pub fn new(real: &'a ChannelRealization, ctx: &'a SchemeContext) -> Result<Self> {
        ctx.params.validate()?;
        ctx.refine.validate()?;
        if real.num_elements() != ctx.params.num_irs_elements {
            return Err(Error::invalid("realization size differs from the configured IRS size"));
        }
        Ok(Trial {
            real,
            ctx,
            source_w: dbm_to_watts(ctx.params.source_power_dbm),
            relay_w: dbm_to_watts(ctx.params.relay_power_dbm),
            noise_w: dbm_to_watts(ctx.params.noise_power_dbm),
            slot1: HashMap::new(),
            slot2: HashMap::new(),
            gains: None,
        })
    }

    fn zeros(&self) -> PhaseConfig {
        PhaseConfig::zeros(self.real.num_elements())
    }

    /// Refined first slot (source to relay) for `relay`.
    pub fn slot1(&mut self, relay: usize) -> Result<&Refinement> {
        if !self.slot1.contains_key(&relay) {
            let link = SlotLink::new(self.real.h_s_relay[relay], &self.real.h_irs_relay[relay], &self.real.h_s_irs)?;
            let r = successive_refinement(
                &link,
                self.source_w,
                self.noise_w,
                &self.ctx.codebook,
                &self.ctx.refine,
                &self.zeros(),
            )?;
            self.slot1.insert(relay, r);
        }
        Ok(&self.slot1[&relay])
    }

    /// Refined second slot (relay to destination) for `relay`.
    pub fn slot2(&mut self, relay: usize) -> Result<&Refinement> {
        if !self.slot2.contains_key(&relay) {
            let link =
                SlotLink::new(self.real.h_relay_dest[relay], &self.real.h_irs_dest, &self.real.h_relay_irs[relay])?;
            let r = successive_refinement(
                &link,
                self.relay_w,
                self.noise_w,
                &self.ctx.codebook,
                &self.ctx.refine,
                &self.zeros(),
            )?;
            self.slot2.insert(relay, r);
        }
        Ok(&self.slot2[&relay])
    }

    pub fn relay_gains(&mut self) -> &[f64] {
        let real = self.real;
        self.gains.get_or_insert_with(|| real.h_relay_irs.iter().map(|h| relay_gain(h)).collect())
    }

    pub fn greedy_relay(&mut self) -> Result<usize> {
        greedy_max_gain_relay(self.relay_gains())
    }

    pub fn q_learning_relay(&mut self) -> Result<usize> {
        let rw = build_reward_matrix(self.relay_gains())?;
        Ok(select_relay(&train(&rw, &self.ctx.qlearn)?))
    }

    /// Both slots refined for `relay`.
    pub fn refined_for(&mut self, scheme: SchemeId, relay: usize) -> Result<SchemeResult> {
        let s1 = self.slot1(relay)?.clone();
        let s2 = self.slot2(relay)?.clone();
        Ok(SchemeResult {
            scheme,
            selected_relay: Some(relay),
            gamma1: self.source_w * s1.gain.norm_sqr() / self.noise_w,
            gamma2: Some(self.relay_w * s2.gain.norm_sqr() / self.noise_w),
            rate: end_to_end_rate(s1.rate, s2.rate),
            phi1: s1.phases,
            phi2: Some(s2.phases),
        })
    }

    /// Refined first slot, caller-chosen second-slot phases.
    fn with_slot2_phases(&mut self, scheme: SchemeId, relay: usize, phi2: PhaseConfig) -> Result<SchemeResult> {
        let s1 = self.slot1(relay)?.clone();
        let g2 = crate::linkrate::cascade_gain(
            self.real.h_relay_dest[relay],
            &self.real.h_irs_dest,
            &phi2,
            &self.real.h_relay_irs[relay],
            &self.ctx.codebook,
        )?;
        let gamma2 = self.relay_w * g2.norm_sqr() / self.noise_w;
        Ok(SchemeResult {
            scheme,
            selected_relay: Some(relay),
            gamma1: self.source_w * s1.gain.norm_sqr() / self.noise_w,
            gamma2: Some(gamma2),
            rate: end_to_end_rate(s1.rate, slot_rate(gamma2)),
            phi1: s1.phases,
            phi2: Some(phi2),
        })
    }

    fn no_relay(&self) -> Result<SchemeResult> {
        let link = SlotLink::new(self.real.h_s_dest, &self.real.h_irs_dest, &self.real.h_s_irs)?;
        let r = successive_refinement(
            &link,
            self.source_w,
            self.noise_w,
            &self.ctx.codebook,
            &self.ctx.refine,
            &self.zeros(),
        )?;
        let rate = if self.ctx.no_relay_half_rate { 0.5 * r.rate } else { r.rate };
        Ok(SchemeResult {
            scheme: SchemeId::NoRelay,
            selected_relay: None,
            gamma1: self.source_w * r.gain.norm_sqr() / self.noise_w,
            gamma2: None,
            rate,
            phi1: r.phases,
            phi2: None,
        })
    }

    pub fn run<R: Rng + ?Sized>(&mut self, scheme: SchemeId, rng: &mut R) -> Result<SchemeResult> {
        let r_count = self.real.num_relays();
        if scheme.uses_relay() && r_count == 0 {
            return Err(Error::invalid(format!("scheme {scheme} needs at least one relay")));
        }
        let n = self.real.num_elements();
        match scheme {
            SchemeId::QlJira => {
                let relay = self.q_learning_relay()?;
                self.refined_for(scheme, relay)
            }
            SchemeId::RIrsOptimal => {
                let relay = self.greedy_relay()?;
                self.refined_for(scheme, relay)
            }
            SchemeId::RandomSelection => {
                let relay = rng.random_range(0..r_count);
                self.refined_for(scheme, relay)
            }
            SchemeId::FixedPhase => {
                let relay = self.greedy_relay()?;
                let idx = self.ctx.codebook.nearest_index(self.ctx.fixed_phase_rad);
                self.with_slot2_phases(scheme, relay, PhaseConfig::uniform(n, idx))
            }
            SchemeId::RandomPhase => {
                let relay = self.greedy_relay()?;
                let k = self.ctx.codebook.levels();
                let phi2 = PhaseConfig { indices: (0..n).map(|_| rng.random_range(0..k)).collect() };
                self.with_slot2_phases(scheme, relay, phi2)
            }
            SchemeId::NoRelay => self.no_relay(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::{realize_channels, NetworkTopology};
    use crate::seed::StreamKey;

    fn realization(num_relays: usize, seed: u64, ctx: &SchemeContext) -> ChannelRealization {
        let topo = NetworkTopology::with_random_relays(
            NetworkTopology::DEFAULT_DISK_CENTER,
            10.0,
            num_relays,
            &mut StreamKey::new(seed).child(1).rng(),
        )
        .unwrap();
        realize_channels(&topo, &ctx.params, StreamKey::new(seed).child(2)).unwrap()
    }

    fn small_ctx() -> SchemeContext {
        let mut ctx = SchemeContext::default();
        ctx.params.num_irs_elements = 32;
        ctx
    }

    #[test]
    fn names_round_trip() {
        for id in SchemeId::ALL {
            assert_eq!(id.name().parse::<SchemeId>().unwrap(), id);
        }
        assert!("bogus".parse::<SchemeId>().is_err());
        assert_eq!(
            SchemeId::parse_list("ql-jira, rs,ql-jira").unwrap(),
            vec![SchemeId::QlJira, SchemeId::RandomSelection]
        );
        let err = SchemeId::parse_list("rs,bogus").unwrap_err().to_string();
        assert!(err.contains("bogus"));
    }

    #[test]
    fn fixed_phase_uses_snapped_angle() {
        let ctx = small_ctx();
        let real = realization(5, 1, &ctx);
        let res = run_scheme(SchemeId::FixedPhase, &real, &ctx, &mut StreamKey::new(0).rng()).unwrap();
        let phi2 = res.phi2.unwrap();
        assert!(phi2.indices.iter().all(|&i| i == 5));
        let angle = ctx.codebook.angle(5);
        assert!((angle - 2.1).abs() <= ctx.codebook.step() / 2.0);
    }

    #[test]
    fn no_relay_ignores_relays() {
        let ctx = small_ctx();
        let a = run_scheme(SchemeId::NoRelay, &realization(5, 7, &ctx), &ctx, &mut StreamKey::new(0).rng()).unwrap();
        let b = run_scheme(SchemeId::NoRelay, &realization(30, 7, &ctx), &ctx, &mut StreamKey::new(0).rng()).unwrap();
        assert_eq!(a, b);
        assert!(a.selected_relay.is_none() && a.gamma2.is_none());
        assert!((a.rate - slot_rate(a.gamma1)).abs() < 1e-12);

        let half = SchemeContext { no_relay_half_rate: true, ..ctx.clone() };
        let h = run_scheme(SchemeId::NoRelay, &realization(5, 7, &ctx), &half, &mut StreamKey::new(0).rng()).unwrap();
        assert!((h.rate - 0.5 * a.rate).abs() < 1e-12);
    }

    #[test]
    fn relay_schemes_need_relays() {
        let ctx = small_ctx();
        let real = realization(0, 3, &ctx);
        for id in SchemeId::ALL {
            let res = run_scheme(id, &real, &ctx, &mut StreamKey::new(0).rng());
            assert_eq!(res.is_err(), id.uses_relay(), "{id}");
        }
    }

    #[test]
    fn result_invariants() {
        let ctx = small_ctx();
        for seed in 0..20 {
            let real = realization(6, seed, &ctx);
            let mut trial = Trial::new(&real, &ctx).unwrap();
            let mut rng = StreamKey::new(seed).child(9).rng();
            let greedy = trial.greedy_relay().unwrap();
            let mut by_id = HashMap::new();
            for id in SchemeId::ALL {
                let r = trial.run(id, &mut rng).unwrap();
                assert!(r.rate >= 0.0);
                r.phi1.validate(&ctx.codebook).unwrap();
                assert_eq!(r.phi1.len(), 32);
                if let Some(p) = &r.phi2 {
                    p.validate(&ctx.codebook).unwrap();
                }
                match r.gamma2 {
                    Some(g2) => {
                        assert!(r.selected_relay.unwrap() < 6);
                        let expect = end_to_end_rate(slot_rate(r.gamma1), slot_rate(g2));
                        assert!((r.rate - expect).abs() < 1e-9);
                    }
                    None => assert_eq!(id, SchemeId::NoRelay),
                }
                by_id.insert(id, r);
            }
            let ql = &by_id[&SchemeId::QlJira];
            let opt = &by_id[&SchemeId::RIrsOptimal];
            assert_eq!(opt.selected_relay, Some(greedy));
            if ql.selected_relay == opt.selected_relay {
                assert_eq!(ql.rate, opt.rate);
                assert_eq!(ql.phi1, opt.phi1);
                assert_eq!(ql.phi2, opt.phi2);
            }
            assert_eq!(by_id[&SchemeId::FixedPhase].selected_relay, Some(greedy));
            assert_eq!(by_id[&SchemeId::FixedPhase].phi1, opt.phi1);
            assert_eq!(by_id[&SchemeId::RandomPhase].phi1, opt.phi1);
        }
    }
}
