use num_complex::Complex64;

use super::fading::draw_small_scale;
use super::geometry::{distance, NetworkTopology, Point3};
use super::pathloss::{path_loss_los_db, path_loss_nlos_db};
use super::{db_to_linear, path_loss_amplitude};
use crate::error::{Error, Result};
use crate::seed::StreamKey;

/// Radio parameters shared by every link.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkBudgetParams {
    pub carrier_freq_ghz: f64,
    pub terminal_height_m: f64,
    pub noise_power_dbm: f64,
    pub source_power_dbm: f64,
    pub relay_power_dbm: f64,
    pub num_irs_elements: usize,
    /// Rician K-factor of LoS-class links; `-inf` dB is Rayleigh.
    pub rician_k_los_db: f64,
    pub rician_k_nlos_db: f64,
}

impl Default for LinkBudgetParams {
    fn default() -> Self {
        LinkBudgetParams {
            carrier_freq_ghz: 24.2,
            terminal_height_m: 1.0,
            noise_power_dbm: -60.0,
            source_power_dbm: 40.0,
            relay_power_dbm: 40.0,
            num_irs_elements: 256,
            rician_k_los_db: 10.0,
            rician_k_nlos_db: f64::NEG_INFINITY,
        }
    }
}

impl LinkBudgetParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.carrier_freq_ghz > 0.0) || !self.carrier_freq_ghz.is_finite() {
            return Err(Error::invalid("carrier frequency must be > 0 GHz"));
        }
        for (name, v) in [
            ("noise power", self.noise_power_dbm),
            ("source power", self.source_power_dbm),
            ("relay power", self.relay_power_dbm),
            ("terminal height", self.terminal_height_m),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be finite")));
            }
        }
        for (name, v) in [("LoS K-factor", self.rician_k_los_db), ("NLoS K-factor", self.rician_k_nlos_db)] {
            if v.is_nan() {
                return Err(Error::invalid(format!("{name} must not be NaN")));
            }
        }
        Ok(())
    }

    /// Linear K-factor for a link class.
    pub fn k_factor(&self, class: LinkClass) -> f64 {
        match class {
            LinkClass::LoS => db_to_linear(self.rician_k_los_db),
            LinkClass::NLoS => db_to_linear(self.rician_k_nlos_db),
        }
    }

    pub fn path_loss_db(&self, class: LinkClass, d: f64) -> Result<f64> {
        match class {
            LinkClass::LoS => path_loss_los_db(d, self.carrier_freq_ghz),
            LinkClass::NLoS => path_loss_nlos_db(d, self.carrier_freq_ghz, self.terminal_height_m),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkClass {
    LoS,
    NLoS,
}

/// The distinct links of the network. Links touching the IRS are LoS, every
/// other link is obstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Link {
    SourceRelay,
    IrsRelay,
    SourceIrs,
    RelayDest,
    IrsDest,
    RelayIrs,
    SourceDest,
}

impl Link {
    pub(crate) fn class(self) -> LinkClass {
        match self {
            Link::IrsRelay | Link::SourceIrs | Link::IrsDest | Link::RelayIrs => LinkClass::LoS,
            Link::SourceRelay | Link::RelayDest | Link::SourceDest => LinkClass::NLoS,
        }
    }

    fn label(self) -> u64 {
        self as u64 + 1
    }
}

/// One fading draw of every channel coefficient, path loss included.
///
/// Per-relay vectors are indexed `[relay][element]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub h_s_relay: Vec<Complex64>,
    pub h_irs_relay: Vec<Vec<Complex64>>,
    pub h_s_irs: Vec<Complex64>,
    pub h_relay_dest: Vec<Complex64>,
    pub h_irs_dest: Vec<Complex64>,
    pub h_relay_irs: Vec<Vec<Complex64>>,
    pub h_s_dest: Complex64,
}

impl ChannelRealization {
    pub fn num_relays(&self) -> usize {
        self.h_s_relay.len()
    }

    pub fn num_elements(&self) -> usize {
        self.h_s_irs.len()
    }
}

/// Draws all link channels for `topology`.
///
/// Every link, and every relay on a per-relay link, reads its own substream
/// of `key`, so the S-IRS, IRS-D and S-D channels do not depend on the relay
/// count and relay `i` sees the same channels whatever the number of relays.
/// The IRS is a point for path loss purposes. The IRS-relay (first slot) and
/// relay-IRS (second slot) channels are independent draws sharing one path
/// loss.
pub fn realize_channels(
    topology: &NetworkTopology,
    params: &LinkBudgetParams,
    key: StreamKey,
) -> Result<ChannelRealization> {
    params.validate()?;
    topology.validate()?;
    let n = params.num_irs_elements;

    let draw = |link: Link, a: &Point3, b: &Point3, count: usize, relay: Option<usize>| -> Result<Vec<Complex64>> {
        let pl = params.path_loss_db(link.class(), distance(a, b))?;
        let amp = path_loss_amplitude(pl);
        let mut stream = key.child(link.label());
        if let Some(i) = relay {
            stream = stream.child(i as u64);
        }
        let mut rng = stream.rng();
        Ok(draw_small_scale(params.k_factor(link.class()), count, &mut rng).into_iter().map(|h| h * amp).collect())
    };

    let (s, d, irs) = (&topology.source_pos, &topology.dest_pos, &topology.irs_pos);
    let r_count = topology.num_relays();
    let mut real = ChannelRealization {
        h_s_relay: Vec::with_capacity(r_count),
        h_irs_relay: Vec::with_capacity(r_count),
        h_s_irs: draw(Link::SourceIrs, s, irs, n, None)?,
        h_relay_dest: Vec::with_capacity(r_count),
        h_irs_dest: draw(Link::IrsDest, irs, d, n, None)?,
        h_relay_irs: Vec::with_capacity(r_count),
        h_s_dest: draw(Link::SourceDest, s, d, 1, None)?[0],
    };
    for (i, r) in topology.relay_pos.iter().enumerate() {
        real.h_s_relay.push(draw(Link::SourceRelay, s, r, 1, Some(i))?[0]);
        real.h_irs_relay.push(draw(Link::IrsRelay, irs, r, n, Some(i))?);
        real.h_relay_dest.push(draw(Link::RelayDest, r, d, 1, Some(i))?[0]);
        real.h_relay_irs.push(draw(Link::RelayIrs, r, irs, n, Some(i))?);
    }
    Ok(real)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::sample_relay_positions;

    fn topology(num_relays: usize, seed: u64) -> NetworkTopology {
        NetworkTopology::with_random_relays(
            NetworkTopology::DEFAULT_DISK_CENTER,
            NetworkTopology::DEFAULT_DISK_RADIUS,
            num_relays,
            &mut StreamKey::new(seed).rng(),
        )
        .unwrap()
    }

    fn expected_amp(params: &LinkBudgetParams, link: Link, a: &Point3, b: &Point3) -> f64 {
        path_loss_amplitude(params.path_loss_db(link.class(), distance(a, b)).unwrap())
    }

    #[test]
    fn link_classes() {
        assert_eq!(Link::SourceIrs.class(), LinkClass::LoS);
        assert_eq!(Link::IrsDest.class(), LinkClass::LoS);
        assert_eq!(Link::IrsRelay.class(), LinkClass::LoS);
        assert_eq!(Link::RelayIrs.class(), LinkClass::LoS);
        assert_eq!(Link::SourceDest.class(), LinkClass::NLoS);
        assert_eq!(Link::SourceRelay.class(), LinkClass::NLoS);
        assert_eq!(Link::RelayDest.class(), LinkClass::NLoS);
    }

    #[test]
    fn vector_shapes() {
        let topo = topology(4, 1);
        let real = realize_channels(&topo, &LinkBudgetParams::default(), StreamKey::new(2)).unwrap();
        assert_eq!(real.num_relays(), 4);
        assert_eq!(real.h_s_irs.len(), 256);
        assert_eq!(real.h_irs_dest.len(), 256);
        assert!(real.h_irs_relay.iter().all(|v| v.len() == 256));
        assert!(real.h_relay_irs.iter().all(|v| v.len() == 256));
        assert_eq!(real.h_relay_dest.len(), 4);
    }

    #[test]
    fn infinite_k_collapses_to_path_loss() {
        let params = LinkBudgetParams {
            rician_k_los_db: f64::INFINITY,
            rician_k_nlos_db: f64::INFINITY,
            num_irs_elements: 8,
            ..Default::default()
        };
        let topo = topology(3, 4);
        let real = realize_channels(&topo, &params, StreamKey::new(5)).unwrap();
        let (s, d, irs) = (topo.source_pos, topo.dest_pos, topo.irs_pos);
        let rel = |x: f64, y: f64| ((x - y) / y).abs() < 1e-12;
        assert!(rel(real.h_s_dest.norm(), expected_amp(&params, Link::SourceDest, &s, &d)));
        assert!(real.h_s_irs.iter().all(|h| rel(h.norm(), expected_amp(&params, Link::SourceIrs, &s, &irs))));
        assert!(real.h_irs_dest.iter().all(|h| rel(h.norm(), expected_amp(&params, Link::IrsDest, &irs, &d))));
        for (i, r) in topo.relay_pos.iter().enumerate() {
            assert!(rel(real.h_s_relay[i].norm(), expected_amp(&params, Link::SourceRelay, &s, r)));
            assert!(rel(real.h_relay_dest[i].norm(), expected_amp(&params, Link::RelayDest, r, &d)));
            let los = expected_amp(&params, Link::IrsRelay, &irs, r);
            assert!(real.h_irs_relay[i].iter().chain(&real.h_relay_irs[i]).all(|h| rel(h.norm(), los)));
        }
    }

    #[test]
    fn empirical_power_matches_link_budget() {
        let params = LinkBudgetParams { num_irs_elements: 1, ..Default::default() };
        let topo = topology(1, 6);
        let (s, d, irs, r) = (topo.source_pos, topo.dest_pos, topo.irs_pos, topo.relay_pos[0]);
        let draws = 100_000;
        let mut acc = [0.0f64; 4];
        for t in 0..draws {
            let real = realize_channels(&topo, &params, StreamKey::new(77).child(t)).unwrap();
            acc[0] += real.h_s_dest.norm_sqr();
            acc[1] += real.h_s_irs[0].norm_sqr();
            acc[2] += real.h_s_relay[0].norm_sqr();
            acc[3] += real.h_relay_irs[0][0].norm_sqr();
        }
        let targets = [
            expected_amp(&params, Link::SourceDest, &s, &d),
            expected_amp(&params, Link::SourceIrs, &s, &irs),
            expected_amp(&params, Link::SourceRelay, &s, &r),
            expected_amp(&params, Link::RelayIrs, &r, &irs),
        ];
        for (sum, amp) in acc.iter().zip(targets) {
            let ratio = sum / draws as f64 / (amp * amp);
            assert!((0.98..=1.02).contains(&ratio), "power ratio {ratio}");
        }
    }

    #[test]
    fn relay_count_does_not_disturb_shared_links() {
        let small = topology(5, 8);
        let mut big = small.clone();
        big.relay_pos
            .extend(sample_relay_positions(big.relay_disk_center, 10.0, 25, &mut StreamKey::new(99).rng()).unwrap());
        let params = LinkBudgetParams::default();
        let a = realize_channels(&small, &params, StreamKey::new(1)).unwrap();
        let b = realize_channels(&big, &params, StreamKey::new(1)).unwrap();
        assert_eq!(a.h_s_dest, b.h_s_dest);
        assert_eq!(a.h_s_irs, b.h_s_irs);
        assert_eq!(a.h_irs_dest, b.h_irs_dest);
        assert_eq!(a.h_relay_irs[..], b.h_relay_irs[..5]);
        assert_eq!(a.h_s_relay[..], b.h_s_relay[..5]);
    }

    #[test]
    fn deterministic_realization() {
        let topo = topology(3, 2);
        let p = LinkBudgetParams::default();
        assert_eq!(
            realize_channels(&topo, &p, StreamKey::new(3)).unwrap(),
            realize_channels(&topo, &p, StreamKey::new(3)).unwrap()
        );
    }
}
