//! Effective channels, per-slot SNR and the two-hop achievable rate.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The `K = 2^bits` uniformly spaced phase shifts available to each IRS
/// element.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseCodebook {
    bits: u32,
    angles: Vec<f64>,
    phasors: Vec<Complex64>,
}

impl PhaseCodebook {
    pub fn from_bits(bits: u32) -> Result<Self> {
        if bits > 16 {
            return Err(Error::invalid(format!("phase resolution of {bits} bits is not supported")));
        }
        let levels = 1usize << bits;
        let step = TAU / levels as f64;
        let angles: Vec<f64> = (0..levels).map(|k| k as f64 * step).collect();
        let phasors = angles.iter().map(|&a| Complex64::from_polar(1.0, a)).collect();
        Ok(PhaseCodebook { bits, angles, phasors })
    }

    /// Codebook with `levels` phases; `levels` must be a power of two.
    pub fn from_levels(levels: usize) -> Result<Self> {
        if levels == 0 || !levels.is_power_of_two() {
            return Err(Error::invalid(format!("number of phase levels must be a power of two, got {levels}")));
        }
        Self::from_bits(levels.trailing_zeros())
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn levels(&self) -> usize {
        self.angles.len()
    }

    pub fn step(&self) -> f64 {
        TAU / self.levels() as f64
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn angle(&self, index: usize) -> f64 {
        self.angles[index]
    }

    /// `e^{j angle(index)}`.
    pub fn phasor(&self, index: usize) -> Complex64 {
        self.phasors[index]
    }

    /// Index of the codebook angle closest to `angle` on the circle; ties
    /// resolve to the lower index.
    pub fn nearest_index(&self, angle: f64) -> usize {
        let k = self.levels();
        let pos = angle.rem_euclid(TAU) / self.step();
        let lo = (pos.floor() as usize) % k;
        let hi = (lo + 1) % k;
        let frac = pos - pos.floor();
        match frac.partial_cmp(&0.5) {
            Some(std::cmp::Ordering::Less) => lo,
            Some(std::cmp::Ordering::Greater) => hi,
            _ => lo.min(hi),
        }
    }
}

/// Phase index per IRS element. Reflection amplitudes are fixed to one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseConfig {
    pub indices: Vec<usize>,
}

impl PhaseConfig {
    pub fn zeros(n: usize) -> Self {
        PhaseConfig { indices: vec![0; n] }
    }

    pub fn uniform(n: usize, index: usize) -> Self {
        PhaseConfig { indices: vec![index; n] }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn validate(&self, codebook: &PhaseCodebook) -> Result<()> {
        match self.indices.iter().position(|&i| i >= codebook.levels()) {
            Some(n) => Err(Error::invalid(format!(
                "element {n} has phase index {} outside a {}-level codebook",
                self.indices[n],
                codebook.levels()
            ))),
            None => Ok(()),
        }
    }

    pub fn angles<'a>(&'a self, codebook: &'a PhaseCodebook) -> impl Iterator<Item = f64> + 'a {
        self.indices.iter().map(|&i| codebook.angle(i))
    }
}

/// SNRs of the two transmission slots (linear).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotSnr {
    pub gamma1: f64,
    pub gamma2: f64,
}

impl SlotSnr {
    pub fn rate(&self) -> f64 {
        end_to_end_rate(slot_rate(self.gamma1), slot_rate(self.gamma2))
    }
}

/// `h_direct + sum_n e^{j phi_n} h_rx[n] h_tx[n]`.
pub fn cascade_gain(
    h_direct: Complex64,
    h_rx: &[Complex64],
    phases: &PhaseConfig,
    h_tx: &[Complex64],
    codebook: &PhaseCodebook,
) -> Result<Complex64> {
    if h_rx.len() != h_tx.len() || h_rx.len() != phases.len() {
        return Err(Error::invalid(format!(
            "cascade length mismatch: rx {}, tx {}, phases {}",
            h_rx.len(),
            h_tx.len(),
            phases.len()
        )));
    }
    phases.validate(codebook)?;
    Ok(h_rx
        .iter()
        .zip(h_tx)
        .zip(&phases.indices)
        .fold(h_direct, |acc, ((rx, tx), &i)| acc + codebook.phasor(i) * rx * tx))
}

pub fn snr(gain: Complex64, tx_power_w: f64, noise_w: f64) -> Result<f64> {
    if !(noise_w > 0.0) {
        return Err(Error::invalid(format!("noise power must be > 0 W, got {noise_w}")));
    }
    if !(tx_power_w >= 0.0) {
        return Err(Error::invalid(format!("transmit power must be >= 0 W, got {tx_power_w}")));
    }
    Ok(tx_power_w * gain.norm_sqr() / noise_w)
}

/// Shannon rate in bps/Hz.
pub fn slot_rate(snr: f64) -> f64 {
    snr.ln_1p() / std::f64::consts::LN_2
}

/// Two-slot decode-and-forward rate: half the bottleneck slot rate.
pub fn end_to_end_rate(c_t1: f64, c_t2: f64) -> f64 {
    0.5 * c_t1.min(c_t2)
}
