//! Successive refinement of discrete IRS phases.
//!
//! One slot's received amplitude is `|h_d + sum_n v_n theta_n|` with
//! `theta_n = h_rx[n] h_tx[n]` and `v_n = e^{j phi_n}` restricted to the
//! codebook. Refinement is coordinate ascent: each element in turn is moved
//! to the codebook phase that maximizes the amplitude with the others fixed,
//! sweeping until a full pass gains less than the rate tolerance.
//!
//! The per-element optimum has a closed form. Writing the squared amplitude
//! as `v^H A v + 2 Re{v^H b} + |h_d|^2` with `A = theta^H theta` and
//! `b = theta^H h_d`, the terms involving `v_l` reduce to `2 Re{conj(v_l) w_l}`
//! plus a constant, where `w_l = sum_{k != l} A[l,k] v_k + b[l]`. The best
//! codebook phase is therefore the one circularly nearest to `arg(w_l)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linkrate::{slot_rate, PhaseCodebook, PhaseConfig};

/// Channels of one transmission slot: direct path plus the IRS cascade
/// `h_rx^T Phi h_tx`.
#[derive(Debug, Clone, Copy)]
pub struct SlotLink<'a> {
    pub h_direct: Complex64,
    pub h_rx: &'a [Complex64],
    pub h_tx: &'a [Complex64],
}

impl<'a> SlotLink<'a> {
    pub fn new(h_direct: Complex64, h_rx: &'a [Complex64], h_tx: &'a [Complex64]) -> Result<Self> {
        if h_rx.len() != h_tx.len() {
            return Err(Error::invalid(format!("IRS channel length mismatch: rx {} vs tx {}", h_rx.len(), h_tx.len())));
        }
        Ok(SlotLink { h_direct, h_rx, h_tx })
    }

    pub fn num_elements(&self) -> usize {
        self.h_rx.len()
    }

    pub fn theta(&self) -> Vec<Complex64> {
        self.h_rx.iter().zip(self.h_tx).map(|(a, b)| a * b).collect()
    }
}

/// Quadratic-form view of the squared received amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    pub theta: Vec<Complex64>,
    /// Row-major `N x N`, `A[l][k] = conj(theta_l) theta_k`.
    pub a_matrix: Vec<Complex64>,
    pub b_vector: Vec<Complex64>,
    pub direct_power: f64,
}

impl QuadraticForm {
    pub fn n(&self) -> usize {
        self.theta.len()
    }

    pub fn a(&self, l: usize, k: usize) -> Complex64 {
        self.a_matrix[l * self.n() + k]
    }

    /// `v^H A v + 2 Re{v^H b} + |h_d|^2`.
    pub fn evaluate(&self, v: &[Complex64]) -> f64 {
        let n = self.n();
        let mut quad = Complex64::new(0.0, 0.0);
        for l in 0..n {
            let row: Complex64 = (0..n).map(|k| self.a(l, k) * v[k]).sum();
            quad += v[l].conj() * row;
        }
        let lin: Complex64 = v.iter().zip(&self.b_vector).map(|(vl, bl)| vl.conj() * bl).sum();
        quad.re + 2.0 * lin.re + self.direct_power
    }
}

pub fn build_quadratic_form(h_direct: Complex64, h_rx: &[Complex64], h_tx: &[Complex64]) -> Result<QuadraticForm> {
    let theta = SlotLink::new(h_direct, h_rx, h_tx)?.theta();
    let n = theta.len();
    let mut a_matrix = Vec::with_capacity(n * n);
    for l in 0..n {
        a_matrix.extend(theta.iter().map(|tk| theta[l].conj() * tk));
    }
    let b_vector = theta.iter().map(|t| t.conj() * h_direct).collect();
    Ok(QuadraticForm { theta, a_matrix, b_vector, direct_power: h_direct.norm_sqr() })
}

/// `w_l = sum_{k != l} A[l,k] v_k + b[l]`.
pub fn compute_w(form: &QuadraticForm, v: &[Complex64], l: usize) -> Result<Complex64> {
    if l >= form.n() {
        return Err(Error::invalid(format!("element index {l} out of range for N = {}", form.n())));
    }
    if v.len() != form.n() {
        return Err(Error::invalid("phase vector length differs from the form dimension"));
    }
    let off: Complex64 = (0..form.n()).filter(|&k| k != l).map(|k| form.a(l, k) * v[k]).sum();
    Ok(off + form.b_vector[l])
}

fn project(w: Complex64, codebook: &PhaseCodebook) -> usize {
    if w.norm_sqr() == 0.0 {
        0
    } else {
        codebook.nearest_index(w.arg())
    }
}

/// Best codebook index for element `l` with every other element held at `v`.
pub fn refine_element(form: &QuadraticForm, v: &[Complex64], l: usize, codebook: &PhaseCodebook) -> Result<usize> {
    if codebook.levels() == 0 {
        return Err(Error::invalid("empty phase codebook"));
    }
    Ok(project(compute_w(form, v, l)?, codebook))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementConfig {
    /// Stop once a full sweep improves the slot rate by no more than this (bps/Hz).
    pub tolerance: f64,
    pub max_sweeps: usize,
}

impl Default for RefinementConfig {
    fn default() -> Self {
        RefinementConfig { tolerance: 1e-9, max_sweeps: 100 }
    }
}

impl RefinementConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::invalid("refinement tolerance must be > 0"));
        }
        if self.max_sweeps == 0 {
            return Err(Error::invalid("refinement needs at least one sweep"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub phases: PhaseConfig,
    /// Slot rate `log2(1 + P |gain|^2 / sigma^2)` at `phases`.
    pub rate: f64,
    pub gain: Complex64,
    pub sweeps: usize,
}

pub fn successive_refinement(
    link: &SlotLink<'_>,
    tx_power_w: f64,
    noise_w: f64,
    codebook: &PhaseCodebook,
    config: &RefinementConfig,
    initial: &PhaseConfig,
) -> Result<Refinement> {
    successive_refinement_observed(link, tx_power_w, noise_w, codebook, config, initial, |_| {})
}

/// As [`successive_refinement`], reporting the squared amplitude after every
/// single-element update to `observe`.
pub fn successive_refinement_observed(
    link: &SlotLink<'_>,
    tx_power_w: f64,
    noise_w: f64,
    codebook: &PhaseCodebook,
    config: &RefinementConfig,
    initial: &PhaseConfig,
    mut observe: impl FnMut(f64),
) -> Result<Refinement> {
    config.validate()?;
    if !(noise_w > 0.0) || !(tx_power_w >= 0.0) {
        return Err(Error::invalid("need tx power >= 0 and noise power > 0"));
    }
    if initial.len() != link.num_elements() {
        return Err(Error::invalid(format!(
            "initial phases have {} entries for {} IRS elements",
            initial.len(),
            link.num_elements()
        )));
    }
    initial.validate(codebook)?;

    let theta = link.theta();
    let mut phases = initial.clone();
    let total = |phases: &PhaseConfig| -> Complex64 {
        theta.iter().zip(&phases.indices).fold(link.h_direct, |acc, (t, &i)| acc + codebook.phasor(i) * t)
    };
    let rate_of = |g: Complex64| slot_rate(tx_power_w * g.norm_sqr() / noise_w);

    let mut sum = total(&phases);
    let mut rate = rate_of(sum);
    let mut sweeps = 0;
    while sweeps < config.max_sweeps {
        sweeps += 1;
        let mut changed = false;
        for (l, t) in theta.iter().enumerate() {
            let current = phases.indices[l];
            let rest = sum - codebook.phasor(current) * t;
            let best = project(t.conj() * rest, codebook);
            if best != current {
                let candidate = rest + codebook.phasor(best) * t;
                if candidate.norm_sqr() > sum.norm_sqr() {
                    phases.indices[l] = best;
                    sum = candidate;
                    changed = true;
                }
            }
            observe(sum.norm_sqr());
        }
        // resynchronize the running sum so rounding does not accumulate
        sum = total(&phases);
        let new_rate = rate_of(sum);
        let gained = new_rate - rate;
        rate = new_rate;
        if !changed || gained.abs() <= config.tolerance {
            break;
        }
    }
    Ok(Refinement { phases, rate, gain: sum, sweeps })
}
