//! Link-level simulation of joint relay and IRS-assisted two-slot
//! communication.
//!
//! A source reaches a destination in two slots through one decode-and-forward
//! relay, with an intelligent reflecting surface (IRS) assisting both hops.
//! The crate provides
//!
//! * [`netmodel`]: geometry, UMi street-canyon path loss and Rician fading,
//! * [`linkrate`]: cascaded channels, slot SNRs and the end-to-end rate,
//! * [`phaseopt`]: successive refinement of discrete IRS phases,
//! * [`qselect`]: gain-ratio reward matrix and Q-learning relay selection,
//! * [`schemes`]: the proposed scheme and five benchmarks on one realization,
//! * [`harness`]: seeded Monte Carlo sweeps,
//! * [`config`] and [`output`]: run configuration and CSV output for the
//!   `irs-relay-sim` binary.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod harness;
pub mod linkrate;
pub mod netmodel;
pub mod output;
pub mod phaseopt;
pub mod qselect;
pub mod schemes;
pub mod seed;

pub use error::{Error, Result};
pub use harness::{run_experiment, AggregateResult, ExperimentKind, ExperimentSpec};
pub use schemes::{run_scheme, SchemeContext, SchemeId, SchemeResult};
