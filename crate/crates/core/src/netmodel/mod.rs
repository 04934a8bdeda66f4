//! Network geometry, path loss and fading channel realizations.

mod channel;
mod fading;
mod geometry;
mod pathloss;

pub use channel::{realize_channels, ChannelRealization, LinkBudgetParams, LinkClass};
pub use fading::draw_small_scale;
pub use geometry::{distance, sample_relay_positions, NetworkTopology, Point3};
pub use pathloss::{path_loss_los_db, path_loss_nlos_db};

/// Power ratio in dB to linear.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Amplitude gain of a link with the given path loss.
pub fn path_loss_amplitude(pl_db: f64) -> f64 {
    10f64.powf(-pl_db / 20.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_conversions() {
        assert!((dbm_to_watts(30.0) - 1.0).abs() < 1e-15);
        assert!((dbm_to_watts(-60.0) - 1e-9).abs() < 1e-24);
        assert!((db_to_linear(10.0) - 10.0).abs() < 1e-12);
        assert_eq!(db_to_linear(f64::NEG_INFINITY), 0.0);
        assert!((path_loss_amplitude(20.0) - 0.1).abs() < 1e-15);
    }
}
