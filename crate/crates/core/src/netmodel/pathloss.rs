//! 3GPP UMi street-canyon path loss (distance in meters, carrier in GHz).

use crate::error::{Error, Result};

fn check(d: f64, fc_ghz: f64) -> Result<()> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::invalid(format!("link distance must be > 0 m, got {d}")));
    }
    if !(fc_ghz > 0.0) || !fc_ghz.is_finite() {
        return Err(Error::invalid(format!("carrier frequency must be > 0 GHz, got {fc_ghz}")));
    }
    Ok(())
}

pub fn path_loss_los_db(d: f64, fc_ghz: f64) -> Result<f64> {
    check(d, fc_ghz)?;
    Ok(32.4 + 21.0 * d.log10() + 20.0 * fc_ghz.log10())
}

/// NLoS loss, floored at the LoS loss for the same distance.
pub fn path_loss_nlos_db(d: f64, fc_ghz: f64, h_ut: f64) -> Result<f64> {
    let los = path_loss_los_db(d, fc_ghz)?;
    let nlos = 22.4 + 35.5 * d.log10() + 21.3 * fc_ghz.log10() - 0.3 * (h_ut - 1.5);
    Ok(los.max(nlos))
}
