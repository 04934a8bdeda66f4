//! UMi street-canyon path loss at the default 24.2 GHz carrier, LoS and NLoS,
//! plus the link budget the IRS-assisted hops see.

use irs_relay_sim::netmodel::{path_loss_los_db, path_loss_nlos_db};

fn main() -> irs_relay_sim::Result<()> {
    let (fc, h_ut) = (24.2, 1.0);
    println!("{:>6} {:>9} {:>9}", "d [m]", "LoS [dB]", "NLoS [dB]");
    for d in [1.0, 5.0, 10.0, 20.0, 50.0, 100.0] {
        println!("{d:>6.0} {:>9.2} {:>9.2}", path_loss_los_db(d, fc)?, path_loss_nlos_db(d, fc, h_ut)?);
    }

    // a 22 m + 14 m cascade through 256 elements vs a 20 m direct NLoS hop
    let cascade = path_loss_los_db(22.0, fc)? + path_loss_los_db(14.0, fc)? - 20.0 * 256f64.log10();
    let direct = path_loss_nlos_db(20.0, fc, h_ut)?;
    println!("\ncoherent IRS cascade {cascade:.1} dB, direct NLoS {direct:.1} dB");
    Ok(())
}
