//! Every scheme on one channel draw, with selected relay and slot SNRs.

use irs_relay_sim::netmodel::{realize_channels, NetworkTopology};
use irs_relay_sim::schemes::Trial;
use irs_relay_sim::seed::StreamKey;
use irs_relay_sim::{SchemeContext, SchemeId};

fn main() -> irs_relay_sim::Result<()> {
    let key = StreamKey::new(42);
    let ctx = SchemeContext::default();
    let topo = NetworkTopology::with_random_relays(
        NetworkTopology::DEFAULT_DISK_CENTER,
        NetworkTopology::DEFAULT_DISK_RADIUS,
        10,
        &mut key.child(1).rng(),
    )?;
    let real = realize_channels(&topo, &ctx.params, key.child(2))?;

    let mut trial = Trial::new(&real, &ctx)?;
    let mut rng = key.child(3).rng();
    println!("{:14} {:>5} {:>10} {:>10} {:>8}", "scheme", "relay", "snr1 [dB]", "snr2 [dB]", "bps/Hz");
    for s in SchemeId::ALL {
        let r = trial.run(s, &mut rng)?;
        let relay = r.selected_relay.map_or("-".to_string(), |i| i.to_string());
        let snr2 = r.gamma2.map_or("-".to_string(), |g| format!("{:.2}", 10.0 * g.log10()));
        println!("{:14} {relay:>5} {:>10.2} {snr2:>10} {:>8.4}", s.name(), 10.0 * r.gamma1.log10(), r.rate);
    }
    Ok(())
}
