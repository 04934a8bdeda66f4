//! Rate against the number of candidate relays. No-Relay does not depend on
//! the relay count, so its column stays constant.

use irs_relay_sim::{run_experiment, ExperimentKind, ExperimentSpec, SchemeId};

fn main() -> irs_relay_sim::Result<()> {
    let mut spec = ExperimentSpec::new(ExperimentKind::RelayCountSweep);
    spec.trials = 200;
    spec.schemes = vec![SchemeId::QlJira, SchemeId::RandomSelection, SchemeId::NoRelay];
    let result = run_experiment(&spec)?;

    for v in &spec.sweep_values {
        print!("{v:>3.0} relays:");
        for &s in &spec.schemes {
            let row = result.row(s, *v).unwrap();
            print!("  {} {:.3} ± {:.3}", s.name(), row.mean, row.std_error());
        }
        println!();
    }
    Ok(())
}
