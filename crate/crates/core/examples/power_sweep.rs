//! Mean rate against transmit power for every scheme. Pass a path to also
//! write the CSV, e.g. `cargo run --release --example power_sweep -- out.csv`.

use irs_relay_sim::output::write_csv;
use irs_relay_sim::{run_experiment, ExperimentKind, ExperimentSpec, SchemeId};

fn main() -> irs_relay_sim::Result<()> {
    let mut spec = ExperimentSpec::new(ExperimentKind::PowerSweep);
    spec.trials = 200;
    let result = run_experiment(&spec)?;

    print!("{:14}", "dBm");
    for v in &spec.sweep_values {
        print!("{v:>7.0}");
    }
    println!();
    for s in SchemeId::ALL {
        print!("{:14}", s.name());
        for row in result.series(s) {
            print!("{:>7.3}", row.mean);
        }
        println!();
    }

    if let Some(path) = std::env::args().nth(1) {
        write_csv(&result, path.as_ref())?;
    }
    Ok(())
}
