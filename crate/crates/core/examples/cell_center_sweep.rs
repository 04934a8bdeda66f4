//! Moves the relay disk from (10, 0) to (10, 20) and reports each scheme.

use irs_relay_sim::{run_experiment, ExperimentKind, ExperimentSpec, SchemeId};

fn main() -> irs_relay_sim::Result<()> {
    let mut spec = ExperimentSpec::new(ExperimentKind::CellCenterSweep);
    spec.trials = 200;
    let result = run_experiment(&spec)?;

    for s in SchemeId::ALL {
        let means: Vec<String> = result.series(s).iter().map(|r| format!("{:.3}", r.mean)).collect();
        println!("{:14} {}", s.name(), means.join("  "));
    }
    Ok(())
}
