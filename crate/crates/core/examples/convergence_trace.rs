//! Greedy-policy rate of QL-JIRA as Q-learning training proceeds, at 30 dBm.

use irs_relay_sim::{run_experiment, ExperimentKind, ExperimentSpec, SchemeId};

fn main() -> irs_relay_sim::Result<()> {
    let mut spec = ExperimentSpec::new(ExperimentKind::ConvergenceTrace);
    spec.trials = 100;
    let result = run_experiment(&spec)?;

    for row in result.series(SchemeId::QlJira).iter().step_by(10) {
        println!("episode {:6.0}: {:.4} bps/Hz", row.sweep_value, row.mean);
    }
    Ok(())
}
