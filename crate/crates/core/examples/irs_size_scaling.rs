//! Rate at 40 dBm as the surface grows. With 256 elements the cascade is far
//! weaker than the direct hops; IRS-aware relay choice only pays off once the
//! array gain catches up.

use irs_relay_sim::{run_experiment, ExperimentKind, ExperimentSpec, SchemeId};

fn main() -> irs_relay_sim::Result<()> {
    let schemes = [SchemeId::QlJira, SchemeId::RandomSelection, SchemeId::FixedPhase, SchemeId::NoRelay];
    print!("{:>7}", "N");
    for s in schemes {
        print!("{:>10}", s.name());
    }
    println!();

    for n in [256, 1024, 4096, 16384] {
        let mut spec = ExperimentSpec::new(ExperimentKind::PowerSweep);
        spec.sweep_values = vec![40.0];
        spec.trials = 100;
        spec.schemes = schemes.to_vec();
        spec.ctx.params.num_irs_elements = n;
        let result = run_experiment(&spec)?;
        print!("{n:>7}");
        for s in schemes {
            print!("{:>10.3}", result.row(s, 40.0).unwrap().mean);
        }
        println!();
    }
    Ok(())
}
