use std::process::ExitCode;

use irs_relay_sim::config::parse_args;
use irs_relay_sim::output::write_csv;
use irs_relay_sim::{run_experiment, Error};

fn main() -> ExitCode {
    let cfg = match parse_args(std::env::args()) {
        Ok(cfg) => cfg,
        Err(Error::Usage(e)) => e.exit(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match run_experiment(&cfg.spec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    if let Err(e) = write_csv(&result, &cfg.out) {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    eprintln!(
        "wrote {} rows ({} experiment, {} trials) to {}",
        result.rows.len(),
        result.kind,
        cfg.spec.trials,
        cfg.out.display()
    );
    ExitCode::SUCCESS
}
