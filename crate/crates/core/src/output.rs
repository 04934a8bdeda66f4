//! CSV serialization of aggregate results.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::AggregateResult;

pub const CSV_HEADER: &str = "experiment,scheme,sweep_param,sweep_value,trials,mean_rate_bps_hz,std_rate_bps_hz,seed";

/// Renders `result` as CSV: the fixed header, then one row per
/// (scheme, sweep value) in sorted order, floats with six decimals.
pub fn to_csv(result: &AggregateResult) -> String {
    let mut rows: Vec<_> = result.rows.iter().collect();
    rows.sort_by(|a, b| a.scheme.cmp(&b.scheme).then(a.sweep_value.total_cmp(&b.sweep_value)));
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.6},{},{:.6},{:.6},{}",
            result.kind.name(),
            r.scheme.name(),
            result.kind.sweep_param(),
            r.sweep_value,
            r.trials,
            r.mean,
            r.std,
            result.master_seed
        );
    }
    out
}

pub fn write_csv(result: &AggregateResult, path: &Path) -> Result<()> {
    fs::write(path, to_csv(result)).map_err(|source| Error::Io { path: path.display().to_string(), source })
}
