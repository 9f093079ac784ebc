//! The slice-block extremal sets over the first `2d` primes.

use riemax_core::constructions::extremal_slice_sets;

use crate::config::ExperimentConfig;
use crate::report::ExperimentReport;

pub const DIMENSIONS: [usize; 3] = [2, 3, 4];

/// The anchor of each named check of the slice construction.
pub fn anchor(check: &str) -> &'static str {
    match check {
        "block upper" | "block lower" => "1d2d",
        "intersection from independence" | "intersection upper" => "|C|",
        "maximal density on union" => "Ml2d",
        _ => "|G|",
    }
}

pub fn run(config: &ExperimentConfig) -> anyhow::Result<ExperimentReport> {
    let dims: Vec<usize> = config.d.map_or(DIMENSIONS.to_vec(), |d| vec![d]);
    let mut report = ExperimentReport::new("theorem3");
    report.parameter("d", &dims);
    for &d in &dims {
        let r = extremal_slice_sets(d, config.budget)?;
        for c in &r.checks {
            let description = format!("{}, d = {d}", c.name);
            report.record_bound(anchor(c.name), &description, c, true);
        }
        report.observe(&format!("d{d}_l"), r.l);
        report.observe(&format!("d{d}_G"), r.large_set.to_rational().to_string());
        report.observe(&format!("d{d}_C"), r.small_set.to_rational().to_string());
        report.observe(&format!("d{d}_min_maximal_on_G"), r.threshold_attained.to_string());
    }
    Ok(report)
}
