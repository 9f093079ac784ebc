//! The experiment suites behind `--experiment`.

use std::time::Instant;

use rayon::prelude::*;

use crate::calibration::Calibration;
use crate::config::{Experiment, ExperimentConfig};
use crate::report::{ExperimentReport, TrialLog};

pub mod distribution;
pub mod extremal;
pub mod isomorphism;
pub mod jessen;
pub mod orlicz;
pub mod overlap;
pub mod selection;
pub mod sweep;
pub mod weak_type;

/// Runs the configured experiment (every experiment for `all`), one report
/// each.
pub fn run(config: &ExperimentConfig, calibration: Option<&Calibration>) -> anyhow::Result<Vec<ExperimentReport>> {
    let selected: Vec<Experiment> = match config.experiment {
        Experiment::All => Experiment::EACH.to_vec(),
        e => vec![e],
    };
    selected
        .into_iter()
        .map(|e| {
            let start = Instant::now();
            let mut report = run_one(e, config, calibration)?;
            report.parameter("seed", config.seed);
            report.parameter("budget", config.budget);
            report.wall_time_s = start.elapsed().as_secs_f64();
            Ok(report)
        })
        .collect()
}

fn run_one(
    experiment: Experiment,
    config: &ExperimentConfig,
    calibration: Option<&Calibration>,
) -> anyhow::Result<ExperimentReport> {
    match experiment {
        Experiment::Jessen => jessen::run(config),
        Experiment::Distribution => distribution::run(config),
        Experiment::Isomorphism => isomorphism::run(config),
        Experiment::TailBaseSelection => selection::run(config, calibration),
        Experiment::IndependentOverlap => overlap::run(config, calibration),
        Experiment::RectangleWeakType => weak_type::run(config, calibration),
        Experiment::Orlicz => orlicz::run(config, calibration),
        Experiment::SliceExtremal => extremal::run(config),
        Experiment::PrivateAxisSweep => sweep::run(config),
        Experiment::All => unreachable!("expanded by the caller"),
    }
}

/// Runs `trial` for every index in parallel and folds the logs into
/// `report` in index order.
pub(crate) fn run_trials<F>(report: &mut ExperimentReport, trials: u64, offset: u64, trial: F) -> anyhow::Result<()>
where
    F: Fn(u64) -> anyhow::Result<TrialLog> + Sync,
{
    let logs = (0..trials)
        .into_par_iter()
        .map(|i| trial(offset + i))
        .collect::<anyhow::Result<Vec<_>>>()?;
    for (i, log) in logs.into_iter().enumerate() {
        report.absorb(offset + i as u64, log);
    }
    Ok(())
}
