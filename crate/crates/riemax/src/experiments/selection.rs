//! Selection from random subfamilies of the tail/base rectangles.

use riemax_core::constructions::Relation;
use riemax_core::covering::{fd_select, SelectionReport};
use riemax_core::exact::Rational;
use riemax_core::product::{enumerate_f_d, ProductSpace};

use super::run_trials;
use crate::calibration::Calibration;
use crate::config::ExperimentConfig;
use crate::report::{ExperimentReport, TrialLog};
use crate::sample::{self, trial_rng, Stream};

pub const DEFAULT_TRIALS: u64 = 200;
pub const DIMENSIONS: [usize; 3] = [2, 3, 4];
/// The union of the input is at most this many times the chosen union.
pub const UNION_FACTOR: u64 = 5;

/// The trial index of trial `i` at dimension `d`, so that each dimension
/// has its own random streams.
pub fn trial_id(d: usize, i: u64) -> u64 {
    ((d as u64) << 32) | i
}

/// Draws a random subfamily for `trial` and runs the selection on it.
pub fn sample_selection(seed: u64, d: usize, trial: u64, budget: u64) -> anyhow::Result<SelectionReport> {
    let space = ProductSpace::primorial(d, budget)?;
    let family = enumerate_f_d(d, budget)?;
    let mut rng = trial_rng(seed, Stream::Covering, trial);
    let sub = sample::subfamily(&mut rng, &family);
    Ok(fd_select(&space, &sub)?)
}

pub fn run(config: &ExperimentConfig, calibration: Option<&Calibration>) -> anyhow::Result<ExperimentReport> {
    let trials = config.trials.unwrap_or(DEFAULT_TRIALS);
    let dims: Vec<usize> = config.d.map_or(DIMENSIONS.to_vec(), |d| vec![d]);
    let (seed, budget) = (config.seed, config.budget);
    let mut report = ExperimentReport::new("covering-fd");
    report.parameter("d", &dims);
    report.parameter("trials", trials);
    report.parameter("tlB_C", calibration.map(|c| c.tlb_c));
    let bound = calibration.map(|c| c.tlb_c);

    for &d in &dims {
        run_trials(&mut report, trials, trial_id(d, 0), |trial| {
            let s = sample_selection(seed, d, trial, budget)?;
            let mut log = TrialLog::default();
            let factor = Rational::from_integer(UNION_FACTOR.into());
            log.record(
                "L5",
                "|union of input| <= 5 |union of chosen|",
                s.input_union.to_rational(),
                Relation::Le,
                factor * s.chosen_union.to_rational(),
            );
            log.record_flag(
                "us",
                "chosen rectangles satisfy both selection rules",
                s.conditions_verified,
            );
            log.inform(
                "tlBB",
                "union of chosen equals union of input",
                s.chosen_union.to_rational(),
                Relation::Eq,
                s.input_union.to_rational(),
            );
            let case = format!("d={d}");
            if let Some(r) = s.union_ratio() {
                let r = riemax_core::exact::rational_to_f64(&r);
                log.observe_max("max_union_ratio", r);
                log.row(case.clone(), "union_ratio", r);
            }
            let psi = s.psi_overlap.unwrap_or(0.0);
            log.observe_max("max_psi_overlap", psi);
            log.row(case, "psi_overlap", psi);
            if let Some(c) = bound {
                log.record("tlB", "mean Psi(overlap / 3) <= tlB_C", psi, Relation::Le, c);
            }
            Ok(log)
        })?;
    }
    Ok(report)
}
