//! Overlap of independent slice families with total mass at most 1/2.

use riemax_core::constructions::Relation;
use riemax_core::covering::{independent_overlap_check, OverlapReport, TailStart};
use riemax_core::exact::{rational, Rational};
use riemax_core::product::ProductSpace;

use super::run_trials;
use crate::calibration::Calibration;
use crate::config::ExperimentConfig;
use crate::report::{ExperimentReport, TrialLog};
use crate::sample::{self, trial_rng, Stream};

pub const DEFAULT_TRIALS: u64 = 200;
/// The space is built over this many leading primes unless `--d` is given.
pub const DEFAULT_PRIMES: usize = 7;

/// The thresholds at which the overlap distribution is bounded.
pub fn thresholds() -> Vec<Rational> {
    vec![rational(7, 2), rational(4, 1), rational(6, 1), rational(10, 1)]
}

/// Both tail variants for one random family.
pub struct OverlapSample {
    pub ceil: OverlapReport,
    pub floor: OverlapReport,
    pub sets: usize,
}

pub fn sample_overlap(space: &ProductSpace, seed: u64, trial: u64) -> anyhow::Result<OverlapSample> {
    let mut rng = trial_rng(seed, Stream::Overlap, trial);
    let (a, sets) = sample::overlap_family(&mut rng, space)?;
    let lambdas = thresholds();
    let ceil = independent_overlap_check(space, &a, &sets, &lambdas, TailStart::Ceil)?;
    let floor = independent_overlap_check(space, &a, &sets, &lambdas, TailStart::Floor)?;
    Ok(OverlapSample {
        ceil,
        floor,
        sets: sets.len(),
    })
}

fn tail_entry(log: &mut TrialLog, report: &OverlapReport, label: &str, asserted: bool) {
    for t in &report.tails {
        let description = format!("m({}) <= |A| sum_{{k >= {label}}} s^k / k!", t.lambda);
        // The bound is decided with rigorous brackets of the series: the
        // lower bracket when it holds, the upper bracket when it fails.
        let rhs = if t.holds {
            t.bound_lower.clone()
        } else {
            t.bound_upper.clone()
        };
        if asserted {
            log.record("L2", &description, t.level.to_rational(), Relation::Le, rhs);
        } else {
            log.inform("L2", &description, t.level.to_rational(), Relation::Le, rhs);
        }
    }
}

pub fn run(config: &ExperimentConfig, calibration: Option<&Calibration>) -> anyhow::Result<ExperimentReport> {
    let trials = config.trials.unwrap_or(DEFAULT_TRIALS);
    let primes = config.d.unwrap_or(DEFAULT_PRIMES);
    let space = ProductSpace::primorial(primes, config.budget)?;
    let seed = config.seed;
    let bound = calibration.map(|c| c.lemma2_c);
    let mut report = ExperimentReport::new("lemma2");
    report.parameter("primes", primes);
    report.parameter("l", space.size());
    report.parameter("trials", trials);
    report.parameter(
        "lambdas",
        thresholds().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
    );
    report.parameter("lemma2_C", bound);

    run_trials(&mut report, trials, 0, |trial| {
        let s = sample_overlap(&space, seed, trial)?;
        let mut log = TrialLog::default();
        log.record(
            "L2",
            "|A ∩ union A_k| >= (1/2) |A| sum |A_k|",
            s.ceil.intersection.to_rational(),
            Relation::Ge,
            s.ceil.intersection_lower.clone(),
        );
        tail_entry(&mut log, &s.ceil, "ceil(lambda)", true);
        tail_entry(&mut log, &s.floor, "floor(lambda)", false);
        let case = format!("sets={}", s.sets);
        if let Some(r) = s.ceil.psi_ratio {
            log.observe_max("max_psi_ratio", r);
            log.row(case, "psi_ratio", r);
            if let Some(c) = bound {
                log.record(
                    "intAPsi",
                    "mean over E of Psi((1 + overlap) / 3) <= lemma2_C",
                    r,
                    Relation::Le,
                    c,
                );
            }
        }
        Ok(log)
    })?;
    Ok(report)
}
