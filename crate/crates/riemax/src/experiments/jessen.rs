//! Weak-type bound and disjoint selection for Riemann maximal functions
//! over chains of orders.

use rand::Rng;

use riemax_core::constructions::Relation;
use riemax_core::covering::{jessen_select, jessen_weak_type};
use riemax_core::exact::{rational_to_f64, Average, Fixed};
use riemax_core::torus::riemann_maximal;

use super::run_trials;
use crate::config::ExperimentConfig;
use crate::report::{ExperimentReport, TrialLog};
use crate::sample::{self, trial_rng, Stream};

pub const DEFAULT_L_MAX: u64 = 1024;
pub const DEFAULT_TRIALS: u64 = 1000;

pub fn run(config: &ExperimentConfig) -> anyhow::Result<ExperimentReport> {
    let l_max = config.l_max.unwrap_or(DEFAULT_L_MAX);
    let trials = config.trials.unwrap_or(DEFAULT_TRIALS);
    let seed = config.seed;
    let mut report = ExperimentReport::new("jessen");
    report.parameter("l_max", l_max);
    report.parameter("trials", trials);

    run_trials(&mut report, trials, 0, |trial| weak_type_trial(seed, l_max, trial))?;
    run_trials(&mut report, trials, 0, |trial| selection_trial(seed, l_max, trial))?;
    Ok(report)
}

/// A threshold that is often exactly a value of the maximal function, or
/// one unit of the fixed-point grid below it, where the level set jumps.
fn threshold(rng: &mut impl Rng, values: &[Average<Fixed>]) -> Average<Fixed> {
    let v = values[rng.gen_range(0..values.len())];
    if v.sum > Fixed::ZERO {
        match rng.gen_range(0..3) {
            0 => return v,
            1 if v.sum.raw() > 1 => return Average::new(Fixed::from_raw(v.sum.raw() - 1), v.count),
            _ => {}
        }
    }
    Average::of(Fixed::from_raw(sample::unit_fixed(rng).raw().max(1)))
}

fn weak_type_trial(seed: u64, l_max: u64, trial: u64) -> anyhow::Result<TrialLog> {
    let mut rng = trial_rng(seed, Stream::Jessen, trial);
    let l = rng.gen_range(1..=l_max);
    // The function may live on a coarser grid than the one the operator sees.
    let coarse = {
        let divisors = riemax_core::arith::factorize(l).divisors();
        divisors.as_slice()[rng.gen_range(0..divisors.len())]
    };
    let density = sample::density(&mut rng);
    let f = sample::step_function(&mut rng, coarse, density, 1)?;
    let chain = sample::chain(&mut rng, l);
    let maximal = riemann_maximal(&f, &chain, l)?;
    let lambda = threshold(&mut rng, maximal.values());
    let w = jessen_weak_type(&f, &chain, l, &lambda)?;

    let mut log = TrialLog::default();
    log.record(
        "Jes",
        "lambda |{R_D f > lambda}| <= ||f||_1",
        w.lhs.clone(),
        Relation::Le,
        w.rhs.clone(),
    );
    log.record_flag(
        "Jes",
        "level set is the disjoint union selected from the heavy Riemann sets",
        w.cover_consistent,
    );
    let case = format!("l={l} D={chain}");
    if let Some(ratio) = w.ratio() {
        let r = rational_to_f64(&ratio);
        log.observe_max("max_weak_type_ratio", r);
        log.row(case, "weak_type_ratio", r);
    }
    Ok(log)
}

fn selection_trial(seed: u64, l_max: u64, trial: u64) -> anyhow::Result<TrialLog> {
    let mut rng = trial_rng(seed, Stream::Selection, trial);
    let l = rng.gen_range(1..=l_max);
    let chain = sample::chain(&mut rng, l);
    let size = rng.gen_range(1..=64);
    let family = sample::riemann_family(&mut rng, l, &chain, size)?;
    let s = jessen_select(&family, &chain)?;

    let mut log = TrialLog::default();
    log.record_flag("Itil", "chosen Riemann sets are pairwise disjoint", s.pairwise_disjoint);
    log.record(
        "Itil",
        "union of chosen equals union of input",
        s.chosen_union.to_rational(),
        Relation::Eq,
        s.input_union.to_rational(),
    );
    log.record_flag("Itil", "unions agree atom by atom", s.unions_equal);
    log.row(format!("l={l} D={chain} n={size}"), "chosen", s.chosen.len());
    Ok(log)
}
