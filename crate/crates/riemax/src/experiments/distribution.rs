//! Riemann maximal functions on the circle against rectangle maximal
//! functions of their digit-reversal pushforwards.

use rand::Rng;

use riemax_core::arith::factorize;
use riemax_core::constructions::Relation;
use riemax_core::exact::Measure;
use riemax_core::isomap::{verify_distribution_equality, Tau};
use riemax_core::product::ProductSpace;

use super::run_trials;
use crate::config::ExperimentConfig;
use crate::report::{ExperimentReport, TrialLog};
use crate::sample::{self, trial_rng, Stream};

pub const DEFAULT_L_MAX: u64 = 360;
pub const DEFAULT_TRIALS: u64 = 500;

pub fn run(config: &ExperimentConfig) -> anyhow::Result<ExperimentReport> {
    let l_max = config.l_max.unwrap_or(DEFAULT_L_MAX);
    if l_max < 6 {
        anyhow::bail!("theorem4 needs --l-max of at least 6 (two distinct primes)");
    }
    let trials = config.trials.unwrap_or(DEFAULT_TRIALS);
    let (seed, budget) = (config.seed, config.budget);
    let mut report = ExperimentReport::new("theorem4");
    report.parameter("l_max", l_max);
    report.parameter("trials", trials);
    run_trials(&mut report, trials, 0, |trial| {
        let mut rng = trial_rng(seed, Stream::Distribution, trial);
        let l = sample::composite_resolution(&mut rng, l_max);
        let divisors = factorize(l).divisors();
        let coarse = divisors.as_slice()[rng.gen_range(0..divisors.len())];
        let density = sample::density(&mut rng);
        let f = sample::step_function(&mut rng, coarse, density, 1)?;
        let orders = sample::divisor_subset(&mut rng, l);
        let space = ProductSpace::new(l, budget)?;
        let tau = Tau::new(&space)?;
        let c = verify_distribution_equality(&f, &orders, &tau)?;

        let mut log = TrialLog::default();
        log.record_flag(
            "T4enq",
            "sorted values of R_D f and M_{l/D} g coincide",
            c.same_multiset,
        );
        log.record_flag(
            "T4/cor",
            "R_D f equals M_{l/D} g composed with the reversal map",
            c.pointwise,
        );
        // One distribution value at a threshold taken from the data.
        let threshold = c.torus.get(rng.gen_range(0..c.torus.len()));
        let torus: Measure = c.torus.distribution(&threshold);
        let product: Measure = c.product.distribution(&threshold);
        log.record(
            "T4enq",
            "|{R_D f > y}| = |{M_{l/D} g > y}|",
            torus.to_rational(),
            Relation::Eq,
            product.to_rational(),
        );
        log.row(format!("l={l} D={orders}"), "same_multiset", c.same_multiset);
        Ok(log)
    })?;
    Ok(report)
}
