//! Weak-type ratio of the rectangle maximal operator over `E_d`.

use rand::Rng;

use riemax_core::arith::enumerate_e_d;
use riemax_core::constructions::Relation;
use riemax_core::covering::{rectangle_weak_type, RectangleWeakType};
use riemax_core::exact::{Fixed, Rational};
use riemax_core::product::{enumerate_f_d, product_maximal, FRect, ProductSpace, ProductStepFunction};

use super::run_trials;
use super::selection::{trial_id, DIMENSIONS, UNION_FACTOR};
use crate::calibration::Calibration;
use crate::config::ExperimentConfig;
use crate::report::{ExperimentReport, TrialLog};
use crate::sample::{self, trial_rng, Stream};

pub const DEFAULT_TRIALS: u64 = 200;
/// Function values are scaled by `2^s` with `s` drawn from `0..=MAX_SCALE_LOG2`.
pub const MAX_SCALE_LOG2: u32 = 12;

/// The space and the tail/base family at dimension `d`.
pub struct Setting {
    pub space: ProductSpace,
    pub family: Vec<FRect>,
}

impl Setting {
    pub fn new(d: usize, budget: u64) -> anyhow::Result<Self> {
        Ok(Setting {
            space: ProductSpace::primorial(d, budget)?,
            family: enumerate_f_d(d, budget)?,
        })
    }
}

/// A random function and a threshold at or just below one of the values
/// of its maximal function, with the resulting weak-type data.
pub fn sample_weak_type(setting: &Setting, seed: u64, trial: u64) -> anyhow::Result<RectangleWeakType> {
    let space = &setting.space;
    let mut rng = trial_rng(seed, Stream::WeakType, trial);
    let scale = 1u64 << rng.gen_range(0..=MAX_SCALE_LOG2);
    let g = sample::product_function(&mut rng, space, scale)?;
    let maximal = product_maximal(space, &g, &enumerate_e_d(space.dim())?)?;
    let v = maximal.get(rng.gen_range(0..maximal.len()));
    // The level set is strict, so the threshold sits just below a value of
    // the maximal function; one fixed-point unit below its average.
    let below = (v.sum.raw() - 1).div_euclid(v.count as i128);
    let lambda = if below > 0 {
        Fixed::from_raw(below)
    } else {
        Fixed::from_raw(sample::unit_fixed(&mut rng).raw().max(1))
    };
    Ok(rectangle_weak_type(space, &setting.family, &g, lambda)?)
}

/// The ratio at a constant function `c` with threshold just below `c`.
pub fn constant_ratio(setting: &Setting, c: Fixed) -> anyhow::Result<f64> {
    let g = ProductStepFunction::constant(&setting.space, c);
    let lambda = Fixed::from_raw(c.raw() - 1);
    Ok(rectangle_weak_type(&setting.space, &setting.family, &g, lambda)?.ratio)
}

pub fn run(config: &ExperimentConfig, calibration: Option<&Calibration>) -> anyhow::Result<ExperimentReport> {
    let trials = config.trials.unwrap_or(DEFAULT_TRIALS);
    let dims: Vec<usize> = config.d.map_or(DIMENSIONS.to_vec(), |d| vec![d]);
    let (seed, budget) = (config.seed, config.budget);
    let bound = calibration.map(|c| c.lem6_c);
    let mut report = ExperimentReport::new("lemma6");
    report.parameter("d", &dims);
    report.parameter("trials", trials);
    report.parameter("lem6_C", bound);

    for &d in &dims {
        let setting = Setting::new(d, budget)?;
        run_trials(&mut report, trials, trial_id(d, 0), |trial| {
            let w = sample_weak_type(&setting, seed, trial)?;
            let mut log = TrialLog::default();
            let s = &w.selection;
            let factor = Rational::from_integer(UNION_FACTOR.into());
            log.record(
                "L5",
                "|level set| <= 5 |union of selected heavy rectangles|",
                s.input_union.to_rational(),
                Relation::Le,
                factor * s.chosen_union.to_rational(),
            );
            let case = format!("d={d}");
            log.observe_max("max_weak_type_ratio", w.ratio);
            log.row(case, "weak_type_ratio", w.ratio);
            if let Some(c) = bound {
                log.record(
                    "lem6",
                    "|{M_E g > lambda}| lambda / (1 + mean Phi(|g|)) <= lem6_C",
                    w.ratio,
                    Relation::Le,
                    c,
                );
            }
            Ok(log)
        })?;
        let constant = constant_ratio(&setting, Fixed::from_int(1))?;
        report.observe(&format!("constant_function_ratio_d{d}"), constant);
    }
    Ok(report)
}
