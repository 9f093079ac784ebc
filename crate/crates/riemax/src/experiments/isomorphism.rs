//! Exhaustive checks of the digit-reversal isomorphism for every
//! resolution up to `l_max`.

use riemax_core::isomap::{check_isomorphism, check_reversal};

use super::run_trials;
use crate::config::ExperimentConfig;
use crate::report::{ExperimentReport, TrialLog};

pub const DEFAULT_L_MAX: u64 = 2520;
/// Largest base and digit count for the exhaustive reversal checks.
pub const REVERSAL_BASE_MAX: u64 = 7;
pub const REVERSAL_DIGITS_MAX: u32 = 6;

pub fn run(config: &ExperimentConfig) -> anyhow::Result<ExperimentReport> {
    let l_max = config.l_max.unwrap_or(DEFAULT_L_MAX);
    let budget = config.budget;
    let mut report = ExperimentReport::new("isomorphism");
    report.parameter("l_max", l_max);
    report.parameter("reversal_base_max", REVERSAL_BASE_MAX);
    report.parameter("reversal_digits_max", REVERSAL_DIGITS_MAX);

    // Trial i checks resolution l = i + 1.
    run_trials(&mut report, l_max, 0, |i| {
        let l = i + 1;
        let c = check_isomorphism(l, budget)?;
        let mut log = TrialLog::default();
        log.record_flag(
            "L1",
            "reversal map is a bijection on atoms of equal measure",
            c.bijective,
        );
        log.record_flag(
            "L1",
            "each progression A_m(t) maps onto one rectangle B_m",
            c.progression_failures == 0,
        );
        log.record_flag(
            "GAm",
            "each Riemann set I_l(l/m, t) maps onto the rectangle B_m",
            c.riemann_failures == 0,
        );
        log.row(format!("l={l}"), "progressions", c.progressions);
        Ok(log)
    })?;

    let r = check_reversal(REVERSAL_BASE_MAX, REVERSAL_DIGITS_MAX)?;
    report.record_flag(
        "sbar",
        "digit reversal is an involution on [0, p^j)",
        r.involution_failures == 0,
    );
    report.record_flag(
        "sbar",
        "reversal splits over low and high digit blocks",
        r.split_failures == 0,
    );
    report.observe("reversal_cases", r.cases);
    report.observe("split_cases", r.split_cases);
    Ok(report)
}
