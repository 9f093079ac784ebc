//! Growth functions, Young's inequality and Orlicz norms.

use rand::Rng;

use riemax_core::constructions::Relation;
use riemax_core::orlicz::{
    inverse_growth_ratio, inverse_growth_ratio_normalized, log_grid, orlicz_norm, phi, phi_envelope, psi,
    GrowthFunction, QUADRATURE_TOL,
};
use riemax_core::torus::project_to_algebra;

use super::run_trials;
use crate::calibration::Calibration;
use crate::config::ExperimentConfig;
use crate::report::{ExperimentReport, TrialLog};
use crate::sample::{self, trial_rng, Stream};

pub const DEFAULT_TRIALS: u64 = 100;
/// Points per axis of the Young grid and its range.
pub const YOUNG_POINTS: usize = 100;
pub const YOUNG_RANGE: (f64, f64) = (0.1, 100.0);
/// Relative slack for Young's inequality, covering both quadratures.
pub const YOUNG_SLACK: f64 = 10.0 * QUADRATURE_TOL;
/// Upper end and resolution of the envelope grid.
pub const ENVELOPE_END: f64 = 1e6;
pub const ENVELOPE_POINTS: usize = 400;
/// First point of the envelope grid when no onset is calibrated; the
/// envelope needs `ln ln(x/2) > 0`.
pub const ENVELOPE_START: f64 = 6.0;
/// Band for the normalized inverse growth ratio, and where it is sampled:
/// `ln x` from `ln 1e12` to `RATIO_LN_END`.
pub const RATIO_BAND: (f64, f64) = (0.9, 1.1);
pub const RATIO_LN_START: f64 = 27.631_021_115_928_547;
pub const RATIO_LN_END: f64 = 1e30;
pub const RATIO_POINTS: usize = 60;
/// Relative tolerance of the norm identities.
pub const NORM_TOL: f64 = 1e-9;
/// Largest resolution of the random step functions.
pub const NORM_L_MAX: u64 = 48;

/// The growth functions whose norms are exercised.
pub const NORM_CLASSES: [GrowthFunction; 4] = [
    GrowthFunction::Phi,
    GrowthFunction::PhiLogLog,
    GrowthFunction::XLogPow(2),
    GrowthFunction::Power(2.0),
];

/// The envelope grid from `x0` (or the default start) to `ENVELOPE_END`.
pub fn envelope_grid(x0: Option<f64>) -> Vec<f64> {
    log_grid(x0.unwrap_or(ENVELOPE_START), ENVELOPE_END, ENVELOPE_POINTS)
}

pub fn run(config: &ExperimentConfig, calibration: Option<&Calibration>) -> anyhow::Result<ExperimentReport> {
    let trials = config.trials.unwrap_or(DEFAULT_TRIALS);
    let seed = config.seed;
    let x0 = calibration.and_then(|c| c.phi_gamma_x0);
    let mut report = ExperimentReport::new("orlicz");
    report.parameter("trials", trials);
    report.parameter("phi_gamma_x0", x0);

    young(&mut report)?;
    envelope(&mut report, x0)?;
    inverse_growth(&mut report);
    run_trials(&mut report, trials, 0, |trial| norm_trial(seed, trial))?;
    Ok(report)
}

fn young(report: &mut ExperimentReport) -> anyhow::Result<()> {
    let grid = log_grid(YOUNG_RANGE.0, YOUNG_RANGE.1, YOUNG_POINTS);
    let phis = grid.iter().map(|&u| phi(u)).collect::<Result<Vec<_>, _>>()?;
    let psis = grid.iter().map(|&v| psi(v)).collect::<Result<Vec<_>, _>>()?;
    for (u, pu) in grid.iter().zip(&phis) {
        for (v, pv) in grid.iter().zip(&psis) {
            report.record(
                "Hold",
                "u v <= (Phi(u) + Psi(v)) (1 + 1e-8)",
                u * v,
                Relation::Le,
                (pu + pv) * (1.0 + YOUNG_SLACK),
            );
        }
    }
    Ok(())
}

fn envelope(report: &mut ExperimentReport, x0: Option<f64>) -> anyhow::Result<()> {
    let grid = envelope_grid(x0);
    report.parameter("envelope_start", grid[0]);
    let mut first_upper_failure = None;
    for &x in &grid {
        let (lower, value, upper) = phi_envelope(x)?;
        report.record("Phi", "x ln(x/2) / (2 ln ln(x/2)) < Phi(x)", lower, Relation::Lt, value);
        if !report.record("Phi", "Phi(x) < x ln x / ln ln x", value, Relation::Lt, upper)
            && first_upper_failure.is_none()
        {
            first_upper_failure = Some(x);
        }
    }
    report.observe("envelope_first_upper_failure", first_upper_failure);
    Ok(())
}

fn inverse_growth(report: &mut ExperimentReport) {
    let grid = log_grid(RATIO_LN_START, RATIO_LN_END, RATIO_POINTS);
    for &ln_x in &grid {
        let normalized = inverse_growth_ratio_normalized(ln_x);
        report.record(
            "alp1",
            "alpha^{-1}(x) ln ln x / ln x >= 0.9",
            normalized,
            Relation::Ge,
            RATIO_BAND.0,
        );
        report.record(
            "alp1",
            "alpha^{-1}(x) ln ln x / ln x <= 1.1",
            normalized,
            Relation::Le,
            RATIO_BAND.1,
        );
        report.inform(
            "alp1",
            "alpha^{-1}(x) ln x / ln ln x <= 1.1",
            inverse_growth_ratio(ln_x),
            Relation::Le,
            RATIO_BAND.1,
        );
    }
    report.observe(
        "normalized_ratio_at_1e12",
        inverse_growth_ratio_normalized(RATIO_LN_START),
    );
    report.observe("literal_ratio_at_1e12", inverse_growth_ratio(RATIO_LN_START));
    // Where the normalized ratio first enters the band.
    let entry = grid
        .iter()
        .find(|&&ln_x| inverse_growth_ratio_normalized(ln_x) <= RATIO_BAND.1)
        .copied();
    report.observe("normalized_ratio_band_entry_ln_x", entry);
}

fn norm_trial(seed: u64, trial: u64) -> anyhow::Result<TrialLog> {
    let mut rng = trial_rng(seed, Stream::Orlicz, trial);
    let l = rng.gen_range(2..=NORM_L_MAX);
    let density = sample::density(&mut rng).max(0.25);
    let f = sample::step_function(&mut rng, l, density, 1)?;
    let values = f.to_f64_vec();
    let divisors = riemax_core::arith::factorize(l).divisors();
    let coarse = divisors.as_slice()[rng.gen_range(0..divisors.len())];
    let projected = project_to_algebra(&f, coarse)?.to_f64_vec();
    // An exactly representable scale keeps c f exact.
    let c = f64::from(rng.gen_range(1u32..=64)) / 8.0;
    let scaled: Vec<f64> = values.iter().map(|v| c * v).collect();

    let mut log = TrialLog::default();
    for g in NORM_CLASSES {
        let norm = orlicz_norm(&values, g)?;
        let scaled_norm = orlicz_norm(&scaled, g)?;
        let err = if norm == 0.0 {
            scaled_norm
        } else {
            (scaled_norm - c * norm).abs() / (c * norm)
        };
        log.record(
            "cep",
            &format!("| ||c f|| - c ||f|| | / (c ||f||) <= 1e-9, {g:?}"),
            err,
            Relation::Le,
            NORM_TOL,
        );
        log.observe_max("max_homogeneity_error", err);
        let projected_norm = orlicz_norm(&projected, g)?;
        log.record(
            "cep",
            &format!("||E f|| <= ||f|| (1 + 1e-9), {g:?}"),
            projected_norm,
            Relation::Le,
            norm * (1.0 + NORM_TOL),
        );
        log.row(format!("l={l} m={coarse} {g:?}"), "norm", norm);
    }
    Ok(log)
}
