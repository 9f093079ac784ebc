//! Private-axis sets, their circle pullbacks and weak sweeping-out ratios.

use rand::Rng;

use riemax_core::arith::{first_primes, lcm_all};
use riemax_core::constructions::{operator_conditions_check, rudin_sets, Relation};
use riemax_core::exact::{rational, rational_to_f64, Rational};
use riemax_core::torus::TorusSet;

use crate::config::ExperimentConfig;
use crate::report::ExperimentReport;
use crate::sample::{self, trial_rng, Stream};

pub const ORDER_COUNTS: [usize; 3] = [2, 3, 4];
/// Random functions and sets per order for the operator conditions.
pub const OPERATOR_SAMPLES: usize = 16;

pub fn deltas() -> Vec<Rational> {
    vec![rational(1, 4), rational(1, 2), rational(3, 4)]
}

/// Checks asserted for every `(k, delta)`; the remaining core checks are
/// reported only.
const ASSERTED: [&str; 8] = [
    "rectangle density inside cylinder",
    "maximal density on union",
    "union by inclusion-exclusion",
    "union versus k+1 copies",
    "product level set versus k+1 copies",
    "pullback measure",
    "pullback level set",
    "circle level set versus k+1 copies",
];

pub fn run(config: &ExperimentConfig) -> anyhow::Result<ExperimentReport> {
    let ks: Vec<usize> = config.k.map_or(ORDER_COUNTS.to_vec(), |k| vec![k]);
    let deltas: Vec<Rational> = config.delta.clone().map_or_else(deltas, |d| vec![d]);
    let mut report = ExperimentReport::new("rudin");
    report.parameter("k", &ks);
    report.parameter("delta", deltas.iter().map(|d| d.to_string()).collect::<Vec<_>>());

    for delta in &deltas {
        let mut previous: Option<Rational> = None;
        for &k in &ks {
            let s = rudin_sets(k, delta, config.budget)?;
            for c in &s.report.checks {
                let description = format!("{}, k = {k}, delta = {delta}", c.name);
                report.record_bound("TRud", &description, c, ASSERTED.contains(&c.name));
            }
            let case = format!("k={k} delta={delta}");
            report.row(0, case.clone(), "sweep_ratio", rational_to_f64(&s.sweep_ratio));
            report.observe(&format!("sweep_ratio_k{k}_delta{delta}"), s.sweep_ratio.to_string());
            report.observe(&format!("union_over_core_k{k}_delta{delta}"), {
                let c = s.report.small_set.to_rational();
                (s.report.large_set.to_rational() / c).to_string()
            });
            if let Some(prev) = previous {
                report.inform(
                    "TRud",
                    &format!("sweep ratio grows with k, delta = {delta}"),
                    s.sweep_ratio.clone(),
                    Relation::Gt,
                    prev,
                );
            }
            previous = Some(s.sweep_ratio);
        }
    }
    operator_conditions(&mut report, &ks, config.seed)?;
    Ok(report)
}

/// Positivity, `R_n 1 = 1` and the small-set condition for each order.
fn operator_conditions(report: &mut ExperimentReport, ks: &[usize], seed: u64) -> anyhow::Result<()> {
    let epsilons = [rational(1, 2), rational(1, 3), rational(1, 4), rational(1, 8)];
    for &k in ks {
        let orders = first_primes(k);
        let l = lcm_all(orders.iter().copied())?;
        let mut rng = trial_rng(seed, Stream::Operators, k as u64);
        let functions = (0..OPERATOR_SAMPLES)
            .map(|_| {
                let density = sample::density(&mut rng);
                sample::step_function(&mut rng, l, density, 1)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sets = (0..OPERATOR_SAMPLES)
            .map(|_| {
                let size = rng.gen_range(1..=(l as usize / 16).max(1));
                TorusSet::from_indices(l, sample::atom_subset(&mut rng, l, size))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for &n in &orders {
            let c = operator_conditions_check(n, l, &functions, &sets, &epsilons)?;
            let case = format!("n = {n}, l = {l}");
            report.record_flag(
                "abs",
                &format!("R_n maps nonnegative to nonnegative, {case}"),
                c.positive,
            );
            report.record_flag("abs", &format!("R_n 1 = 1, {case}"), c.fixes_one);
            report.record_flag(
                "abs",
                &format!("|E| < eps^2 implies |{{R_n 1_E > eps}}| < eps, {case}"),
                c.small_sets,
            );
            report.row(0, case, "small_set_cases", c.small_set_cases);
        }
    }
    Ok(())
}
