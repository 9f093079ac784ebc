//! Command-line configuration.

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde::Serialize;

use riemax_core::exact::{rational, Rational};
use riemax_core::DEFAULT_ATOM_BUDGET;

#[derive(Parser, Debug)]
#[command(
    name = "riemax",
    version,
    about = "Exact finite-level checks for Riemann-sum and rectangle maximal functions",
    args_conflicts_with_subcommands = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Freeze the empirical constants over a seeded random corpus.
    Calibrate(CalibrateArgs),
}

#[derive(Args, Clone, Debug)]
pub struct CalibrateArgs {
    /// Total number of random instances, split across the calibrated suites.
    #[arg(long, default_value_t = 10_000)]
    pub corpus_size: u64,
    /// Seed of the corpus; runs with this seed replay the corpus instances.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// The experiment names accepted by `--experiment`.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Experiment {
    /// Weak-type bound and disjoint selection for chains of orders.
    #[value(name = "jessen")]
    Jessen,
    /// Riemann maximal versus rectangle maximal distributions.
    #[value(name = "theorem4")]
    Distribution,
    /// Exhaustive digit-reversal isomorphism checks.
    #[value(name = "isomorphism")]
    Isomorphism,
    /// Tail/base rectangle selection.
    #[value(name = "covering-fd")]
    TailBaseSelection,
    /// Overlap of independent sets.
    #[value(name = "lemma2")]
    IndependentOverlap,
    /// Weak-type ratio of the rectangle maximal operator over `E_d`.
    #[value(name = "lemma6")]
    RectangleWeakType,
    /// Growth functions, Young's inequality and Orlicz norms.
    #[value(name = "orlicz")]
    Orlicz,
    /// Slice-block extremal sets.
    #[value(name = "theorem3")]
    SliceExtremal,
    /// Private-axis sets and weak sweeping-out ratios.
    #[value(name = "rudin")]
    PrivateAxisSweep,
    #[value(name = "all")]
    All,
}

impl Experiment {
    pub const EACH: [Experiment; 9] = [
        Experiment::Jessen,
        Experiment::Distribution,
        Experiment::Isomorphism,
        Experiment::TailBaseSelection,
        Experiment::IndependentOverlap,
        Experiment::RectangleWeakType,
        Experiment::Orlicz,
        Experiment::SliceExtremal,
        Experiment::PrivateAxisSweep,
    ];

    /// The command-line name of the experiment.
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Jessen => "jessen",
            Experiment::Distribution => "theorem4",
            Experiment::Isomorphism => "isomorphism",
            Experiment::TailBaseSelection => "covering-fd",
            Experiment::IndependentOverlap => "lemma2",
            Experiment::RectangleWeakType => "lemma6",
            Experiment::Orlicz => "orlicz",
            Experiment::SliceExtremal => "theorem3",
            Experiment::PrivateAxisSweep => "rudin",
            Experiment::All => "all",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Debug)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub experiment: Experiment,
    /// Largest resolution `l` drawn (or enumerated).
    #[arg(long)]
    pub l_max: Option<u64>,
    /// Dimension parameter `d`.
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of orders `k` in the sweeping-out construction.
    #[arg(long)]
    pub k: Option<usize>,
    /// Threshold `delta`, as `a/b` or a terminating decimal.
    #[arg(long)]
    pub delta: Option<String>,
    /// Number of random trials, per dimension where several are swept.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Seed of the per-trial random streams.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of atoms any single space may have.
    #[arg(long, default_value_t = DEFAULT_ATOM_BUDGET)]
    pub budget: u64,
    /// Output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Calibration file with the frozen empirical constants.
    #[arg(long)]
    pub calibration: Option<PathBuf>,
}

/// A validated configuration for one run.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub l_max: Option<u64>,
    pub d: Option<usize>,
    pub k: Option<usize>,
    pub delta: Option<Rational>,
    pub trials: Option<u64>,
    pub seed: u64,
    pub budget: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub calibration: Option<PathBuf>,
}

impl ExperimentConfig {
    /// A configuration with every size left at its experiment default.
    pub fn new(experiment: Experiment, seed: u64) -> Self {
        ExperimentConfig {
            experiment,
            l_max: None,
            d: None,
            k: None,
            delta: None,
            trials: None,
            seed,
            budget: DEFAULT_ATOM_BUDGET,
            out: None,
            format: Format::Json,
            calibration: None,
        }
    }

    pub fn from_args(args: &RunArgs) -> anyhow::Result<Self> {
        let delta = args
            .delta
            .as_deref()
            .map(parse_rational)
            .transpose()
            .context("invalid --delta")?;
        let config = ExperimentConfig {
            experiment: args.experiment,
            l_max: args.l_max,
            d: args.d,
            k: args.k,
            delta,
            trials: args.trials,
            seed: args.seed,
            budget: args.budget,
            out: args.out.clone(),
            format: args.format,
            calibration: args.calibration.clone(),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.budget == 0 {
            bail!("--budget must be positive");
        }
        if let Some(l) = self.l_max {
            if l < 1 {
                bail!("--l-max must be at least 1");
            }
            if l > self.budget {
                bail!("--l-max {l} exceeds the atom budget {}", self.budget);
            }
        }
        if let Some(d) = self.d {
            if d < 2 {
                bail!("--d must be at least 2");
            }
        }
        if let Some(k) = self.k {
            if k < 2 {
                bail!("--k must be at least 2");
            }
        }
        if let Some(delta) = &self.delta {
            if *delta <= Rational::zero() || *delta >= Rational::one() {
                bail!("--delta must lie strictly between 0 and 1");
            }
        }
        if self.trials == Some(0) {
            bail!("--trials must be positive");
        }
        Ok(())
    }
}

/// Parses `a/b`, an integer, or a terminating decimal into an exact rational.
pub fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().context("numerator")?;
        let d: i128 = d.trim().parse().context("denominator")?;
        if d == 0 {
            bail!("zero denominator");
        }
        return Ok(rational(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 30 || !frac.chars().all(|c| c.is_ascii_digit()) {
        bail!("not a terminating decimal: {s}");
    }
    let scale = 10i128.pow(frac.len() as u32);
    let negative = int.starts_with('-');
    let whole: i128 = if int.is_empty() || int == "-" {
        0
    } else {
        int.parse().context("integer part")?
    };
    let part: i128 = if frac.is_empty() {
        0
    } else {
        frac.parse().context("fraction part")?
    };
    let num = whole.abs() * scale + part;
    Ok(rational(if negative { -num } else { num }, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("0.75").unwrap(), rational(3, 4));
        assert_eq!(parse_rational("3").unwrap(), rational(3, 1));
        assert_eq!(parse_rational(".25").unwrap(), rational(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn experiment_names_round_trip() {
        for e in Experiment::EACH.into_iter().chain([Experiment::All]) {
            assert_eq!(Experiment::from_str(e.name(), false).unwrap(), e);
            assert_eq!(e.to_possible_value().unwrap().get_name(), e.name());
        }
        assert_eq!(Experiment::TailBaseSelection.name(), "covering-fd");
    }

    #[test]
    fn validation_rejects_bad_sizes() {
        let mut c = ExperimentConfig::new(Experiment::Jessen, 1);
        assert!(c.validate().is_ok());
        c.l_max = Some(c.budget + 1);
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::new(Experiment::Jessen, 1);
        c.trials = Some(0);
        assert!(c.validate().is_err());
    }
}
