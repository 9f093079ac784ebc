use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use riemax::config::{CalibrateArgs, Cli, Command, ExperimentConfig, Format};
use riemax::report::{write_csv, write_json};
use riemax::{calibrate, run, Calibration};
use riemax_core::DEFAULT_ATOM_BUDGET;

/// Exit status when an asserted check fails.
const ASSERTION_FAILED: u8 = 1;
/// Exit status for configuration, budget and I/O errors.
const ERROR: u8 = 2;

fn output(path: Option<&std::path::Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_experiments(config: &ExperimentConfig) -> anyhow::Result<bool> {
    let calibration = config.calibration.as_deref().map(Calibration::load).transpose()?;
    let reports = run(config, calibration.as_ref())?;
    let mut out = output(config.out.as_deref())?;
    match config.format {
        Format::Json => write_json(&reports, &mut out)?,
        Format::Csv => write_csv(&reports, &mut out)?,
    }
    out.flush()?;
    for r in &reports {
        for c in r.checks.iter().filter(|c| c.asserted && !c.pass) {
            eprintln!(
                "FAIL {} [{}] {}: {} {} {} ({} of {} trials)",
                r.experiment, c.anchor, c.description, c.lhs, c.relation, c.rhs, c.violations, c.trials
            );
        }
    }
    Ok(reports.iter().all(|r| r.passed))
}

fn run_calibration(args: &CalibrateArgs) -> anyhow::Result<()> {
    let c = calibrate(args.corpus_size, args.seed, DEFAULT_ATOM_BUDGET)?;
    let mut out = output(args.out.as_deref())?;
    out.write_all(c.to_json()?.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Some(Command::Calibrate(args)) => run_calibration(args).map(|()| true),
        None => ExperimentConfig::from_args(&cli.run).and_then(|c| run_experiments(&c)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(ASSERTION_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}
