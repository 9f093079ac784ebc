//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every criterion reports even when an
//! earlier one fails; the process exits nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;

use riemax::config::{Experiment, ExperimentConfig};
use riemax::experiments::{isomorphism, orlicz};
use riemax::report::{without_timing, write_csv, ExperimentReport};
use riemax::{calibrate, run, Calibration};
use riemax_core::DEFAULT_ATOM_BUDGET;

/// Exact checks allow no slack at all: every comparison is between exact
/// rationals, so a single violation fails.
const EXACT_VIOLATIONS_ALLOWED: u64 = 0;
/// Relative slack for Young's inequality on the quadrature values.
const YOUNG_SLACK: f64 = 1e-8;
/// Relative tolerance of the Orlicz-norm identities.
const NORM_TOLERANCE: f64 = 1e-9;
/// Band required of the normalized inverse growth ratio.
const RATIO_BAND: (f64, f64) = (0.9, 1.1);
/// Upper end of the envelope range.
const ENVELOPE_END: f64 = 1e6;

/// Seed for the randomized criteria; distinct from the calibration corpus.
const SEED: u64 = 20_261_016;
/// Corpus size for the calibration determinism check.
const SMALL_CORPUS: u64 = 30;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn calibration_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("calibration.json")
}

fn config(experiment: Experiment, seed: u64) -> ExperimentConfig {
    ExperimentConfig::new(experiment, seed)
}

fn single(config: &ExperimentConfig, calibration: Option<&Calibration>) -> ExperimentReport {
    let mut reports = run(config, calibration).expect("experiment runs");
    assert_eq!(reports.len(), 1);
    reports.remove(0)
}

/// Every check whose anchor is in `anchors` passed with at least
/// `min_trials` trials and no violations.
fn anchored(report: &ExperimentReport, anchors: &[&str], min_trials: u64, filter: impl Fn(&str) -> bool) -> Outcome {
    let mut failures = Vec::new();
    let mut seen = 0;
    for c in report
        .checks
        .iter()
        .filter(|c| anchors.contains(&c.anchor.as_str()) && filter(&c.description))
    {
        seen += 1;
        if c.violations > EXACT_VIOLATIONS_ALLOWED || !c.pass || c.trials < min_trials {
            failures.push(format!(
                "[{}] {}: {} {} {} ({} of {} trials)",
                c.anchor,
                c.description,
                short(&c.lhs),
                c.relation,
                short(&c.rhs),
                c.violations,
                c.trials
            ));
        }
    }
    if seen == 0 {
        return Outcome {
            pass: false,
            detail: format!("no checks anchored at {anchors:?}"),
        };
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{seen} checks, at least {min_trials} trials each")
        } else {
            failures.join("; ")
        },
    }
}

/// Long exact values are cut for the one-line summary; the report keeps
/// them whole.
fn short(value: &str) -> String {
    const KEEP: usize = 32;
    if value.len() <= KEEP {
        value.to_string()
    } else {
        format!("{}... ({} chars)", &value[..KEEP], value.len())
    }
}

fn all(_: &str) -> bool {
    true
}

fn criterion_1() -> Outcome {
    let mut c = config(Experiment::Jessen, SEED);
    c.l_max = Some(1024);
    c.trials = Some(1000);
    let r = single(&c, None);
    anchored(&r, &["Jes"], 1000, |d| d.starts_with("lambda"))
}

fn criterion_2() -> Outcome {
    let mut c = config(Experiment::Distribution, SEED);
    c.l_max = Some(360);
    c.trials = Some(500);
    let r = single(&c, None);
    anchored(&r, &["T4enq"], 500, |d| d.starts_with("sorted values"))
}

fn criterion_3() -> Outcome {
    let mut c = config(Experiment::Isomorphism, SEED);
    c.l_max = Some(2520);
    let r = single(&c, None);
    let mut o = anchored(&r, &["L1", "GAm", "sbar"], 1, all);
    let ranges = isomorphism::REVERSAL_BASE_MAX >= 7 && isomorphism::REVERSAL_DIGITS_MAX >= 6;
    if !ranges {
        o.pass = false;
        o.detail.push_str("; reversal range below p <= 7, k <= 6");
    }
    o
}

fn criterion_4() -> Outcome {
    let mut c = config(Experiment::Jessen, SEED);
    c.trials = Some(500);
    let r = single(&c, None);
    anchored(&r, &["Itil"], 500, all)
}

fn criterion_5(calibration: &Calibration) -> Outcome {
    let mut c = config(Experiment::TailBaseSelection, calibration.corpus_seed);
    c.trials = Some(200);
    let r = single(&c, Some(calibration));
    let union = anchored(&r, &["L5"], 200, all);
    let overlap = anchored(&r, &["tlB"], 600, all);
    Outcome {
        pass: union.pass && overlap.pass,
        detail: format!("union ratio: {}; Psi overlap: {}", union.detail, overlap.detail),
    }
}

fn criterion_6() -> Outcome {
    let mut c = config(Experiment::IndependentOverlap, SEED);
    c.trials = Some(200);
    let r = single(&c, None);
    anchored(&r, &["L2"], 200, |d| !d.contains("floor"))
}

fn criterion_7() -> Outcome {
    let r = single(&config(Experiment::SliceExtremal, SEED), None);
    anchored(&r, &["1d2d", "|G|", "|C|", "Ml2d"], 1, all)
}

fn criterion_8() -> Outcome {
    let r = single(&config(Experiment::PrivateAxisSweep, SEED), None);
    anchored(&r, &["TRud"], 1, |d| {
        d.starts_with("union versus k+1 copies") || d.starts_with("circle level set versus k+1 copies")
    })
}

fn criterion_9(calibration: &Calibration) -> Outcome {
    assert_eq!(orlicz::YOUNG_SLACK, YOUNG_SLACK);
    assert_eq!(orlicz::NORM_TOL, NORM_TOLERANCE);
    assert_eq!(orlicz::RATIO_BAND, RATIO_BAND);
    assert_eq!(orlicz::ENVELOPE_END, ENVELOPE_END);
    assert_eq!(orlicz::YOUNG_POINTS, 100);
    let r = single(&config(Experiment::Orlicz, SEED), Some(calibration));
    // The reported-only literal ratio is excluded by `asserted`.
    let mut o = anchored(&r, &["Hold", "Phi", "cep"], 1, all);
    let band = r
        .checks
        .iter()
        .filter(|c| c.anchor == "alp1" && c.asserted)
        .all(|c| c.pass);
    if !band {
        o.pass = false;
        o.detail.push_str(&format!(
            "; [alp1] normalized ratio outside [0.9, 1.1] from x = 1e12 (value there {})",
            r.observed["normalized_ratio_at_1e12"]
        ));
    }
    o
}

fn criterion_10() -> Outcome {
    let mut small = config(Experiment::All, SEED);
    small.trials = Some(20);
    small.l_max = Some(360);
    small.d = Some(3);
    let mut details = Vec::new();
    let mut pass = true;
    let first = run(&small, None).expect("first run");
    let second = run(&small, None).expect("second run");
    let (a, b) = (without_timing(&first).unwrap(), without_timing(&second).unwrap());
    if a != b {
        pass = false;
        details.push("JSON reports differ".to_string());
    }
    let (mut csv_a, mut csv_b) = (Vec::new(), Vec::new());
    write_csv(&first, &mut csv_a).unwrap();
    write_csv(&second, &mut csv_b).unwrap();
    if csv_a != csv_b {
        pass = false;
        details.push("CSV exports differ".to_string());
    }
    let one = calibrate(SMALL_CORPUS, SEED, DEFAULT_ATOM_BUDGET)
        .unwrap()
        .to_json()
        .unwrap();
    let two = calibrate(SMALL_CORPUS, SEED, DEFAULT_ATOM_BUDGET)
        .unwrap()
        .to_json()
        .unwrap();
    if one != two {
        pass = false;
        details.push("calibration files differ".to_string());
    }
    Outcome {
        pass,
        detail: if pass {
            format!(
                "{} bytes of report, {} bytes of calibration reproduced",
                a.len(),
                one.len()
            )
        } else {
            details.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let calibration = Calibration::load(&calibration_path()).expect("calibration.json loads");
    let criteria: Vec<Criterion> = vec![
        ("1 weak type with constant 1", Box::new(criterion_1)),
        ("2 distribution equality", Box::new(criterion_2)),
        ("3 isomorphism suite", Box::new(criterion_3)),
        ("4 disjoint selection", Box::new(criterion_4)),
        ("5 tail/base selection", Box::new(|| criterion_5(&calibration))),
        ("6 independent overlap", Box::new(criterion_6)),
        ("7 slice construction", Box::new(criterion_7)),
        ("8 private-axis construction", Box::new(criterion_8)),
        ("9 Orlicz suite", Box::new(|| criterion_9(&calibration))),
        ("10 determinism", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let o = check();
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
