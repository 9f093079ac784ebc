//! Experiment reports: aggregated checks, observed constants and per-trial
//! rows.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use riemax_core::constructions::{BoundCheck, Relation};
use riemax_core::exact::{rational_to_f64, Rational};

/// One side of a compared inequality.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(Rational),
    Float(f64),
}

impl Number {
    /// Exact values print as `n/d` (or `n`); floats in shortest round-trip
    /// form.
    pub fn render(&self) -> String {
        match self {
            Number::Exact(q) => q.to_string(),
            Number::Float(x) => format!("{x:?}"),
        }
    }

    fn as_f64(&self) -> f64 {
        match self {
            Number::Exact(q) => rational_to_f64(q),
            Number::Float(x) => *x,
        }
    }

    fn minus(&self, other: &Number) -> Number {
        match (self, other) {
            (Number::Exact(a), Number::Exact(b)) => Number::Exact(a - b),
            _ => Number::Float(self.as_f64() - other.as_f64()),
        }
    }

    fn exceeds(&self, other: &Number) -> bool {
        match (self, other) {
            (Number::Exact(a), Number::Exact(b)) => a > b,
            _ => self.as_f64() > other.as_f64(),
        }
    }

    fn negate(self) -> Number {
        match self {
            Number::Exact(q) => Number::Exact(-q),
            Number::Float(x) => Number::Float(-x),
        }
    }
}

impl From<Rational> for Number {
    fn from(q: Rational) -> Self {
        Number::Exact(q)
    }
}

impl From<f64> for Number {
    fn from(x: f64) -> Self {
        Number::Float(x)
    }
}

fn holds(lhs: &Number, relation: Relation, rhs: &Number) -> bool {
    match (lhs, rhs) {
        (Number::Exact(a), Number::Exact(b)) => relation.test(a, b),
        _ => {
            let (a, b) = (lhs.as_f64(), rhs.as_f64());
            match relation {
                Relation::Lt => a < b,
                Relation::Le => a <= b,
                Relation::Eq => a == b,
                Relation::Ge => a >= b,
                Relation::Gt => a > b,
            }
        }
    }
}

/// How far `lhs relation rhs` is from failing: larger is closer to (or
/// further into) a violation.
fn pressure(lhs: &Number, relation: Relation, rhs: &Number) -> Number {
    match relation {
        Relation::Lt | Relation::Le => lhs.minus(rhs),
        Relation::Gt | Relation::Ge => rhs.minus(lhs),
        Relation::Eq => {
            let d = lhs.minus(rhs);
            let neg = d.clone().negate();
            if d.exceeds(&neg) {
                d
            } else {
                neg
            }
        }
    }
}

/// A check aggregated over trials. The sides shown are those of the trial
/// closest to (or furthest into) violation.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub anchor: String,
    pub description: String,
    pub lhs: String,
    pub rhs: String,
    pub relation: String,
    pub pass: bool,
    /// Failing checks only fail the run when asserted.
    pub asserted: bool,
    pub trials: u64,
    pub violations: u64,
    #[serde(skip)]
    worst: Option<(Number, Number, Number)>,
}

/// The outcome of one experiment.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub observed: BTreeMap<String, Value>,
    pub passed: bool,
    pub wall_time_s: f64,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
}

/// One per-trial observation for the flat CSV export.
#[derive(Clone, Debug, Serialize)]
pub struct TrialRow {
    pub experiment: String,
    pub trial: u64,
    pub case: String,
    pub metric: String,
    pub value: String,
}

impl ExperimentReport {
    pub fn new(experiment: &str) -> Self {
        ExperimentReport {
            experiment: experiment.to_string(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            observed: BTreeMap::new(),
            passed: true,
            wall_time_s: 0.0,
            rows: Vec::new(),
        }
    }

    pub fn parameter(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("parameter serializes"),
        );
    }

    pub fn observe(&mut self, key: &str, value: impl Serialize) {
        self.observed.insert(
            key.to_string(),
            serde_json::to_value(value).expect("observation serializes"),
        );
    }

    /// Keeps the largest value seen under `key`.
    pub fn observe_max(&mut self, key: &str, value: f64) {
        let current = self.observed.get(key).and_then(Value::as_f64);
        if current.map_or(true, |c| value > c) {
            self.observe(key, value);
        }
    }

    /// Records one trial of the asserted check `anchor`/`description`.
    pub fn record(
        &mut self,
        anchor: &str,
        description: &str,
        lhs: impl Into<Number>,
        relation: Relation,
        rhs: impl Into<Number>,
    ) -> bool {
        self.record_with(anchor, description, lhs.into(), relation, rhs.into(), true)
    }

    /// Records one trial of a check that is reported but not asserted.
    pub fn inform(
        &mut self,
        anchor: &str,
        description: &str,
        lhs: impl Into<Number>,
        relation: Relation,
        rhs: impl Into<Number>,
    ) -> bool {
        self.record_with(anchor, description, lhs.into(), relation, rhs.into(), false)
    }

    /// Records a check computed by the core library under `description`.
    pub fn record_bound(&mut self, anchor: &str, description: &str, check: &BoundCheck, asserted: bool) -> bool {
        self.record_with(
            anchor,
            description,
            Number::Exact(check.lhs.clone()),
            check.relation,
            Number::Exact(check.rhs.clone()),
            asserted,
        )
    }

    /// Records a boolean property as `1 == 1`.
    pub fn record_flag(&mut self, anchor: &str, description: &str, ok: bool) -> bool {
        let one = Rational::from_integer(1.into());
        let value = Rational::from_integer((ok as i64).into());
        self.record(anchor, description, value, Relation::Eq, one)
    }

    fn record_with(
        &mut self,
        anchor: &str,
        description: &str,
        lhs: Number,
        relation: Relation,
        rhs: Number,
        asserted: bool,
    ) -> bool {
        let ok = holds(&lhs, relation, &rhs);
        let idx = match self
            .checks
            .iter()
            .position(|c| c.anchor == anchor && c.description == description)
        {
            Some(i) => i,
            None => {
                self.checks.push(Check {
                    anchor: anchor.to_string(),
                    description: description.to_string(),
                    lhs: String::new(),
                    rhs: String::new(),
                    relation: relation.symbol().to_string(),
                    pass: true,
                    asserted,
                    trials: 0,
                    violations: 0,
                    worst: None,
                });
                self.checks.len() - 1
            }
        };
        let check = &mut self.checks[idx];
        check.trials += 1;
        if !ok {
            check.violations += 1;
            check.pass = false;
        }
        let p = pressure(&lhs, relation, &rhs);
        let replace = match &check.worst {
            None => true,
            Some((_, _, old)) => p.exceeds(old),
        };
        if replace {
            check.lhs = lhs.render();
            check.rhs = rhs.render();
            check.worst = Some((lhs, rhs, p));
        }
        if !ok && asserted {
            self.passed = false;
        }
        ok
    }

    /// Folds in the log of trial `trial`.
    pub fn absorb(&mut self, trial: u64, log: TrialLog) {
        for e in log.entries {
            self.record_with(&e.anchor, &e.description, e.lhs, e.relation, e.rhs, e.asserted);
        }
        for (key, value) in log.maxima {
            self.observe_max(&key, value);
        }
        for (case, metric, value) in log.rows {
            self.rows.push(TrialRow {
                experiment: self.experiment.clone(),
                trial,
                case,
                metric,
                value,
            });
        }
    }

    pub fn row(&mut self, trial: u64, case: impl Into<String>, metric: &str, value: impl ToString) {
        self.rows.push(TrialRow {
            experiment: self.experiment.clone(),
            trial,
            case: case.into(),
            metric: metric.to_string(),
            value: value.to_string(),
        });
    }

    pub fn check(&self, anchor: &str, description: &str) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| c.anchor == anchor && c.description == description)
    }
}

/// One comparison made inside a trial.
#[derive(Clone, Debug)]
pub struct Entry {
    pub anchor: String,
    pub description: String,
    pub lhs: Number,
    pub relation: Relation,
    pub rhs: Number,
    pub asserted: bool,
}

/// What a single trial observed, merged into the report in trial order so
/// that parallel scheduling cannot change the output.
#[derive(Clone, Debug, Default)]
pub struct TrialLog {
    pub entries: Vec<Entry>,
    pub rows: Vec<(String, String, String)>,
    pub maxima: Vec<(String, f64)>,
}

impl TrialLog {
    pub fn record(
        &mut self,
        anchor: &str,
        description: &str,
        lhs: impl Into<Number>,
        relation: Relation,
        rhs: impl Into<Number>,
    ) {
        self.push(anchor, description, lhs.into(), relation, rhs.into(), true);
    }

    pub fn inform(
        &mut self,
        anchor: &str,
        description: &str,
        lhs: impl Into<Number>,
        relation: Relation,
        rhs: impl Into<Number>,
    ) {
        self.push(anchor, description, lhs.into(), relation, rhs.into(), false);
    }

    pub fn record_flag(&mut self, anchor: &str, description: &str, ok: bool) {
        let one = Rational::from_integer(1.into());
        let value = Rational::from_integer((ok as i64).into());
        self.record(anchor, description, value, Relation::Eq, one);
    }

    pub fn row(&mut self, case: impl Into<String>, metric: &str, value: impl ToString) {
        self.rows.push((case.into(), metric.to_string(), value.to_string()));
    }

    /// Contributes `value` to the maximum reported under `key`.
    pub fn observe_max(&mut self, key: &str, value: f64) {
        self.maxima.push((key.to_string(), value));
    }

    fn push(&mut self, anchor: &str, description: &str, lhs: Number, relation: Relation, rhs: Number, asserted: bool) {
        self.entries.push(Entry {
            anchor: anchor.to_string(),
            description: description.to_string(),
            lhs,
            relation,
            rhs,
            asserted,
        });
    }
}

/// Reports as a JSON array, one object per experiment.
pub fn write_json(reports: &[ExperimentReport], out: &mut impl Write) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, reports)?;
    writeln!(out)?;
    Ok(())
}

/// Per-trial rows of all reports as CSV.
pub fn write_csv(reports: &[ExperimentReport], out: impl Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        for row in &r.rows {
            w.serialize(row)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// The JSON report with every wall-time field removed, for comparing runs.
pub fn without_timing(reports: &[ExperimentReport]) -> anyhow::Result<String> {
    let mut value = serde_json::to_value(reports)?;
    if let Value::Array(items) = &mut value {
        for item in items {
            if let Value::Object(map) = item {
                map.remove("wall_time_s");
            }
        }
    }
    Ok(serde_json::to_string_pretty(&value)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use riemax_core::exact::rational;

    #[test]
    fn worst_case_tracks_the_tightest_trial() {
        let mut r = ExperimentReport::new("demo");
        assert!(r.record("Jes", "weak type", rational(1, 4), Relation::Le, rational(1, 2)));
        assert!(r.record("Jes", "weak type", rational(1, 2), Relation::Le, rational(1, 2)));
        assert!(r.record("Jes", "weak type", rational(1, 8), Relation::Le, rational(1, 2)));
        let c = r.check("Jes", "weak type").unwrap();
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("1/2", "1/2"));
        assert!(c.pass && r.passed);
        assert_eq!(c.trials, 3);
        assert!(!r.record("Jes", "weak type", rational(3, 4), Relation::Le, rational(1, 2)));
        assert!(!r.passed);
        assert_eq!(r.check("Jes", "weak type").unwrap().violations, 1);
    }

    #[test]
    fn reported_checks_do_not_fail_the_run() {
        let mut r = ExperimentReport::new("demo");
        r.inform("tlBB", "unions equal", 0.5, Relation::Eq, 1.0);
        assert!(r.passed);
        assert!(!r.checks[0].pass);
    }
}
