//! Experiment runner for exact finite-level checks of Riemann-sum and
//! rectangle maximal functions: random stress suites, exhaustive
//! isomorphism checks, extremal constructions and Orlicz-class numerics,
//! reported as JSON or CSV.

pub mod calibration;
pub mod config;
pub mod experiments;
pub mod report;
pub mod sample;

pub use calibration::{calibrate, Calibration};
pub use config::{Experiment, ExperimentConfig, Format};
pub use experiments::run;
pub use report::{ExperimentReport, TrialLog};
