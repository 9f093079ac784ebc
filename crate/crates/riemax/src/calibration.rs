//! Frozen empirical constants and the corpus that produces them.

use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

use riemax_core::exact::Fixed;
use riemax_core::orlicz::envelope_onset;
use riemax_core::product::ProductSpace;

use crate::experiments::orlicz::envelope_grid;
use crate::experiments::overlap::{sample_overlap, DEFAULT_PRIMES};
use crate::experiments::selection::{sample_selection, trial_id, DIMENSIONS};
use crate::experiments::weak_type::{constant_ratio, sample_weak_type, Setting};

/// The calibration file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// Largest mean of `Psi((1 + overlap) / 3)` over `E` in the overlap corpus.
    #[serde(rename = "lemma2_C")]
    pub lemma2_c: f64,
    /// Largest mean of `Psi(overlap / 3)` after tail/base selection.
    #[serde(rename = "tlB_C")]
    pub tlb_c: f64,
    /// Largest weak-type ratio of the rectangle maximal operator.
    #[serde(rename = "lem6_C")]
    pub lem6_c: f64,
    /// First point from which the two-sided envelope of `Phi` holds up to
    /// the end of the grid; `null` when it fails at the end.
    pub phi_gamma_x0: Option<f64>,
    pub corpus_seed: u64,
    pub corpus_size: u64,
}

impl Calibration {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn save(&self, path: &Path) -> anyhow::Result<()> {
        fs::write(path, self.to_json()?).with_context(|| format!("writing {}", path.display()))
    }
}

/// How many corpus instances go to the overlap, selection and weak-type
/// suites; the last two are further split evenly over the dimensions.
pub fn corpus_split(corpus_size: u64) -> (u64, u64, u64) {
    let overlap = corpus_size / 3;
    let selection = corpus_size / 3;
    (overlap, selection, corpus_size - overlap - selection)
}

/// `n` instances spread over the dimensions: the first ones get one more.
fn per_dimension(n: u64, index: usize) -> u64 {
    let k = DIMENSIONS.len() as u64;
    n / k + u64::from((index as u64) < n % k)
}

/// Runs the corpus under `seed` and freezes the largest observed values.
///
/// Instance `i` of each suite is the same instance as trial `i` of the
/// matching experiment run with the same seed, so runs within the corpus
/// size reproduce the corpus.
pub fn calibrate(corpus_size: u64, seed: u64, budget: u64) -> anyhow::Result<Calibration> {
    let (n_overlap, n_selection, n_weak) = corpus_split(corpus_size);

    let space = ProductSpace::primorial(DEFAULT_PRIMES, budget)?;
    let mut lemma2_c = 0.0f64;
    for trial in 0..n_overlap {
        if let Some(r) = sample_overlap(&space, seed, trial)?.ceil.psi_ratio {
            lemma2_c = lemma2_c.max(r);
        }
    }

    let mut tlb_c = 0.0f64;
    let mut lem6_c = 0.0f64;
    for (index, &d) in DIMENSIONS.iter().enumerate() {
        for i in 0..per_dimension(n_selection, index) {
            let s = sample_selection(seed, d, trial_id(d, i), budget)?;
            tlb_c = tlb_c.max(s.psi_overlap.unwrap_or(0.0));
        }
        let setting = Setting::new(d, budget)?;
        // Constant functions belong to every corpus.
        for c in [1, 2, 4] {
            lem6_c = lem6_c.max(constant_ratio(&setting, Fixed::from_int(c))?);
        }
        for i in 0..per_dimension(n_weak, index) {
            lem6_c = lem6_c.max(sample_weak_type(&setting, seed, trial_id(d, i))?.ratio);
        }
    }

    let phi_gamma_x0 = envelope_onset(&envelope_grid(None))?;
    Ok(Calibration {
        lemma2_c,
        tlb_c,
        lem6_c,
        phi_gamma_x0,
        corpus_seed: seed,
        corpus_size,
    })
}
