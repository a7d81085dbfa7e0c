//! Empirical probe of measure-minimal uniqueness below the coherence threshold.
//!
//! Each trial plants random coefficients on a support `S` whose measure lies
//! strictly below `(1 + 1/coh)/2`, synthesizes `h`, and solves the measure
//! minimization problem exactly. A trial confirms when the solver returns `S`
//! as its unique minimizer; otherwise it is reported as a counterexample.
//! Counterexamples are data, not errors.
//!
//! The coherence is taken over every pair of distinct atoms and, separately,
//! over pairs whose vectors differ; both variants are reported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coherence::{gram_coherence_with, uniqueness_threshold, CoherenceMode, PairSet, Threshold};
use crate::error::{Error, Result};
use crate::frame::{synthesis, CoefficientFunction, Frame};
use crate::io::{frame_to_json, FrameFile};
use crate::scalar::{self, Scalar, ScalarRepr};
use crate::sparse::{measure_min_brute_force, SparseProblem};
use crate::subsets::{self, mask_indices};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeStatus {
    Ran,
    /// No nonempty support has measure below the threshold.
    HypothesisUnsatisfiable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub planted_support: Vec<usize>,
    pub planted_weight: f64,
    pub planted_coefficients: Vec<ScalarRepr>,
    pub target: Vec<ScalarRepr>,
    pub recovered_support: Option<Vec<usize>>,
    pub recovered_weight: Option<f64>,
    pub unique: Option<bool>,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantReport {
    pub pair_set: PairSet,
    pub coherence: f64,
    pub threshold: Threshold,
    pub status: ProbeStatus,
    pub eligible_supports: usize,
    pub trials_run: usize,
    pub trials_skipped: usize,
    pub confirmations: usize,
    pub counterexamples: usize,
    pub trials: Vec<TrialRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    pub pair_set: PairSet,
    pub seed: u64,
    pub trial: usize,
    pub frame_hash: String,
    pub planted_support: Vec<usize>,
    pub planted_coefficients: Vec<ScalarRepr>,
    pub recovered_support: Option<Vec<usize>>,
    pub unique: Option<bool>,
    pub frame: FrameFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeReport {
    pub seed: u64,
    pub trials_requested: usize,
    pub frame_hash: String,
    pub variants: Vec<VariantReport>,
    pub counterexamples: Vec<Counterexample>,
}

impl ProbeReport {
    pub fn variant(&self, pairs: PairSet) -> &VariantReport {
        self.variants.iter().find(|v| v.pair_set == pairs).expect("both variants are always present")
    }
}

/// First 16 hex digits of the SHA-256 of the frame's JSON file form.
pub fn frame_hash(frame: &Frame) -> String {
    Sha256::digest(frame_to_json(frame).as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn conjecture_probe(frame: &Frame, trials: usize, seed: u64) -> Result<ProbeReport> {
    if frame.p() != 2.0 {
        return Err(Error::invalid("the probe needs a Hilbert frame (p = 2)"));
    }
    let n = frame.len();
    subsets::check_guard(1u128 << n.min(127))?;
    let hash = frame_hash(frame);

    let mut variants = Vec::new();
    let mut counterexamples = Vec::new();
    for pair_set in [PairSet::AllPairs, PairSet::DistinctVectors] {
        let variant = run_variant(frame, pair_set, trials, seed)?;
        for t in variant.trials.iter().filter(|t| !t.confirmed) {
            counterexamples.push(Counterexample {
                pair_set,
                seed,
                trial: t.trial,
                frame_hash: hash.clone(),
                planted_support: t.planted_support.clone(),
                planted_coefficients: t.planted_coefficients.clone(),
                recovered_support: t.recovered_support.clone(),
                unique: t.unique,
                frame: FrameFile::from(frame),
            });
        }
        variants.push(variant);
    }
    Ok(ProbeReport { seed, trials_requested: trials, frame_hash: hash, variants, counterexamples })
}

/// Seed of the generator used for one variant of a probe run.
pub fn variant_seed(seed: u64, pairs: PairSet) -> u64 {
    let salt = match pairs {
        PairSet::AllPairs => 0,
        PairSet::DistinctVectors => 1,
    };
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt)
}

fn run_variant(frame: &Frame, pair_set: PairSet, trials: usize, seed: u64) -> Result<VariantReport> {
    let n = frame.len();
    let coherence = gram_coherence_with(frame, CoherenceMode::Raw, pair_set)?;
    let threshold = uniqueness_threshold(coherence)?;
    let space = frame.space();
    let eligible: Vec<u64> = (1..1u64 << n).filter(|&m| threshold.admits(space.measure_of_mask(m))).collect();

    let mut report = VariantReport {
        pair_set,
        coherence,
        threshold,
        status: ProbeStatus::Ran,
        eligible_supports: eligible.len(),
        trials_run: 0,
        trials_skipped: 0,
        confirmations: 0,
        counterexamples: 0,
        trials: Vec::new(),
    };
    if eligible.is_empty() {
        report.status = ProbeStatus::HypothesisUnsatisfiable;
        report.trials_skipped = trials;
        return Ok(report);
    }

    let field = frame.field();
    let mut rng = ChaCha8Rng::seed_from_u64(variant_seed(seed, pair_set));
    for trial in 0..trials {
        let mask = eligible[rng.random_range(0..eligible.len())];
        let mut values = vec![Scalar::new(0.0, 0.0); n];
        for i in mask_indices(mask) {
            values[i] = loop {
                let z = field.sample(&mut rng);
                if z.norm() > 1e-3 {
                    break z;
                }
            };
        }
        let planted = CoefficientFunction::on_frame(frame, values)?;
        let h = synthesis(frame, &planted)?;
        let planted_support: Vec<usize> = mask_indices(mask).collect();
        let mut record = TrialRecord {
            trial,
            planted_weight: space.measure_of_mask(mask),
            planted_coefficients: scalar::encode_all(planted.values(), field),
            target: scalar::encode_all(&h, field),
            planted_support,
            recovered_support: None,
            recovered_weight: None,
            unique: None,
            confirmed: false,
        };
        match measure_min_brute_force(&SparseProblem::new(frame, h)?) {
            Ok(sol) => {
                record.confirmed = sol.unique && sol.support == record.planted_support;
                record.recovered_weight = Some(sol.support_weight);
                record.unique = Some(sol.unique);
                record.recovered_support = Some(sol.support);
            }
            Err(Error::Infeasible { .. }) => {}
            Err(e) => return Err(e),
        }
        report.trials_run += 1;
        if record.confirmed {
            report.confirmations += 1;
        } else {
            report.counterexamples += 1;
        }
        report.trials.push(record);
    }
    Ok(report)
}
