//! Cross-coherence between two frames and Gram coherence of one frame.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossCoherence {
    /// max |f_i(ω_j)| over functionals of the first frame and vectors of the second.
    #[serde(rename = "cohFG")]
    pub fg: f64,
    /// max |g_j(τ_i)|.
    #[serde(rename = "cohGF")]
    pub gf: f64,
}

pub fn cross_coherence(f: &Frame, g: &Frame) -> Result<CrossCoherence> {
    f.check_compatible(g)?;
    let fg = max_pairing(f.functionals(), || g.vectors());
    let gf = max_pairing(g.functionals(), || f.vectors());
    if !(fg > 0.0 && gf > 0.0) {
        return Err(Error::DegenerateCoherence);
    }
    Ok(CrossCoherence { fg, gf })
}

fn max_pairing<'a, F, V>(functionals: F, vectors: impl Fn() -> V) -> f64
where
    F: Iterator<Item = &'a [Scalar]>,
    V: Iterator<Item = &'a [Scalar]>,
{
    functionals.flat_map(|f| vectors().map(move |v| scalar::pair(f, v).norm())).fold(0.0, f64::max)
}

/// Whether atom vectors enter the Gram coherence as stored or rescaled to unit norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoherenceMode {
    #[default]
    Raw,
    Normalized,
}

/// Which atom pairs the Gram coherence ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairSet {
    /// Every pair of distinct atom indices.
    #[default]
    AllPairs,
    /// Pairs of atoms whose stored vectors differ (drops copies made by splitting).
    DistinctVectors,
}

/// max_{j≠k} |⟨τ_j, τ_k⟩| over the unweighted atom vectors.
pub fn gram_coherence(frame: &Frame) -> Result<f64> {
    gram_coherence_with(frame, CoherenceMode::Raw, PairSet::AllPairs)
}

pub fn gram_coherence_with(frame: &Frame, mode: CoherenceMode, pairs: PairSet) -> Result<f64> {
    let n = frame.len();
    if n < 2 {
        return Err(Error::invalid("gram coherence needs at least two atoms"));
    }
    if frame.p() != 2.0 {
        return Err(Error::invalid("gram coherence uses the Hilbert pairing and needs p = 2"));
    }
    let norms: Vec<f64> = frame.vectors().map(scalar::norm2).collect();
    let mut coh: f64 = 0.0;
    for j in 0..n {
        for k in j + 1..n {
            let (a, b) = (frame.vector(j), frame.vector(k));
            if pairs == PairSet::DistinctVectors && a == b {
                continue;
            }
            let mut value = scalar::inner(a, b).norm();
            if mode == CoherenceMode::Normalized {
                let scale = norms[j] * norms[k];
                if scale == 0.0 {
                    continue;
                }
                value /= scale;
            }
            coh = coh.max(value);
        }
    }
    Ok(coh)
}

pub const THRESHOLD_MARGIN: f64 = 1e-9;

/// Sparsity level below which a representation is guaranteed unique:
/// `(1 + 1/coh) / 2`, unbounded when the coherence vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Threshold {
    Bounded(f64),
    Unbounded,
}

impl Threshold {
    /// True when `level` lies strictly below the threshold by more than
    /// [`THRESHOLD_MARGIN`], so rounding in the coherence cannot admit a
    /// level that sits exactly on the bound.
    pub fn admits(self, level: f64) -> bool {
        match self {
            Threshold::Bounded(t) => level + THRESHOLD_MARGIN < t,
            Threshold::Unbounded => true,
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Threshold::Bounded(t) => Some(t),
            Threshold::Unbounded => None,
        }
    }

    /// Largest integer cardinality strictly below the threshold, capped at `cap`.
    pub fn max_cardinality(self, cap: usize) -> usize {
        match self {
            Threshold::Unbounded => cap,
            Threshold::Bounded(t) => {
                let k = (t - THRESHOLD_MARGIN).ceil().max(0.0) as usize;
                k.saturating_sub(1).min(cap)
            }
        }
    }
}

pub fn uniqueness_threshold(coh: f64) -> Result<Threshold> {
    if !(coh.is_finite() && coh >= 0.0) {
        return Err(Error::invalid(format!("coherence must be finite and non-negative, got {coh}")));
    }
    if coh == 0.0 {
        return Ok(Threshold::Unbounded);
    }
    Ok(Threshold::Bounded(0.5 * (1.0 + 1.0 / coh)))
}
