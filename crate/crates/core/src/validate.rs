//! Randomized check of the isometry and reconstruction axioms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::frame::{analysis, synthesis, Frame};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub trials: usize,
    pub tol: f64,
    /// max |Σ w_i |f_i(x)|^p − ‖x‖_p^p| / ‖x‖_p^p
    pub isometry_residual: f64,
    /// max ‖synthesis(analysis(x)) − x‖_p / ‖x‖_p
    pub reconstruction_residual: f64,
    pub passed: bool,
}

pub fn validate_frame(frame: &Frame, trials: usize, tol: f64, seed: u64) -> ValidationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = frame.p();
    let weights = frame.space().weights();
    let mut iso: f64 = 0.0;
    let mut rec: f64 = 0.0;
    for _ in 0..trials.max(1) {
        let x = frame.field().sample_vec(frame.dim(), &mut rng);
        let norm_pow = scalar::norm_p_pow(&x, p);
        if norm_pow == 0.0 {
            continue;
        }
        let c = analysis(frame, &x).expect("sampled vector matches the frame");
        let energy: f64 = c.values().iter().zip(weights).map(|(v, w)| w * v.norm().powf(p)).sum();
        iso = iso.max((energy - norm_pow).abs() / norm_pow);

        let back = synthesis(frame, &c).expect("coefficients live on the frame's space");
        let diff: Vec<Scalar> = back.iter().zip(&x).map(|(a, b)| a - b).collect();
        rec = rec.max(scalar::norm_p(&diff, p) / norm_pow.powf(1.0 / p));
    }
    ValidationReport {
        trials: trials.max(1),
        tol,
        isometry_residual: iso,
        reconstruction_residual: rec,
        passed: iso <= tol && rec <= tol,
    }
}

/// Reconstruction operator `Σ_i w_i τ_i f_i` as a row-major `d × d` matrix.
/// Equals the identity exactly when the reconstruction axiom holds.
pub fn reconstruction_operator(frame: &Frame) -> Vec<Scalar> {
    let d = frame.dim();
    let mut m = vec![Scalar::new(0.0, 0.0); d * d];
    for (i, (f, tau)) in frame.functionals().zip(frame.vectors()).enumerate() {
        let w = frame.space().weight(i);
        for r in 0..d {
            for c in 0..d {
                m[r * d + c] += w * tau[r] * f[c];
            }
        }
    }
    m
}

/// Gram matrix `Σ_i w_i conj(f_i) f_iᵀ` of the weighted analysis operator.
/// For p = 2 the isometry axiom holds exactly when this is the identity.
pub fn analysis_gram(frame: &Frame) -> Vec<Scalar> {
    let d = frame.dim();
    let mut m = vec![Scalar::new(0.0, 0.0); d * d];
    for (i, f) in frame.functionals().enumerate() {
        let w = frame.space().weight(i);
        for r in 0..d {
            for c in 0..d {
                m[r * d + c] += w * f[r].conj() * f[c];
            }
        }
    }
    m
}

/// Largest entrywise deviation of a square matrix from the identity.
pub fn identity_deviation(m: &[Scalar], d: usize) -> f64 {
    m.iter()
        .enumerate()
        .map(|(k, z)| {
            let target = if k / d == k % d { 1.0 } else { 0.0 };
            (z - target).norm()
        })
        .fold(0.0, f64::max)
}

/// Deviation of both the analysis Gram and the reconstruction operator from
/// the identity; meaningful for Hilbert (p = 2) frames.
pub fn gram_identity_deviation(frame: &Frame) -> f64 {
    let d = frame.dim();
    identity_deviation(&analysis_gram(frame), d).max(identity_deviation(&reconstruction_operator(frame), d))
}
