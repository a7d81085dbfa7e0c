//! Verifier for the two-sided functional uncertainty inequality
//!
//! ```text
//! μ(supp θ_f x)^{1/p} · ν(supp θ_g x)^{1/q} ≥ 1 / sup |f_α(ω_β)|
//! ν(supp θ_g x)^{1/p} · μ(supp θ_f x)^{1/q} ≥ 1 / sup |g_β(τ_α)|
//! ```
//!
//! for a nonzero `x` and two p-Schauder frames `(f, τ)` and `(g, ω)`.

use serde::{Deserialize, Serialize};

use crate::coherence::{cross_coherence, CrossCoherence};
use crate::error::{Error, Result};
use crate::frame::{analysis, support_measure, Frame};
use crate::scalar::{self, Scalar};

/// Additive slack on both inequalities.
pub const UNCERTAINTY_TOL: f64 = 1e-9;

/// Default relative support threshold for floating-point coefficients.
pub const DEFAULT_SUPPORT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    #[serde(rename = "suppF")]
    pub supp_f: f64,
    #[serde(rename = "suppG")]
    pub supp_g: f64,
    pub lhs1: f64,
    pub lhs2: f64,
    #[serde(rename = "cohFG")]
    pub coh_fg: f64,
    #[serde(rename = "cohGF")]
    pub coh_gf: f64,
    pub bound1: f64,
    pub bound2: f64,
    pub holds1: bool,
    pub holds2: bool,
}

impl UncertaintyReport {
    pub fn holds(&self) -> bool {
        self.holds1 && self.holds2
    }

    /// `suppF · suppG`, the Hilbert-space (p = 2) form of both sides squared.
    pub fn support_product(&self) -> f64 {
        self.supp_f * self.supp_g
    }

    /// Assembles a report from support measures and coherences.
    pub fn from_parts(supp_f: f64, supp_g: f64, p: f64, q: f64, coh: CrossCoherence) -> Self {
        let lhs1 = supp_f.powf(1.0 / p) * supp_g.powf(1.0 / q);
        let lhs2 = supp_g.powf(1.0 / p) * supp_f.powf(1.0 / q);
        let bound1 = 1.0 / coh.fg;
        let bound2 = 1.0 / coh.gf;
        Self {
            supp_f,
            supp_g,
            lhs1,
            lhs2,
            coh_fg: coh.fg,
            coh_gf: coh.gf,
            bound1,
            bound2,
            holds1: lhs1 >= bound1 - UNCERTAINTY_TOL,
            holds2: lhs2 >= bound2 - UNCERTAINTY_TOL,
        }
    }
}

pub fn uncertainty_check(f: &Frame, g: &Frame, x: &[Scalar], eps: f64) -> Result<UncertaintyReport> {
    let coh = cross_coherence(f, g)?;
    uncertainty_check_with(f, g, coh, x, eps)
}

/// Same as [`uncertainty_check`] with the cross-coherence supplied by the caller,
/// for sweeps that test many vectors against one pair.
pub fn uncertainty_check_with(
    f: &Frame,
    g: &Frame,
    coh: CrossCoherence,
    x: &[Scalar],
    eps: f64,
) -> Result<UncertaintyReport> {
    f.check_compatible(g)?;
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::invalid(format!("support threshold must be non-negative, got {eps}")));
    }
    f.check_vector(x)?;
    if scalar::is_zero(x) {
        return Err(Error::ZeroVector);
    }
    let supp_f = support_measure(&analysis(f, x)?, eps);
    let supp_g = support_measure(&analysis(g, x)?, eps);
    Ok(UncertaintyReport::from_parts(supp_f, supp_g, f.p(), f.q(), coh))
}
