//! Numerical laboratory for uncertainty principles of discretized continuous
//! p-Schauder frames.
//!
//! * [`Frame`], [`MeasureSpace`], [`analysis`], [`synthesis`] and
//!   [`support_measure`] model frames over finite weighted index sets.
//! * [`uncertainty_check`] evaluates both sides of the two-sided support
//!   inequality against the reciprocal cross-coherences.
//! * [`zoo`] builds canonical, DFT, harmonic, random Parseval, dual and split frames.
//! * [`sparse`] solves ℓ0 and measure minimization exactly by enumeration, and
//!   [`probe`] tests measure-minimal uniqueness below the coherence threshold.

#![forbid(unsafe_code)]

pub mod cli;
pub mod coherence;
pub mod error;
pub mod extremal;
pub mod frame;
pub mod io;
pub mod linalg;
pub mod measure;
pub mod probe;
pub mod scalar;
pub mod sparse;
pub mod subsets;
pub mod uncertainty;
pub mod validate;
pub mod zoo;

pub use coherence::{
    cross_coherence, gram_coherence, gram_coherence_with, uniqueness_threshold, CoherenceMode, CrossCoherence, PairSet,
    Threshold,
};
pub use error::{Error, Result};
pub use extremal::{extremal_search, ExtremalOptions, ExtremalReport};
pub use frame::{analysis, support_atoms, support_measure, synthesis, CoefficientFunction, Exponent, Frame};
pub use measure::MeasureSpace;
pub use probe::{conjecture_probe, ProbeReport};
pub use scalar::{Field, Scalar};
pub use sparse::{
    donoho_elad_check, donoho_elad_check_with, l0_brute_force, measure_min_brute_force, DonohoEladReport,
    SparseProblem, SparseSolution,
};
pub use uncertainty::{uncertainty_check, UncertaintyReport, DEFAULT_SUPPORT_EPS, UNCERTAINTY_TOL};
pub use validate::{gram_identity_deviation, validate_frame, ValidationReport};
pub use zoo::FrameSpec;
