//! Discretized continuous p-Schauder frames.
//!
//! A frame pairs a family of functionals `f_i` with a family of vectors
//! `τ_i`, both indexed by the atoms of a [`MeasureSpace`]. Integrals over the
//! index space become weighted sums, so the two frame axioms read
//!
//! ```text
//! Σ_i w_i |f_i(x)|^p     = ‖x‖_p^p     (isometry)
//! Σ_i w_i f_i(x) τ_i     = x           (reconstruction)
//! ```
//!
//! Functionals act by the bilinear pairing `f(x) = Σ_j f_j x_j`. Hilbert-space
//! constructions store the conjugated vector so the pairing is `⟨x, τ⟩`.
//! The axioms are not enforced here; see [`validate_frame`](crate::validate_frame).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::measure::MeasureSpace;
use crate::scalar::{self, Field, Scalar};

/// Exponent `p` with `1 < p < ∞`; the conjugate index is derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p > 1.0 {
            Ok(Self(p))
        } else {
            Err(Error::InvalidExponent(p))
        }
    }

    pub const fn two() -> Self {
        Self(2.0)
    }

    pub fn p(self) -> f64 {
        self.0
    }

    /// Conjugate index `q = p / (p - 1)`.
    pub fn q(self) -> f64 {
        self.0 / (self.0 - 1.0)
    }
}

#[derive(Debug, Clone)]
pub struct Frame {
    space: Arc<MeasureSpace>,
    p: Exponent,
    field: Field,
    dim: usize,
    functionals: Vec<Scalar>,
    vectors: Vec<Scalar>,
}

impl Frame {
    /// Builds a frame from row-major `n × d` tables of functionals and vectors.
    pub fn new(
        space: MeasureSpace,
        p: Exponent,
        field: Field,
        dim: usize,
        functionals: Vec<Scalar>,
        vectors: Vec<Scalar>,
    ) -> Result<Self> {
        Self::with_shared_space(Arc::new(space), p, field, dim, functionals, vectors)
    }

    pub fn with_shared_space(
        space: Arc<MeasureSpace>,
        p: Exponent,
        field: Field,
        dim: usize,
        functionals: Vec<Scalar>,
        vectors: Vec<Scalar>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        let expected = space.len() * dim;
        for table in [&functionals, &vectors] {
            if table.len() != expected {
                return Err(Error::DimensionMismatch { expected, found: table.len() });
            }
        }
        if !scalar::all_finite(&functionals) {
            return Err(Error::NonFinite("functionals"));
        }
        if !scalar::all_finite(&vectors) {
            return Err(Error::NonFinite("vectors"));
        }
        if !field.admits(&functionals) {
            return Err(Error::NotReal("functionals"));
        }
        if !field.admits(&vectors) {
            return Err(Error::NotReal("vectors"));
        }
        Ok(Self { space, p, field, dim, functionals, vectors })
    }

    /// Hilbert-space frame (p = 2) whose functionals are `⟨·, τ_i⟩`.
    pub fn hilbert(space: MeasureSpace, field: Field, dim: usize, vectors: Vec<Scalar>) -> Result<Self> {
        // `+ 0.0` keeps real entries free of negative-zero imaginary parts
        let functionals = vectors.iter().map(|z| Scalar::new(z.re, -z.im + 0.0)).collect();
        Self::new(space, Exponent::two(), field, dim, functionals, vectors)
    }

    pub fn space(&self) -> &MeasureSpace {
        &self.space
    }

    pub(crate) fn shared_space(&self) -> &Arc<MeasureSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exponent(&self) -> Exponent {
        self.p
    }

    pub fn p(&self) -> f64 {
        self.p.p()
    }

    pub fn q(&self) -> f64 {
        self.p.q()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn functional(&self, atom: usize) -> &[Scalar] {
        &self.functionals[atom * self.dim..(atom + 1) * self.dim]
    }

    pub fn vector(&self, atom: usize) -> &[Scalar] {
        &self.vectors[atom * self.dim..(atom + 1) * self.dim]
    }

    pub fn functionals(&self) -> impl Iterator<Item = &[Scalar]> {
        self.functionals.chunks_exact(self.dim)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        self.vectors.chunks_exact(self.dim)
    }

    pub(crate) fn raw_tables(&self) -> (&[Scalar], &[Scalar]) {
        (&self.functionals, &self.vectors)
    }

    /// Checks that `x` lives in this frame's ambient space.
    pub fn check_vector(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        if !scalar::all_finite(x) {
            return Err(Error::NonFinite("vector"));
        }
        if !self.field.admits(x) {
            return Err(Error::NotReal("vector"));
        }
        Ok(())
    }

    /// Same ambient dimension, field and exponent.
    pub fn check_compatible(&self, other: &Frame) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.p != other.p {
            return Err(Error::ExponentMismatch(self.p(), other.p()));
        }
        Ok(())
    }
}

/// Values of a function on the atoms of a measure space.
#[derive(Debug, Clone)]
pub struct CoefficientFunction {
    space: Arc<MeasureSpace>,
    values: Vec<Scalar>,
}

impl CoefficientFunction {
    pub fn new(space: MeasureSpace, values: Vec<Scalar>) -> Result<Self> {
        Self::on(Arc::new(space), values)
    }

    pub fn on_frame(frame: &Frame, values: Vec<Scalar>) -> Result<Self> {
        Self::on(frame.space.clone(), values)
    }

    fn on(space: Arc<MeasureSpace>, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::DimensionMismatch { expected: space.len(), found: values.len() });
        }
        if !scalar::all_finite(&values) {
            return Err(Error::NonFinite("coefficient function"));
        }
        Ok(Self { space, values })
    }

    pub fn space(&self) -> &MeasureSpace {
        &self.space
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Scalar> {
        self.values
    }

    /// Number of nonzero entries.
    pub fn count_nonzero(&self) -> usize {
        self.values.iter().filter(|z| z.re != 0.0 || z.im != 0.0).count()
    }

    pub fn is_defined_on(&self, frame: &Frame) -> bool {
        Arc::ptr_eq(&self.space, &frame.space) || *self.space == *frame.space
    }
}

/// Analysis operator: `x ↦ (f_i(x))_i`.
pub fn analysis(frame: &Frame, x: &[Scalar]) -> Result<CoefficientFunction> {
    frame.check_vector(x)?;
    let values = frame.functionals().map(|f| scalar::pair(f, x)).collect();
    Ok(CoefficientFunction { space: frame.space.clone(), values })
}

/// Weighted synthesis: `c ↦ Σ_i w_i c_i τ_i`.
pub fn synthesis(frame: &Frame, c: &CoefficientFunction) -> Result<Vec<Scalar>> {
    if !c.is_defined_on(frame) {
        return Err(Error::SpaceMismatch);
    }
    let mut x = vec![Scalar::new(0.0, 0.0); frame.dim];
    for (i, (tau, &ci)) in frame.vectors().zip(&c.values).enumerate() {
        let coef = ci * frame.space.weight(i);
        for (xj, tj) in x.iter_mut().zip(tau) {
            *xj += coef * tj;
        }
    }
    Ok(x)
}

/// Measure of the support of `c` under the relative threshold
/// `|c_i| > eps · max_j |c_j|`. An all-zero function has measure 0.
pub fn support_measure(c: &CoefficientFunction, eps: f64) -> f64 {
    support_atoms(c, eps).map(|i| c.space.weight(i)).sum()
}

/// Atoms in the thresholded support of `c`, in increasing order.
pub fn support_atoms(c: &CoefficientFunction, eps: f64) -> impl Iterator<Item = usize> + '_ {
    let mags: Vec<f64> = c.values.iter().map(|z| z.norm()).collect();
    let cutoff = eps * mags.iter().cloned().fold(0.0, f64::max);
    mags.into_iter().enumerate().filter(move |&(_, m)| m > cutoff).map(|(i, _)| i)
}
