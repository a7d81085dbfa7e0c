//! Frame constructors and extremal test vectors.
//!
//! Every constructor returns a frame satisfying both axioms to rounding
//! error. For p ≠ 2 the only available families are coordinate frames:
//! the canonical pair, signed permutations (the isometries of ℓ^p), and
//! weight splits of those.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Exponent, Frame};
use crate::linalg;
use crate::measure::MeasureSpace;
use crate::scalar::{Field, Scalar};
use crate::validate::gram_identity_deviation;

const ZERO: Scalar = Scalar::new(0.0, 0.0);
const ONE: Scalar = Scalar::new(1.0, 0.0);

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::invalid("dimension must be at least 1"))
    } else {
        Ok(())
    }
}

/// Coordinate functionals and unit vectors of ℓ^p over the reals.
pub fn canonical_lp(d: usize, p: f64) -> Result<Frame> {
    canonical_lp_over(d, p, Field::Real)
}

pub fn canonical_lp_over(d: usize, p: f64, field: Field) -> Result<Frame> {
    check_dim(d)?;
    let p = Exponent::new(p)?;
    let id = identity(d);
    Frame::new(MeasureSpace::counting(d)?, p, field, d, id.clone(), id)
}

fn identity(d: usize) -> Vec<Scalar> {
    let mut m = vec![ZERO; d * d];
    for i in 0..d {
        m[i * d + i] = ONE;
    }
    m
}

/// `τ_i = s_i e_{π(i)}`, `f_i = conj(s_i) e*_{π(i)}` for unimodular signs `s_i`.
/// The field is real when every sign is real.
pub fn signed_permutation(d: usize, p: f64, perm: &[usize], signs: &[Scalar]) -> Result<Frame> {
    check_dim(d)?;
    let p = Exponent::new(p)?;
    if perm.len() != d || signs.len() != d {
        return Err(Error::invalid(format!("permutation and signs need length {d}")));
    }
    let mut seen = vec![false; d];
    for &j in perm {
        if j >= d || std::mem::replace(&mut seen[j], true) {
            return Err(Error::invalid("permutation is not a bijection of 0..d"));
        }
    }
    if let Some(s) = signs.iter().find(|s| (s.norm() - 1.0).abs() > 1e-12) {
        return Err(Error::invalid(format!("sign {s} is not unimodular")));
    }
    let mut functionals = vec![ZERO; d * d];
    let mut vectors = vec![ZERO; d * d];
    for (i, (&j, &s)) in perm.iter().zip(signs).enumerate() {
        vectors[i * d + j] = s;
        functionals[i * d + j] = Scalar::new(s.re, -s.im + 0.0);
    }
    Frame::new(MeasureSpace::counting(d)?, p, Field::of(signs), d, functionals, vectors)
}

/// Canonical pair and unitary DFT basis over ℂ^d, both with p = 2.
/// The DFT atoms are `τ_k[j] = e^{-2πi jk/d} / √d`.
pub fn dft_pair(d: usize) -> Result<(Frame, Frame)> {
    check_dim(d)?;
    let identity = canonical_lp_over(d, 2.0, Field::Complex)?;
    let scale = 1.0 / (d as f64).sqrt();
    let mut vectors = Vec::with_capacity(d * d);
    for k in 0..d {
        for j in 0..d {
            vectors.push(Scalar::from_polar(scale, -2.0 * PI * ((j * k) % d) as f64 / d as f64));
        }
    }
    let dft = Frame::hilbert(MeasureSpace::counting(d)?, Field::Complex, d, vectors)?;
    Ok((identity, dft))
}

/// Sampling of the continuous Parseval frame `t ↦ (e^{2πi j t})_{j<d}` on
/// `[0, 1)` at `t_k = k/N` with weights `1/N`. Exact whenever `N ≥ d`.
///
/// With `normalize`, the same frame is expressed over the counting measure by
/// scaling each atom by `1/√N`.
pub fn harmonic_discretization(d: usize, n: usize, normalize: bool) -> Result<Frame> {
    check_dim(d)?;
    if n < d {
        return Err(Error::invalid(format!("N must be ≥ d (got N = {n}, d = {d})")));
    }
    let amp = if normalize { 1.0 / (n as f64).sqrt() } else { 1.0 };
    let mut vectors = Vec::with_capacity(n * d);
    for k in 0..n {
        for j in 0..d {
            vectors.push(Scalar::from_polar(amp, 2.0 * PI * ((j * k) % n) as f64 / n as f64));
        }
    }
    let space = if normalize { MeasureSpace::counting(n)? } else { MeasureSpace::uniform(n, 1.0 / n as f64)? };
    Frame::hilbert(space, Field::Complex, d, vectors)
}

/// Real Parseval frame of `n` vectors in ℝ^d: the rows of an `n × d` matrix
/// with orthonormal columns, drawn from a seeded Gaussian matrix.
pub fn random_parseval(d: usize, n: usize, seed: u64) -> Result<Frame> {
    random_parseval_over(d, n, seed, Field::Real)
}

pub fn random_parseval_over(d: usize, n: usize, seed: u64, field: Field) -> Result<Frame> {
    check_dim(d)?;
    if n < d {
        return Err(Error::invalid(format!("a Parseval frame needs n ≥ d (got n = {n}, d = {d})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut m = field.sample_vec(n * d, &mut rng);
        if linalg::orthonormalize_columns(&mut m, n, d) {
            return Frame::hilbert(MeasureSpace::counting(n)?, field, d, m);
        }
    }
}

/// Three equiangular vectors in ℝ² of squared norm 2/3.
pub fn mercedes_benz() -> Frame {
    let r = (2.0f64 / 3.0).sqrt();
    let vectors = (0..3)
        .flat_map(|k| {
            let angle = 2.0 * PI * k as f64 / 3.0 + FRAC_PI_2;
            [Scalar::new(r * angle.cos(), 0.0), Scalar::new(r * angle.sin(), 0.0)]
        })
        .collect();
    Frame::hilbert(MeasureSpace::counting(3).expect("three atoms"), Field::Real, 2, vectors)
        .expect("fixed fixture is well formed")
}

/// `{e1, e2, (e1 + e2)/√2}` in ℝ² with counting measure. Not Parseval; used
/// as a dictionary with coherence 1/√2.
pub fn three_atom_plane() -> Frame {
    let s = FRAC_1_SQRT_2;
    let vectors = [1.0, 0.0, 0.0, 1.0, s, s].map(|r| Scalar::new(r, 0.0)).to_vec();
    Frame::hilbert(MeasureSpace::counting(3).expect("three atoms"), Field::Real, 2, vectors)
        .expect("fixed fixture is well formed")
}

/// Non-canonical dual of a Parseval frame: keeps the functionals and moves the
/// vectors to `ω_i = τ_i + u_i`, with the rows `u_i` a random element of the
/// kernel of weighted synthesis.
pub fn alternate_dual(parseval: &Frame, seed: u64) -> Result<Frame> {
    alternate_dual_scaled(parseval, seed, 1.0)
}

/// As [`alternate_dual`] with the perturbation multiplied by `scale`;
/// `scale = 0` returns the input frame unchanged.
pub fn alternate_dual_scaled(parseval: &Frame, seed: u64, scale: f64) -> Result<Frame> {
    let (n, d) = (parseval.len(), parseval.dim());
    if parseval.p() != 2.0 {
        return Err(Error::invalid("alternate duals are built from Hilbert frames (p = 2)"));
    }
    if n <= d {
        return Err(Error::invalid("no nontrivial dual exists without redundancy (need n > d)"));
    }
    let deviation = gram_identity_deviation(parseval);
    if deviation > 1e-9 {
        return Err(Error::invalid(format!("input frame is not Parseval (deviation {deviation:.3e})")));
    }
    if !scale.is_finite() {
        return Err(Error::NonFinite("dual perturbation scale"));
    }

    // Σ_i w_i f_i(x) u_i = 0 for all x  ⇔  each column of U is orthogonal
    // to the conjugates of the columns a_j = (w_i f_ij)_i.
    let field = parseval.field();
    let mut basis = vec![ZERO; n * d];
    for i in 0..n {
        let w = parseval.space().weight(i);
        for (j, fij) in parseval.functional(i).iter().enumerate() {
            basis[i * d + j] = (w * fij).conj();
        }
    }
    if !linalg::orthonormalize_columns(&mut basis, n, d) {
        return Err(Error::invalid("analysis operator is rank deficient"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = vec![ZERO; n * d];
    for k in 0..d {
        let mut col = field.sample_vec(n, &mut rng);
        linalg::project_out(&mut col, &basis, d);
        for i in 0..n {
            u[i * d + k] = col[i] * scale;
        }
    }
    let (functionals, vectors) = parseval.raw_tables();
    let vectors = vectors.iter().zip(&u).map(|(t, du)| t + du).collect();
    Frame::with_shared_space(
        parseval.shared_space().clone(),
        parseval.exponent(),
        field,
        d,
        functionals.to_vec(),
        vectors,
    )
}

/// Replaces atom `atom` (weight `w`) by `parts` identical copies of weight `w/parts`.
pub fn weighted_split(frame: &Frame, atom: usize, parts: usize) -> Result<Frame> {
    if atom >= frame.len() {
        return Err(Error::invalid(format!("atom {atom} out of range 0..{}", frame.len())));
    }
    if parts < 2 {
        return Err(Error::invalid("a split needs at least two parts"));
    }
    let mut weights = Vec::with_capacity(frame.len() + parts - 1);
    let mut functionals = Vec::new();
    let mut vectors = Vec::new();
    for i in 0..frame.len() {
        let copies = if i == atom { parts } else { 1 };
        let w = frame.space().weight(i) / copies as f64;
        for _ in 0..copies {
            weights.push(w);
            functionals.extend_from_slice(frame.functional(i));
            vectors.extend_from_slice(frame.vector(i));
        }
    }
    Frame::new(MeasureSpace::new(weights)?, frame.exponent(), frame.field(), frame.dim(), functionals, vectors)
}

/// √d-periodic spike train in ℂ^d for a perfect square `d = m²`.
pub fn picket_fence(d: usize) -> Result<Vec<Scalar>> {
    let m = (d as f64).sqrt().round() as usize;
    if d == 0 || m * m != d {
        return Err(Error::invalid(format!("picket fence needs a perfect-square dimension, got {d}")));
    }
    Ok((0..d).map(|j| if j % m == 0 { ONE } else { ZERO }).collect())
}

/// Declarative description of a zoo frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrameSpec {
    CanonicalLp {
        d: usize,
        p: f64,
        #[serde(default = "real")]
        field: Field,
    },
    SignedPermutation {
        d: usize,
        p: f64,
        perm: Vec<usize>,
        signs: Vec<Scalar>,
    },
    /// Yields two frames: the canonical pair and the DFT basis.
    DftPair {
        d: usize,
    },
    RandomParseval {
        d: usize,
        n: usize,
        seed: u64,
        #[serde(default = "real")]
        field: Field,
    },
    HarmonicDiscretization {
        d: usize,
        n: usize,
        #[serde(default)]
        normalize: bool,
    },
    AlternateDual {
        base: Box<FrameSpec>,
        seed: u64,
    },
    WeightedSplit {
        base: Box<FrameSpec>,
        split_index: usize,
        split_count: usize,
    },
    MercedesBenz,
    ThreeAtomPlane,
}

fn real() -> Field {
    Field::Real
}

impl FrameSpec {
    /// Builds every frame the spec describes (two for `DftPair`, one otherwise).
    pub fn build(&self) -> Result<Vec<Frame>> {
        Ok(match self {
            FrameSpec::CanonicalLp { d, p, field } => vec![canonical_lp_over(*d, *p, *field)?],
            FrameSpec::SignedPermutation { d, p, perm, signs } => vec![signed_permutation(*d, *p, perm, signs)?],
            FrameSpec::DftPair { d } => {
                let (a, b) = dft_pair(*d)?;
                vec![a, b]
            }
            FrameSpec::RandomParseval { d, n, seed, field } => vec![random_parseval_over(*d, *n, *seed, *field)?],
            FrameSpec::HarmonicDiscretization { d, n, normalize } => vec![harmonic_discretization(*d, *n, *normalize)?],
            FrameSpec::AlternateDual { base, seed } => vec![alternate_dual(&base.build_one()?, *seed)?],
            FrameSpec::WeightedSplit { base, split_index, split_count } => {
                vec![weighted_split(&base.build_one()?, *split_index, *split_count)?]
            }
            FrameSpec::MercedesBenz => vec![mercedes_benz()],
            FrameSpec::ThreeAtomPlane => vec![three_atom_plane()],
        })
    }

    /// Builds the spec's single frame; for `DftPair` this is the DFT basis.
    pub fn build_one(&self) -> Result<Frame> {
        let mut frames = self.build()?;
        Ok(frames.pop().expect("every spec builds at least one frame"))
    }

    /// Short human-readable label.
    pub fn label(&self) -> String {
        match self {
            FrameSpec::CanonicalLp { d, p, field } => format!("canonical_lp(d={d},p={p},{field})"),
            FrameSpec::SignedPermutation { d, p, perm, .. } => format!("signed_permutation(d={d},p={p},perm={perm:?})"),
            FrameSpec::DftPair { d } => format!("dft(d={d})"),
            FrameSpec::RandomParseval { d, n, seed, field } => {
                format!("random_parseval(d={d},n={n},seed={seed},{field})")
            }
            FrameSpec::HarmonicDiscretization { d, n, normalize } => {
                format!("harmonic(d={d},N={n}{})", if *normalize { ",normalized" } else { "" })
            }
            FrameSpec::AlternateDual { base, seed } => format!("alternate_dual({},seed={seed})", base.label()),
            FrameSpec::WeightedSplit { base, split_index, split_count } => {
                format!("split({},atom={split_index},parts={split_count})", base.label())
            }
            FrameSpec::MercedesBenz => "mercedes_benz".into(),
            FrameSpec::ThreeAtomPlane => "three_atom_plane".into(),
        }
    }
}
