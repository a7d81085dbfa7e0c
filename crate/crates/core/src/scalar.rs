//! Scalars, fields and small vector helpers.
//!
//! Every frame stores its entries as [`Scalar`] (a `Complex64`). Real frames
//! keep all imaginary parts at exactly zero, which [`Frame`](crate::Frame)
//! checks on construction.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// Smallest field containing every given scalar.
    pub fn of(values: &[Scalar]) -> Field {
        if values.iter().all(|z| z.im == 0.0) {
            Field::Real
        } else {
            Field::Complex
        }
    }

    pub fn admits(self, values: &[Scalar]) -> bool {
        self == Field::Complex || values.iter().all(|z| z.im == 0.0)
    }

    /// Draws one scalar: standard normal on the reals, or independent
    /// standard normal real and imaginary parts.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        let re: f64 = rng.sample(StandardNormal);
        match self {
            Field::Real => Scalar::new(re, 0.0),
            Field::Complex => Scalar::new(re, rng.sample(StandardNormal)),
        }
    }

    pub fn sample_vec<R: Rng + ?Sized>(self, len: usize, rng: &mut R) -> Vec<Scalar> {
        (0..len).map(|_| self.sample(rng)).collect()
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Field::Real => "real",
            Field::Complex => "complex",
        })
    }
}

/// Real scalars serialize as bare numbers, complex ones as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Real(f64),
    Complex([f64; 2]),
}

impl ScalarRepr {
    pub fn encode(z: Scalar, field: Field) -> Self {
        match field {
            Field::Real => ScalarRepr::Real(z.re),
            Field::Complex => ScalarRepr::Complex([z.re, z.im]),
        }
    }

    pub fn decode(self) -> Scalar {
        match self {
            ScalarRepr::Real(re) => Scalar::new(re, 0.0),
            ScalarRepr::Complex([re, im]) => Scalar::new(re, im),
        }
    }
}

pub fn encode_all(values: &[Scalar], field: Field) -> Vec<ScalarRepr> {
    values.iter().map(|&z| ScalarRepr::encode(z, field)).collect()
}

pub fn decode_all(values: &[ScalarRepr]) -> Vec<Scalar> {
    values.iter().map(|r| r.decode()).collect()
}

pub fn all_finite(values: &[Scalar]) -> bool {
    values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// ℓ^p norm raised to the p-th power.
pub fn norm_p_pow(x: &[Scalar], p: f64) -> f64 {
    x.iter().map(|z| z.norm().powf(p)).sum()
}

pub fn norm_p(x: &[Scalar], p: f64) -> f64 {
    norm_p_pow(x, p).powf(1.0 / p)
}

pub fn norm2(x: &[Scalar]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian inner product ⟨a, b⟩ = Σ a_j conj(b_j).
pub fn inner(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

/// Bilinear pairing Σ f_j x_j of a stored functional row with a vector.
pub fn pair(f: &[Scalar], x: &[Scalar]) -> Scalar {
    f.iter().zip(x).map(|(a, b)| a * b).sum()
}

pub fn is_zero(x: &[Scalar]) -> bool {
    x.iter().all(|z| z.re == 0.0 && z.im == 0.0)
}

/// Parses an inline vector: comma-separated reals or `re:im` pairs.
pub fn parse_inline(text: &str) -> Result<Vec<Scalar>> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let parse =
                |s: &str| s.trim().parse::<f64>().map_err(|_| Error::invalid(format!("cannot parse scalar {tok:?}")));
            let z = match tok.split_once(':') {
                Some((re, im)) => Scalar::new(parse(re)?, parse(im)?),
                None => Scalar::new(parse(tok)?, 0.0),
            };
            if z.re.is_finite() && z.im.is_finite() {
                Ok(z)
            } else {
                Err(Error::NonFinite("inline vector"))
            }
        })
        .collect()
}
