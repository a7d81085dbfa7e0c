//! Test-only reference implementations, written independently of the library
//! solvers: plain bit loops over all 2^n supports and Gram-Schmidt projection
//! instead of SVD least squares.
#![allow(dead_code)]

use frameup::{Frame, Scalar};
use rand::Rng;

pub const ZERO: Scalar = Scalar::new(0.0, 0.0);

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| y.conj() * x).sum()
}

fn norm(a: &[Scalar]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Distance from `h` to the span of `columns`.
pub fn span_residual(columns: &[Vec<Scalar>], h: &[Scalar]) -> f64 {
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for col in columns {
        let scale = norm(col);
        let mut v = col.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&v, q);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let r = norm(&v);
        if r > 1e-10 * scale.max(f64::MIN_POSITIVE) {
            basis.push(v.iter().map(|z| z / r).collect());
        }
    }
    let mut res = h.to_vec();
    for _ in 0..2 {
        for q in &basis {
            let c = dot(&res, q);
            for (ri, qi) in res.iter_mut().zip(q) {
                *ri -= c * qi;
            }
        }
    }
    norm(&res)
}

/// Weighted columns `w_i τ_i` of the atoms in `mask`.
pub fn columns(frame: &Frame, mask: u64) -> Vec<Vec<Scalar>> {
    (0..frame.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| frame.vector(i).iter().map(|z| z * frame.space().weight(i)).collect())
        .collect()
}

/// Feasibility of every support, indexed by mask.
pub fn feasible_masks(frame: &Frame, h: &[Scalar], tol: f64) -> Vec<bool> {
    (0..1u64 << frame.len()).map(|m| span_residual(&columns(frame, m), h) <= tol).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOptimum {
    pub objective: f64,
    /// Every feasible support attaining the objective.
    pub minimizers: Vec<u64>,
}

/// Fewest atoms among feasible supports of size at most `max_card`.
pub fn oracle_l0(frame: &Frame, h: &[Scalar], max_card: usize, tol: f64) -> Option<OracleOptimum> {
    let feasible = feasible_masks(frame, h, tol);
    let best = (0..feasible.len() as u64)
        .filter(|&m| feasible[m as usize] && m.count_ones() as usize <= max_card)
        .map(|m| m.count_ones())
        .min()?;
    let minimizers = (0..feasible.len() as u64).filter(|&m| feasible[m as usize] && m.count_ones() == best).collect();
    Some(OracleOptimum { objective: best as f64, minimizers })
}

/// Least total weight among feasible supports; weights within
/// `1e-12 · total` of the minimum count as ties.
pub fn oracle_measure(frame: &Frame, h: &[Scalar], tol: f64) -> Option<OracleOptimum> {
    let feasible = feasible_masks(frame, h, tol);
    let weight = |m: u64| (0..frame.len()).filter(|i| m >> i & 1 == 1).map(|i| frame.space().weight(i)).sum::<f64>();
    let best = (0..feasible.len() as u64).filter(|&m| feasible[m as usize]).map(weight).fold(f64::INFINITY, f64::min);
    if !best.is_finite() {
        return None;
    }
    let slack = 1e-12 * frame.space().total();
    let minimizers =
        (0..feasible.len() as u64).filter(|&m| feasible[m as usize] && weight(m) - best <= slack).collect();
    Some(OracleOptimum { objective: best, minimizers })
}

pub fn mask_of(support: &[usize]) -> u64 {
    support.iter().fold(0, |m, &i| m | 1 << i)
}

/// Nonzero random scalar of the frame's field, bounded away from zero.
pub fn coefficient<R: Rng>(frame: &Frame, rng: &mut R) -> Scalar {
    loop {
        let re = rng.random_range(-2.0..2.0);
        let im = if frame.field() == frameup::Field::Complex { rng.random_range(-2.0..2.0) } else { 0.0 };
        let z = Scalar::new(re, im);
        if z.norm() > 0.1 {
            return z;
        }
    }
}

/// Random coefficients on a uniformly chosen support of size `k`.
pub fn planted<R: Rng>(frame: &Frame, k: usize, rng: &mut R) -> Vec<Scalar> {
    let n = frame.len();
    let mut c = vec![ZERO; n];
    for i in rand::seq::index::sample(rng, n, k) {
        c[i] = coefficient(frame, rng);
    }
    c
}

/// `Σ w_i c_i τ_i`, computed directly.
pub fn synthesize(frame: &Frame, c: &[Scalar]) -> Vec<Scalar> {
    let mut h = vec![ZERO; frame.dim()];
    for (i, ci) in c.iter().enumerate() {
        let w = frame.space().weight(i);
        for (hj, tj) in h.iter_mut().zip(frame.vector(i)) {
            *hj += w * ci * tj;
        }
    }
    h
}
