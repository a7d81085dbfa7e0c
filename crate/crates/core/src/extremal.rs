//! Search for vectors that come closest to equality in the uncertainty inequality.
//!
//! Candidates are synthesized from the second frame: for every support `S` of
//! its coefficient space (by increasing size, lexicographic) the search tries
//! unit coefficients on `S` and then seeded random coefficients. Once the
//! exhaustive pass reaches the cardinality cap or the budget, remaining budget
//! goes to random supports.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coherence::{cross_coherence, CrossCoherence};
use crate::error::{Error, Result};
use crate::frame::{synthesis, CoefficientFunction, Frame};
use crate::scalar::{self, Scalar, ScalarRepr};
use crate::subsets::{self, mask_indices};
use crate::uncertainty::{uncertainty_check_with, UncertaintyReport, UNCERTAINTY_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalOptions {
    /// Maximum number of candidate vectors evaluated.
    pub budget: usize,
    /// Largest support size in the exhaustive pass.
    pub max_card: usize,
    /// Random coefficient draws per support, in addition to unit coefficients.
    pub draws_per_support: usize,
    pub eps: f64,
    pub seed: u64,
}

impl ExtremalOptions {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self { budget, max_card: 3, draws_per_support: 1, eps: crate::DEFAULT_SUPPORT_EPS, seed }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Extremum {
    pub value: f64,
    pub bound: f64,
    pub x: Vec<ScalarRepr>,
    pub report: UncertaintyReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub candidates: usize,
    pub exhaustive_through: usize,
    /// Smallest observed `lhs1`.
    pub min_lhs1: Extremum,
    /// Smallest observed `lhs2`.
    pub min_lhs2: Extremum,
    /// Both minima stay above their bounds minus the verification tolerance.
    pub consistent: bool,
}

pub const BUDGET_LIMIT: usize = 10_000_000;

pub fn extremal_search(f: &Frame, g: &Frame, opts: ExtremalOptions) -> Result<ExtremalReport> {
    if opts.budget == 0 || opts.budget > BUDGET_LIMIT {
        return Err(Error::GuardExceeded { count: opts.budget as u128, limit: BUDGET_LIMIT as u128 });
    }
    let coh = cross_coherence(f, g)?;
    let n = g.len();
    if n > 64 {
        return Err(Error::GuardExceeded { count: n as u128, limit: 64 });
    }
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut search = Search { f, g, coh, eps: opts.eps, best1: None, best2: None, candidates: 0 };

    let mut exhaustive_through = 0;
    'levels: for k in 1..=opts.max_card.min(n) {
        for mask in subsets::combinations(n, k) {
            search.evaluate(coefficients_on(n, mask, |_| Scalar::new(1.0, 0.0)))?;
            for _ in 0..opts.draws_per_support {
                if search.candidates >= opts.budget {
                    break 'levels;
                }
                search.evaluate(coefficients_on(n, mask, |_| field.sample(&mut rng)))?;
            }
            if search.candidates >= opts.budget {
                break 'levels;
            }
        }
        exhaustive_through = k;
    }
    while search.candidates < opts.budget {
        let k = rng.random_range(1..=n);
        let mask = subsets::mask_from(&sample(&mut rng, n, k).into_vec());
        search.evaluate(coefficients_on(n, mask, |_| field.sample(&mut rng)))?;
    }

    let to_extremum = |best: Option<Best>, first: bool| {
        let (value, x, report) = best.ok_or(Error::invalid("no nonzero candidate vector was produced"))?;
        Ok::<_, Error>(Extremum {
            value,
            bound: if first { report.bound1 } else { report.bound2 },
            x: scalar::encode_all(&x, field),
            report,
        })
    };
    let candidates = search.candidates;
    let min_lhs1 = to_extremum(search.best1, true)?;
    let min_lhs2 = to_extremum(search.best2, false)?;
    let consistent =
        min_lhs1.value >= min_lhs1.bound - UNCERTAINTY_TOL && min_lhs2.value >= min_lhs2.bound - UNCERTAINTY_TOL;
    Ok(ExtremalReport { candidates, exhaustive_through, min_lhs1, min_lhs2, consistent })
}

type Best = (f64, Vec<Scalar>, UncertaintyReport);

struct Search<'a> {
    f: &'a Frame,
    g: &'a Frame,
    coh: CrossCoherence,
    eps: f64,
    best1: Option<Best>,
    best2: Option<Best>,
    candidates: usize,
}

impl Search<'_> {
    fn evaluate(&mut self, coeffs: Vec<Scalar>) -> Result<()> {
        self.candidates += 1;
        let x = synthesis(self.g, &CoefficientFunction::on_frame(self.g, coeffs)?)?;
        if scalar::norm2(&x) < 1e-12 {
            return Ok(());
        }
        let r = uncertainty_check_with(self.f, self.g, self.coh, &x, self.eps)?;
        update(&mut self.best1, r.lhs1, &x, &r);
        update(&mut self.best2, r.lhs2, &x, &r);
        Ok(())
    }
}

fn coefficients_on(n: usize, mask: u64, mut value: impl FnMut(usize) -> Scalar) -> Vec<Scalar> {
    let mut c = vec![Scalar::new(0.0, 0.0); n];
    for i in mask_indices(mask) {
        c[i] = value(i);
    }
    c
}

fn update(best: &mut Option<Best>, value: f64, x: &[Scalar], r: &UncertaintyReport) {
    // strict improvement keeps the earliest minimizer
    if best.as_ref().is_none_or(|(v, _, _)| value < *v) {
        *best = Some((value, x.to_vec(), r.clone()));
    }
}
