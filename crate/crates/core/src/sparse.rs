//! Exact sparse recovery by exhaustive support enumeration.
//!
//! The dictionary is weighted synthesis, `h = Σ_i w_i c_i τ_i`. Two objectives
//! are solved exactly:
//!
//! * ℓ0: fewest nonzero coefficients ([`l0_brute_force`]);
//! * measure: smallest total weight of the support ([`measure_min_brute_force`]).
//!
//! Both problems are NP-hard in general, so enumeration is capped by
//! [`ENUMERATION_LIMIT`](crate::subsets::ENUMERATION_LIMIT). Candidate
//! supports are evaluated in parallel; the winner is always the first
//! fitting support in the global order, so results do not depend on
//! scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherence::{gram_coherence_with, uniqueness_threshold, CoherenceMode, PairSet, Threshold};
use crate::error::{Error, Result};
use crate::frame::{synthesis, CoefficientFunction, Frame};
use crate::linalg;
use crate::scalar::{self, Scalar, ScalarRepr};
use crate::subsets::{self, mask_indices};

/// Relative factor for the default residual tolerance `1e-8 · ‖h‖`.
pub const DEFAULT_RESIDUAL_FACTOR: f64 = 1e-8;

/// Parallel evaluation batch for the measure-ordered scan.
const SCAN_CHUNK: usize = 4096;

#[derive(Debug, Clone)]
pub struct SparseProblem<'a> {
    frame: &'a Frame,
    target: Vec<Scalar>,
    eps_residual: f64,
}

impl<'a> SparseProblem<'a> {
    /// Problem with the default residual tolerance `1e-8 · ‖h‖₂`.
    pub fn new(frame: &'a Frame, target: Vec<Scalar>) -> Result<Self> {
        let eps = DEFAULT_RESIDUAL_FACTOR * scalar::norm2(&target);
        Self::with_tolerance(frame, target, eps)
    }

    pub fn with_tolerance(frame: &'a Frame, target: Vec<Scalar>, eps_residual: f64) -> Result<Self> {
        frame.check_vector(&target)?;
        if !(eps_residual >= 0.0 && eps_residual.is_finite()) {
            return Err(Error::invalid(format!("residual tolerance must be non-negative, got {eps_residual}")));
        }
        if frame.len() > 64 {
            return Err(Error::GuardExceeded { count: frame.len() as u128, limit: 64 });
        }
        Ok(Self { frame, target, eps_residual })
    }

    pub fn frame(&self) -> &Frame {
        self.frame
    }

    pub fn target(&self) -> &[Scalar] {
        &self.target
    }

    pub fn eps_residual(&self) -> f64 {
        self.eps_residual
    }

    /// Least-squares fit restricted to a support; `Some` when within tolerance.
    fn fit(&self, mask: u64) -> Option<Fit> {
        let columns: Vec<Vec<Scalar>> = mask_indices(mask)
            .map(|i| {
                let w = self.frame.space().weight(i);
                self.frame.vector(i).iter().map(|z| z * w).collect()
            })
            .collect();
        let refs: Vec<&[Scalar]> = columns.iter().map(Vec::as_slice).collect();
        let ls = linalg::least_squares(&refs, &self.target);
        (ls.residual <= self.eps_residual).then_some(Fit { mask, coefficients: ls.coefficients, residual: ls.residual })
    }

    fn solution(&self, fit: Fit, unique: bool) -> SparseSolution {
        let mut values = vec![Scalar::new(0.0, 0.0); self.frame.len()];
        for (i, c) in mask_indices(fit.mask).zip(fit.coefficients) {
            values[i] = c;
        }
        let support: Vec<usize> = mask_indices(fit.mask).collect();
        SparseSolution {
            support_cardinality: support.len(),
            support_weight: self.frame.space().measure_of_mask(fit.mask),
            support,
            coefficients: CoefficientFunction::on_frame(self.frame, values).expect("length matches the frame"),
            residual: fit.residual,
            unique,
        }
    }
}

#[derive(Debug, Clone)]
struct Fit {
    mask: u64,
    coefficients: Vec<Scalar>,
    residual: f64,
}

#[derive(Debug, Clone)]
pub struct SparseSolution {
    pub coefficients: CoefficientFunction,
    pub support: Vec<usize>,
    pub support_cardinality: usize,
    pub support_weight: f64,
    pub residual: f64,
    /// No other support at the same objective level fits.
    pub unique: bool,
}

impl SparseSolution {
    pub fn record(&self, field: scalar::Field) -> SolutionRecord {
        SolutionRecord {
            status: "solved".into(),
            support: self.support.clone(),
            support_cardinality: self.support_cardinality,
            support_weight: self.support_weight,
            residual: self.residual,
            unique: self.unique,
            coefficients: scalar::encode_all(self.coefficients.values(), field),
        }
    }
}

/// Serialized form of a [`SparseSolution`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub status: String,
    pub support: Vec<usize>,
    pub support_cardinality: usize,
    pub support_weight: f64,
    pub residual: f64,
    pub unique: bool,
    pub coefficients: Vec<ScalarRepr>,
}

/// Fewest-atom representation, scanning supports by size then lexicographically.
pub fn l0_brute_force(problem: &SparseProblem<'_>, max_card: usize) -> Result<SparseSolution> {
    let n = problem.frame.len();
    if max_card > n {
        return Err(Error::invalid(format!("max cardinality {max_card} exceeds atom count {n}")));
    }
    subsets::check_guard(subsets::binomial(n, max_card))?;
    for k in 0..=max_card {
        let fits: Vec<Fit> = subsets::combinations(n, k).into_par_iter().filter_map(|mask| problem.fit(mask)).collect();
        let unique = fits.len() == 1;
        if let Some(first) = fits.into_iter().next() {
            return Ok(problem.solution(first, unique));
        }
    }
    Err(Error::Infeasible { max_card })
}

/// Measure-minimal representation. Supports are ordered by total weight, then
/// cardinality, then lexicographically; weights closer than one part in
/// 10^12 of the total measure count as equal.
pub fn measure_min_brute_force(problem: &SparseProblem<'_>) -> Result<SparseSolution> {
    let n = problem.frame.len();
    subsets::check_guard(1u128 << n)?;
    let space = problem.frame.space();
    let quantum = space.total() * 1e-12;
    let key = |mask: u64| (space.measure_of_mask(mask) / quantum).round() as u64;

    let mut order: Vec<(u64, u32, u64)> = (0..1u64 << n).map(|m| (key(m), m.count_ones(), m)).collect();
    order.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then_with(|| subsets::lex_cmp(a.2, b.2)));

    for (start, chunk) in order.chunks(SCAN_CHUNK).enumerate() {
        let hit = chunk.par_iter().enumerate().find_map_first(|(i, &(_, _, m))| problem.fit(m).map(|f| (i, f)));
        if let Some((i, fit)) = hit {
            let pos = start * SCAN_CHUNK + i;
            let level = order[pos].0;
            let unique = !order[pos + 1..]
                .iter()
                .take_while(|e| e.0 == level)
                .collect::<Vec<_>>()
                .par_iter()
                .any(|e| problem.fit(e.2).is_some());
            return Ok(problem.solution(fit, unique));
        }
    }
    Err(Error::Infeasible { max_card: n })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DonohoEladReport {
    pub coherence: f64,
    pub mode: CoherenceMode,
    pub threshold: Threshold,
    pub planted_support: Vec<usize>,
    pub planted_cardinality: usize,
    pub hypothesis_satisfied: bool,
    /// Filled only when the hypothesis holds.
    pub recovered_support: Option<Vec<usize>>,
    pub unique: Option<bool>,
    /// Planted support recovered exactly and uniquely; `None` outside the hypothesis.
    pub confirmed: Option<bool>,
}

/// Plants `planted`, synthesizes `h`, and when `‖planted‖₀` is below the
/// coherence threshold checks that ℓ0 minimization returns exactly the planted
/// support as its unique solution.
pub fn donoho_elad_check(frame: &Frame, planted: &CoefficientFunction) -> Result<DonohoEladReport> {
    donoho_elad_check_with(frame, planted, CoherenceMode::Raw)
}

pub fn donoho_elad_check_with(
    frame: &Frame,
    planted: &CoefficientFunction,
    mode: CoherenceMode,
) -> Result<DonohoEladReport> {
    if frame.p() != 2.0 {
        return Err(Error::invalid("the sparsity theorem needs a Hilbert frame (p = 2)"));
    }
    let h = synthesis(frame, planted)?;
    let coherence = gram_coherence_with(frame, mode, PairSet::AllPairs)?;
    let threshold = uniqueness_threshold(coherence)?;
    let planted_support: Vec<usize> =
        (0..frame.len()).filter(|&i| planted.values()[i] != Scalar::new(0.0, 0.0)).collect();
    let planted_cardinality = planted_support.len();
    let hypothesis_satisfied = threshold.admits(planted_cardinality as f64);
    let mut report = DonohoEladReport {
        coherence,
        mode,
        threshold,
        planted_support,
        planted_cardinality,
        hypothesis_satisfied,
        recovered_support: None,
        unique: None,
        confirmed: None,
    };
    if hypothesis_satisfied {
        let problem = SparseProblem::new(frame, h)?;
        match l0_brute_force(&problem, planted_cardinality) {
            Ok(sol) => {
                report.confirmed = Some(sol.unique && sol.support == report.planted_support);
                report.unique = Some(sol.unique);
                report.recovered_support = Some(sol.support);
            }
            Err(Error::Infeasible { .. }) => report.confirmed = Some(false),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::MeasureSpace;
    use crate::scalar::Field;
    use crate::zoo;

    fn real(v: &[f64]) -> Vec<Scalar> {
        v.iter().map(|&r| Scalar::new(r, 0.0)).collect()
    }

    #[test]
    fn single_atom_in_canonical_basis() {
        let f = zoo::canonical_lp(4, 2.0).unwrap();
        let p = SparseProblem::new(&f, real(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        let s = l0_brute_force(&p, 4).unwrap();
        assert_eq!(s.support, vec![0]);
        assert_eq!(s.support_cardinality, 1);
        assert!(s.unique);
        let p = SparseProblem::new(&f, real(&[0.0, 0.0, 3.0, 0.0])).unwrap();
        assert_eq!(l0_brute_force(&p, 2).unwrap().support, vec![2]);
    }

    #[test]
    fn three_atom_plane_examples() {
        let f = zoo::three_atom_plane();
        let p = SparseProblem::new(&f, real(&[1.0, 0.0])).unwrap();
        let s = l0_brute_force(&p, 3).unwrap();
        assert_eq!((s.support.clone(), s.unique), (vec![0], true));

        let p = SparseProblem::new(&f, real(&[1.0, 1.0])).unwrap();
        let s = l0_brute_force(&p, 3).unwrap();
        assert_eq!((s.support.clone(), s.unique), (vec![2], true));
        assert!((s.coefficients.values()[2] - Scalar::new(2f64.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_target_has_empty_support() {
        let f = zoo::mercedes_benz();
        let p = SparseProblem::new(&f, real(&[0.0, 0.0])).unwrap();
        let s = l0_brute_force(&p, 2).unwrap();
        assert!(s.support.is_empty() && s.unique);
        assert_eq!(measure_min_brute_force(&p).unwrap().support_weight, 0.0);
    }

    #[test]
    fn infeasible_and_guard() {
        let f = zoo::canonical_lp(3, 2.0).unwrap();
        let p = SparseProblem::new(&f, real(&[1.0, 1.0, 1.0])).unwrap();
        assert!(matches!(l0_brute_force(&p, 2), Err(Error::Infeasible { max_card: 2 })));
        assert!(l0_brute_force(&p, 4).is_err());

        let big = zoo::canonical_lp(30, 2.0).unwrap();
        let mut h = vec![Scalar::new(0.0, 0.0); 30];
        h[0] = Scalar::new(1.0, 0.0);
        let p = SparseProblem::new(&big, h).unwrap();
        assert!(matches!(l0_brute_force(&p, 15), Err(Error::GuardExceeded { .. })));
        assert!(matches!(measure_min_brute_force(&p), Err(Error::GuardExceeded { .. })));
        assert_eq!(l0_brute_force(&p, 1).unwrap().support, vec![0]);
    }

    #[test]
    fn measure_objective_prefers_light_atoms() {
        // atoms e1+e2 (weight 1), e1 (weight 0.5), e2 (weight 0.5)
        let space = MeasureSpace::new(vec![1.0, 0.5, 0.5]).unwrap();
        let f = Frame::hilbert(space, Field::Real, 2, real(&[1.0, 1.0, 1.0, 0.0, 0.0, 1.0])).unwrap();
        let p = SparseProblem::new(&f, real(&[1.0, 1.0])).unwrap();
        // weight tie {0} vs {1,2}: the smaller cardinality wins, and the tie is not unique
        let s = measure_min_brute_force(&p).unwrap();
        assert_eq!(s.support, vec![0]);
        assert_eq!(s.support_weight, 1.0);
        assert!(!s.unique);
        let l0 = l0_brute_force(&p, 2).unwrap();
        assert_eq!(l0.support, vec![0]);
        assert!(l0.unique);
    }

    #[test]
    fn split_copies_undercut_the_planted_pair() {
        // splitting v in {e1, e2, v} gives weights (1, 1, ½, ½); a coefficient
        // planted on both copies is represented by either copy alone at weight ½
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let base =
            Frame::hilbert(MeasureSpace::counting(3).unwrap(), Field::Real, 2, real(&[1.0, 0.0, 0.0, 1.0, s, s]))
                .unwrap();
        let split = zoo::weighted_split(&base, 2, 2).unwrap();
        assert_eq!(split.space().weights(), &[1.0, 1.0, 0.5, 0.5]);
        let planted = CoefficientFunction::on_frame(&split, real(&[0.0, 0.0, 1.0, 1.0])).unwrap();
        let h = synthesis(&split, &planted).unwrap();
        let p = SparseProblem::new(&split, h).unwrap();
        let sol = measure_min_brute_force(&p).unwrap();
        assert_eq!(sol.support, vec![2]);
        assert_eq!(sol.support_weight, 0.5);
        assert!(!sol.unique);
    }

    #[test]
    fn harmonic_single_atom_recovery() {
        let f = zoo::harmonic_discretization(2, 4, false).unwrap();
        let h: Vec<Scalar> = f.vector(0).iter().map(|z| z * 0.25).collect();
        let p = SparseProblem::new(&f, h).unwrap();
        let s = measure_min_brute_force(&p).unwrap();
        assert_eq!(s.support, vec![0]);
        assert_eq!(s.support_weight, 0.25);
        assert!(s.unique);
        assert!((s.coefficients.values()[0] - Scalar::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn counting_measure_reduces_to_l0() {
        let f = zoo::random_parseval(3, 6, 4).unwrap();
        let planted = CoefficientFunction::on_frame(&f, real(&[0.0, 1.5, 0.0, 0.0, -0.7, 0.0])).unwrap();
        let h = synthesis(&f, &planted).unwrap();
        let p = SparseProblem::new(&f, h).unwrap();
        let a = l0_brute_force(&p, 3).unwrap();
        let b = measure_min_brute_force(&p).unwrap();
        assert_eq!(a.support, b.support);
        assert_eq!(a.support_cardinality as f64, b.support_weight);
        assert_eq!(a.unique, b.unique);
    }

    #[test]
    fn donoho_elad_examples() {
        let f = zoo::three_atom_plane();
        let planted = CoefficientFunction::on_frame(&f, real(&[0.0, 2.0, 0.0])).unwrap();
        let r = donoho_elad_check(&f, &planted).unwrap();
        assert!(r.hypothesis_satisfied);
        assert_eq!(r.confirmed, Some(true));
        assert_eq!(r.recovered_support, Some(vec![1]));

        let planted = CoefficientFunction::on_frame(&f, real(&[1.0, 2.0, 0.0])).unwrap();
        let r = donoho_elad_check(&f, &planted).unwrap();
        assert!(!r.hypothesis_satisfied);
        assert_eq!(r.confirmed, None);
        assert_eq!(r.recovered_support, None);

        let mb = zoo::mercedes_benz();
        let planted = CoefficientFunction::on_frame(&mb, real(&[0.0, 0.0, -1.0])).unwrap();
        assert_eq!(donoho_elad_check(&mb, &planted).unwrap().confirmed, Some(true));
    }
}
