//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion does.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use frameup::coherence::Threshold;
use frameup::io;
use frameup::probe::ProbeReport;
use frameup::scalar;
use frameup::validate::validate_frame;
use frameup::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{mask_of, oracle_l0, oracle_measure, planted, synthesize};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn frameup_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_frameup")).args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn real(v: f64) -> Scalar {
    Scalar::new(v, 0.0)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let mut notes = Vec::new();
    let mut ok = true;
    for d in [4usize, 9, 16] {
        let prefix = dir.path().join(format!("pair{d}.json"));
        let gen = frameup_cli(&["gen", "--kind", "dft-pair", "--d", &d.to_string(), "--out", path_str(&prefix)]);
        assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));
        let x = zoo::picket_fence(d).unwrap();
        let x_path = dir.path().join(format!("x{d}.json"));
        std::fs::write(&x_path, serde_json::to_string(&scalar::encode_all(&x, Field::Complex)).unwrap()).unwrap();
        let check = frameup_cli(&[
            "check",
            "--frame-f",
            path_str(&dir.path().join(format!("pair{d}-identity.json"))),
            "--frame-g",
            path_str(&dir.path().join(format!("pair{d}-dft.json"))),
            "--x-file",
            path_str(&x_path),
        ]);
        assert!(check.status.success(), "{}", String::from_utf8_lossy(&check.stderr));
        let r: UncertaintyReport = serde_json::from_slice(&check.stdout).unwrap();
        let exact = r.supp_f * r.supp_g == d as f64;
        let tight = (r.lhs1 - r.bound1).abs() <= 1e-9;
        ok &= exact && tight;
        notes.push(format!("d={d}: {}x{}, |lhs1-bound1|={:.1e}", r.supp_f, r.supp_g, (r.lhs1 - r.bound1).abs()));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    outcome(ok, format!("{}; {:.0} ms", notes.join(", "), elapsed.as_secs_f64() * 1e3))
}

/// Zoo frames grouped by (d, p, field).
fn cue_groups() -> Vec<(&'static str, Vec<Frame>)> {
    let one = real(1.0);
    let sp4 = zoo::signed_permutation(4, 1.5, &[1, 0, 3, 2], &[one, -one, one, -one]).unwrap();
    let sp3 = zoo::signed_permutation(3, 3.0, &[2, 0, 1], &[-one, one, one]).unwrap();
    let cp4 = zoo::random_parseval_over(4, 6, 11, Field::Complex).unwrap();
    let (id4, dft4) = zoo::dft_pair(4).unwrap();
    vec![
        (
            "d=4,p=1.5,real",
            vec![
                zoo::canonical_lp(4, 1.5).unwrap(),
                zoo::weighted_split(&zoo::canonical_lp(4, 1.5).unwrap(), 2, 3).unwrap(),
                zoo::weighted_split(&sp4, 0, 2).unwrap(),
                sp4,
            ],
        ),
        ("d=3,p=3,real", vec![zoo::canonical_lp(3, 3.0).unwrap(), zoo::weighted_split(&sp3, 1, 4).unwrap(), sp3]),
        (
            "d=4,p=2,complex",
            vec![
                zoo::harmonic_discretization(4, 8, false).unwrap(),
                zoo::harmonic_discretization(4, 8, true).unwrap(),
                zoo::harmonic_discretization(4, 5, false).unwrap(),
                zoo::weighted_split(&dft4, 1, 2).unwrap(),
                zoo::alternate_dual(&cp4, 5).unwrap(),
                cp4,
                id4,
                dft4,
            ],
        ),
        (
            "d=3,p=2,real",
            vec![
                zoo::random_parseval(3, 5, 3).unwrap(),
                zoo::alternate_dual(&zoo::random_parseval(3, 5, 3).unwrap(), 8).unwrap(),
                zoo::weighted_split(&zoo::random_parseval(3, 4, 4).unwrap(), 0, 2).unwrap(),
                zoo::canonical_lp(3, 2.0).unwrap(),
            ],
        ),
    ]
}

/// A vector with an exactly sparse representation in one of the frames or
/// in the standard basis.
fn planted_vector(f: &Frame, g: &Frame, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    loop {
        let x = match rng.random_range(0..3) {
            0 => {
                let k = rng.random_range(1..=f.dim());
                let mut x = vec![common::ZERO; f.dim()];
                for j in rand::seq::index::sample(rng, f.dim(), k) {
                    x[j] = common::coefficient(f, rng);
                }
                x
            }
            1 => synthesize(f, &planted(f, rng.random_range(1..=f.len()), rng)),
            _ => synthesize(g, &planted(g, rng.random_range(1..=g.len()), rng)),
        };
        if !scalar::is_zero(&x) {
            return x;
        }
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut pairs, mut checks, mut violations) = (0, 0, 0);
    let mut ps = Vec::new();
    let mut weighted = false;
    for (_, frames) in cue_groups() {
        for (a, f) in frames.iter().enumerate() {
            for (b, g) in frames.iter().enumerate() {
                if a == b {
                    continue;
                }
                pairs += 1;
                ps.push(f.p());
                weighted |= !f.space().is_counting() || !g.space().is_counting();
                let coh = cross_coherence(f, g).unwrap();
                for _ in 0..1000 {
                    let x = planted_vector(f, g, &mut rng);
                    let r = uncertainty::uncertainty_check_with(f, g, coh, &x, 0.0).unwrap();
                    checks += 1;
                    if !r.holds() {
                        violations += 1;
                    }
                }
            }
        }
    }
    let covers_p = [1.5, 2.0, 3.0].iter().all(|p| ps.contains(p));
    let elapsed = start.elapsed();
    let ok = pairs >= 15 && covers_p && weighted && violations == 0 && elapsed < Duration::from_secs(60);
    outcome(
        ok,
        format!("{pairs} ordered pairs, {checks} vectors, {violations} violations; {:.1} s", elapsed.as_secs_f64()),
    )
}

fn zoo_catalogue() -> Vec<(String, Frame)> {
    let one = real(1.0);
    let i = Scalar::new(0.0, 1.0);
    let (id, dft) = zoo::dft_pair(5).unwrap();
    let parseval = zoo::random_parseval(3, 7, 1).unwrap();
    let cparseval = zoo::random_parseval_over(4, 9, 2, Field::Complex).unwrap();
    vec![
        ("canonical_lp(5,1.5)".into(), zoo::canonical_lp(5, 1.5).unwrap()),
        ("canonical_lp(4,3,complex)".into(), zoo::canonical_lp_over(4, 3.0, Field::Complex).unwrap()),
        (
            "signed_permutation(4,2.5)".into(),
            zoo::signed_permutation(4, 2.5, &[3, 1, 0, 2], &[one, -one, -one, one]).unwrap(),
        ),
        ("signed_permutation(3,2,complex)".into(), zoo::signed_permutation(3, 2.0, &[1, 2, 0], &[i, one, -i]).unwrap()),
        ("dft_pair(5).identity".into(), id),
        ("dft_pair(5).dft".into(), dft),
        ("random_parseval(3,7)".into(), parseval.clone()),
        ("random_parseval(4,9,complex)".into(), cparseval.clone()),
        ("harmonic(4,8)".into(), zoo::harmonic_discretization(4, 8, false).unwrap()),
        ("harmonic(5,5,normalized)".into(), zoo::harmonic_discretization(5, 5, true).unwrap()),
        ("alternate_dual(real)".into(), zoo::alternate_dual(&parseval, 3).unwrap()),
        ("alternate_dual(complex)".into(), zoo::alternate_dual(&cparseval, 4).unwrap()),
        ("weighted_split(mercedes,1,3)".into(), zoo::weighted_split(&zoo::mercedes_benz(), 1, 3).unwrap()),
        (
            "weighted_split(canonical_lp(3,1.5),0,2)".into(),
            zoo::weighted_split(&zoo::canonical_lp(3, 1.5).unwrap(), 0, 2).unwrap(),
        ),
        ("mercedes_benz".into(), zoo::mercedes_benz()),
    ]
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let catalogue = zoo_catalogue();
    for (k, (name, frame)) in catalogue.iter().enumerate() {
        let r = validate_frame(frame, 1000, 1e-9, 300 + k as u64);
        if !r.passed {
            failures.push(format!("{name} ({:.1e}/{:.1e})", r.isometry_residual, r.reconstruction_residual));
        }
    }
    let mut worst: f64 = 0.0;
    for (d, n) in [(4, 8), (5, 5), (8, 16)] {
        let dev = gram_identity_deviation(&zoo::harmonic_discretization(d, n, false).unwrap());
        worst = worst.max(dev);
        if dev > 1e-10 {
            failures.push(format!("harmonic({d},{n}) gram deviation {dev:.1e}"));
        }
    }
    let detail = if failures.is_empty() {
        format!("{} frames x 1000 vectors; worst harmonic Gram deviation {worst:.1e}", catalogue.len())
    } else {
        failures.join(", ")
    };
    outcome(failures.is_empty(), detail)
}

/// Frame for trial `t`: cycles through the Mercedes-Benz frame, random
/// Parseval frames with d in 2..=4 and n <= 6, and the three-atom plane.
fn sparsity_frame(t: u64) -> (String, Frame) {
    match t % 3 {
        0 => ("mercedes_benz".into(), zoo::mercedes_benz()),
        1 => {
            let k = t / 3;
            let d = 2 + (k % 3) as usize;
            let n = d + 1 + ((k / 3) as usize % (6 - d));
            (format!("random_parseval({d},{n},seed={t})"), zoo::random_parseval(d, n, t).unwrap())
        }
        _ => ("three_atom_plane".into(), zoo::three_atom_plane()),
    }
}

/// Planted-recovery trials with the threshold taken from `mode` coherence;
/// returns the number confirmed and a description of the first failure.
fn sparsity_trials(mode: CoherenceMode) -> (usize, Option<String>) {
    let mut confirmed = 0;
    let mut first_failure = None;
    for t in 0..200u64 {
        let (name, frame) = sparsity_frame(t);
        let coh = gram_coherence_with(&frame, mode, PairSet::AllPairs).unwrap();
        let threshold = uniqueness_threshold(coh).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4000 + t);
        let k = rng.random_range(1..=threshold.max_cardinality(frame.len()));
        let c = CoefficientFunction::on_frame(&frame, planted(&frame, k, &mut rng)).unwrap();
        let r = donoho_elad_check_with(&frame, &c, mode).unwrap();
        if r.hypothesis_satisfied && r.confirmed == Some(true) {
            confirmed += 1;
        } else if first_failure.is_none() {
            first_failure = Some(format!(
                "trial {t} {name}: planted {:?}, threshold {:.4}, recovered {:?}, unique {:?}",
                r.planted_support,
                r.threshold.value().unwrap_or(f64::INFINITY),
                r.recovered_support,
                r.unique
            ));
        }
    }
    (confirmed, first_failure)
}

fn criterion_4() -> Outcome {
    let (confirmed, first_failure) = sparsity_trials(CoherenceMode::Raw);
    let (normalized, _) = sparsity_trials(CoherenceMode::Normalized);
    let three = uniqueness_threshold(gram_coherence(&zoo::three_atom_plane()).unwrap()).unwrap();
    let expected = (1.0 + 2f64.sqrt()) / 2.0;
    let three_ok = matches!(three, Threshold::Bounded(v) if (v - expected).abs() <= 1e-12);
    let mut detail = format!(
        "{confirmed}/200 unique recoveries with raw coherence ({normalized}/200 with unit-normalized atoms, for comparison); \
         three-atom threshold {:?}",
        three.value()
    );
    if let Some(f) = first_failure {
        detail.push_str(&format!("; first failure: {f}"));
    }
    outcome(confirmed == 200 && three_ok, detail)
}

fn criterion_5() -> Outcome {
    let (mut agree, mut equal_objectives, mut infeasible) = (0, 0, 0);
    let mut disagreements = Vec::new();
    for s in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + s);
        let field = if s % 2 == 0 { Field::Real } else { Field::Complex };
        let d = rng.random_range(2..=5usize);
        let n = rng.random_range(d + 1..=12);
        let frame = zoo::random_parseval_over(d, n, s, field).unwrap();
        let k = rng.random_range(1..=d);
        let h = synthesize(&frame, &planted(&frame, k, &mut rng));
        let max_card = rng.random_range(1..=d);
        let problem = SparseProblem::new(&frame, h.clone()).unwrap();
        let tol = problem.eps_residual();

        let oracle = oracle_l0(&frame, &h, max_card, tol);
        let lib = l0_brute_force(&problem, max_card);
        let same = match (&lib, &oracle) {
            (Err(Error::Infeasible { .. }), None) => {
                infeasible += 1;
                true
            }
            (Ok(sol), Some(o)) => {
                sol.support_cardinality as f64 == o.objective
                    && o.minimizers.contains(&mask_of(&sol.support))
                    && sol.unique == (o.minimizers.len() == 1)
            }
            _ => false,
        };
        if same {
            agree += 1;
        } else {
            disagreements.push(s);
        }

        let full = l0_brute_force(&problem, d).unwrap();
        let measure = measure_min_brute_force(&problem).unwrap();
        if measure.support == full.support
            && measure.unique == full.unique
            && measure.support_weight == full.support_cardinality as f64
        {
            equal_objectives += 1;
        }
    }
    let mut detail =
        format!("oracle agreement {agree}/100 ({infeasible} infeasible); measure = l0 in {equal_objectives}/100");
    if !disagreements.is_empty() {
        detail.push_str(&format!("; disagreeing seeds {disagreements:?}"));
    }
    outcome(agree == 100 && equal_objectives == 100, detail)
}

fn criterion_6() -> Outcome {
    let counting = [
        zoo::mercedes_benz(),
        zoo::three_atom_plane(),
        zoo::random_parseval(3, 5, 7).unwrap(),
        zoo::random_parseval_over(2, 4, 8, Field::Complex).unwrap(),
        zoo::canonical_lp(3, 2.0).unwrap(),
    ];
    let weighted = [
        zoo::weighted_split(&zoo::three_atom_plane(), 0, 2).unwrap(),
        zoo::weighted_split(&zoo::mercedes_benz(), 1, 3).unwrap(),
        zoo::harmonic_discretization(2, 4, false).unwrap(),
        zoo::harmonic_discretization(3, 6, false).unwrap(),
    ];
    let (mut de_matches, mut de_trials, mut oracle_matches, mut oracle_trials) = (0, 0, 0, 0);
    let mut identical = true;
    let mut counterexamples = 0;

    for (k, frame) in counting.iter().chain(&weighted).enumerate() {
        let seed = 600 + k as u64;
        let report = conjecture_probe(frame, 40, seed).unwrap();
        let again = conjecture_probe(frame, 40, seed).unwrap();
        identical &= serde_json::to_string(&report).unwrap() == serde_json::to_string(&again).unwrap();
        counterexamples += report.counterexamples.len();

        for variant in &report.variants {
            for t in &variant.trials {
                let h = scalar::decode_all(&t.target);
                let tol = 1e-8 * scalar::norm2(&h);
                let o = oracle_measure(frame, &h, tol).expect("planted target is feasible");
                let verdict = o.minimizers == [mask_of(&t.planted_support)];
                oracle_trials += 1;
                if verdict == t.confirmed {
                    oracle_matches += 1;
                }
            }
        }
        if frame.space().is_counting() {
            for t in &report.variant(PairSet::AllPairs).trials {
                let c = CoefficientFunction::on_frame(frame, scalar::decode_all(&t.planted_coefficients)).unwrap();
                let de = donoho_elad_check(frame, &c).unwrap();
                de_trials += 1;
                if de.hypothesis_satisfied && de.confirmed == Some(t.confirmed) {
                    de_matches += 1;
                }
            }
        }
    }

    // reruns through the command line produce identical files
    let dir = tempfile::tempdir().unwrap();
    let frame_path = dir.path().join("split.json");
    io::write_frame(&weighted[0], &frame_path).unwrap();
    let mut bytes = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("probe{run}.json"));
        let status = frameup_cli(&[
            "probe",
            "--frame",
            path_str(&frame_path),
            "--trials",
            "25",
            "--seed",
            "3",
            "--out",
            path_str(&out),
        ]);
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
        bytes.push(std::fs::read(&out).unwrap());
    }
    identical &= bytes[0] == bytes[1];
    let parsed: ProbeReport = serde_json::from_slice(&bytes[0]).unwrap();
    let embedded_ok = parsed.counterexamples.iter().all(|c| Frame::try_from(c.frame.clone()).is_ok());

    let ok = de_matches == de_trials && oracle_matches == oracle_trials && identical && embedded_ok;
    outcome(
        ok,
        format!(
            "Donoho-Elad match {de_matches}/{de_trials}; oracle re-verification {oracle_matches}/{oracle_trials}; \
             reruns identical: {identical}; {counterexamples} counterexamples recorded"
        ),
    )
}

fn criterion_7() -> Outcome {
    let catalogue = zoo_catalogue();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut exact = 0;
    let mut nontrivial = 0;
    for _ in 0..100 {
        let (_, frame) = &catalogue[rng.random_range(0..catalogue.len())];
        let x = planted_vector(frame, frame, &mut rng);
        let c = loop {
            let z = common::coefficient(frame, &mut rng) * 10f64.powi(rng.random_range(-6..=6));
            if z.norm() > 0.0 {
                break z;
            }
        };
        let cx: Vec<Scalar> = x.iter().map(|v| c * v).collect();
        let a = support_measure(&analysis(frame, &x).unwrap(), DEFAULT_SUPPORT_EPS);
        let b = support_measure(&analysis(frame, &cx).unwrap(), DEFAULT_SUPPORT_EPS);
        if a == b {
            exact += 1;
        }
        if a < frame.space().total() {
            nontrivial += 1;
        }
    }
    outcome(exact == 100, format!("{exact}/100 exact ({nontrivial} with a proper support)"))
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("donoho-stark equality fixtures", criterion_1),
        ("uncertainty soundness sweep", criterion_2),
        ("frame axioms", criterion_3),
        ("donoho-elad recovery", criterion_4),
        ("oracle equivalence", criterion_5),
        ("probe integrity", criterion_6),
        ("scale invariance", criterion_7),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {} {name}: {} ({})", k + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
        if !o.passed {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
