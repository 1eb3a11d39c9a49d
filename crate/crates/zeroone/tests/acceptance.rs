//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measured values (visible with `--nocapture`).
//!
//! The master seed is pinned so the empirical surrogates are stable across
//! reruns and worker counts; every derived stream below descends from it.
//! The cube edge-expansion stress case at k = 5 enumerates 2^31 cuts and
//! is opt-in: `cargo test --test acceptance -- --ignored`.

use std::process::Command;
use std::time::Instant;

use num::{BigRational, One, ToPrimitive};

use zeroone::bitgeom::{hypercube_skeleton, PointSet};
use zeroone::certify::{certify_auto, certify_projection};
use zeroone::expansion::{
    cheeger_bounds, edge_expansion_exact, edge_expansion_exact_with, evaluate_cut,
    harper_vertex_bound, vertex_expansion_exact, ExpansionKind,
};
use zeroone::harness::{coverage_experiment, max_load_experiment, run_trials};
use zeroone::harness::{CellSpec, CheckKind, ExperimentConfig, Limits};
use zeroone::hullgraph::extract_skeleton;
use zeroone::oracle::skeleton_by_facet_enumeration;
use zeroone::randmodels::{derive_seed, ModelParams, ModelSpec};
use zeroone::walk::{build_chain, mixing_time, tv_trajectory};
use zeroone::Rational;

/// Pinned master seed for all empirical criteria.
const MASTER: u64 = 0xC0FFEE;

fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(n.into(), d.into())
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap()
}

/// Criterion 1: edge expansion of the k-cube is exactly 1 for k = 1..4,
/// with a valid witness. Budget: 5 s.
#[test]
fn criterion_01_cube_edge_ground_truth() {
    let t0 = Instant::now();
    for k in 1..=4 {
        let g = hypercube_skeleton(k).unwrap();
        let e = edge_expansion_exact(&g).unwrap();
        assert_eq!(e.value, BigRational::one(), "cube k={k}");
        let (cut, value) = evaluate_cut(&g, ExpansionKind::Edge, &e.witness);
        assert_eq!(cut, e.cut_size);
        assert_eq!(value, e.value);
        assert!(!e.witness.is_empty() && 2 * e.witness.len() <= g.n());
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "budget 5 s, took {elapsed:.2} s");
    println!("criterion 1 (cube edge ground truth k=1..4): PASS in {elapsed:.2} s");
}

/// Criterion 1, opt-in stress case: k = 5 enumerates 2^31 cuts.
#[test]
#[ignore]
fn criterion_01_stress_cube5() {
    let t0 = Instant::now();
    let g = hypercube_skeleton(5).unwrap();
    let e = edge_expansion_exact_with(&g, 32).unwrap();
    assert_eq!(e.value, BigRational::one());
    println!(
        "criterion 1 stress (cube edge k=5, 2^31 cuts): PASS in {:.1} s",
        t0.elapsed().as_secs_f64()
    );
}

/// Criterion 2: cube vertex expansion matches Harper's profile for
/// k = 1..4 and clears 1/(2 sqrt k) for k <= 30. Budget: 10 s.
#[test]
fn criterion_02_cube_vertex_ground_truth() {
    let t0 = Instant::now();
    for k in 1..=4 {
        let g = hypercube_skeleton(k).unwrap();
        let brute = vertex_expansion_exact(&g).unwrap();
        assert_eq!(harper_vertex_bound(k).unwrap(), brute.value, "k = {k}");
    }
    for k in 1..=30usize {
        let h = harper_vertex_bound(k).unwrap();
        // h >= 1/(2 sqrt k)  <=>  4k h^2 >= 1, exactly
        let lhs = BigRational::from_integer((4 * k as u64).into()) * &h * &h;
        assert!(lhs >= BigRational::one(), "harper({k}) = {h} below 1/(2 sqrt k)");
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "budget 10 s, took {elapsed:.2} s");
    println!("criterion 2 (cube vertex ground truth, Harper k<=30): PASS in {elapsed:.2} s");
}

/// The 200 random small point sets shared by criteria 3 and 5.
fn small_random_sets() -> Vec<PointSet> {
    let mut sets = Vec::with_capacity(200);
    for t in 0..200u64 {
        let d = if t % 2 == 0 { 3 } else { 4 };
        let span = if d == 3 { 5 } else { 9 }; // n in 4..=8 resp. 4..=12
        let n = 4 + (t / 2) % span;
        let seed = derive_seed(MASTER, &[3, t]);
        let spec = ModelSpec { d, params: ModelParams::Uniform { n }, seed };
        sets.push(spec.sample_points().unwrap());
    }
    sets
}

/// Criterion 3: the LP skeleton matches the facet-enumeration oracle on
/// 200 random point sets (d in {3,4}, 4 <= |ps| <= 12), and the extracted
/// full-cube skeleton equals the combinatorial cube. Budget: 2 min.
#[test]
fn criterion_03_skeleton_oracle_equivalence() {
    let t0 = Instant::now();
    let sets = small_random_sets();
    assert_eq!(sets.len(), 200);
    for (i, ps) in sets.iter().enumerate() {
        assert!(ps.len() >= 4 && ps.len() <= 12);
        let lp = extract_skeleton(ps).unwrap();
        let brute = skeleton_by_facet_enumeration(ps).unwrap();
        assert_eq!(lp, brute, "instance {i} (d={}, n={})", ps.dim(), ps.len());
    }
    for k in 1..=4 {
        let cube = PointSet::full_cube(k).unwrap();
        assert_eq!(extract_skeleton(&cube).unwrap(), hypercube_skeleton(k).unwrap());
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "budget 2 min, took {elapsed:.2} s");
    println!("criterion 3 (skeleton oracle equivalence, 200 sets + cubes): PASS in {elapsed:.2} s");
}

/// Criterion 4: on 300 random instances across all three models (d <= 5,
/// |ps| <= 18) and every 1 <= k < d, certified bounds never exceed the
/// exact expansion values, as exact rationals. Budget: 10 min.
#[test]
fn criterion_04_lemma_soundness() {
    let t0 = Instant::now();
    let mut accepted = 0u64;
    let mut certified_checks = 0u64;
    let mut t = 0u64;
    while accepted < 300 {
        let d = 3 + (t / 3) % 3; // 3, 4, 5
        let seed = derive_seed(MASTER, &[4, t]);
        let params = match t % 3 {
            0 => ModelParams::BallsIntoBins { n: d + 2 + t % 10 },
            1 => ModelParams::Binomial { p: rat(1, 2) },
            _ => ModelParams::Uniform { n: 2 + t % 7 },
        };
        t += 1;
        let spec = ModelSpec { d: d as usize, params, seed };
        let Ok(ps) = spec.sample_points() else { continue };
        if ps.len() < 2 || ps.len() > 18 {
            continue;
        }
        accepted += 1;
        let g = extract_skeleton(&ps).unwrap();
        let edge = edge_expansion_exact(&g).unwrap();
        let vertex = vertex_expansion_exact(&g).unwrap();
        for k in 1..ps.dim() {
            let coords: Vec<usize> = (0..k).collect();
            let cert = certify_projection(&ps, &coords).unwrap();
            if !cert.surjective {
                continue;
            }
            certified_checks += 1;
            let eb = cert.edge_bound.unwrap();
            let vb = cert.vertex_bound.unwrap();
            assert!(
                eb <= edge.value,
                "edge bound {eb} > exact {} (d={}, |ps|={}, k={k})",
                edge.value,
                ps.dim(),
                ps.len()
            );
            assert!(
                vb <= vertex.value,
                "vertex bound {vb} > exact {} (d={}, |ps|={}, k={k})",
                vertex.value,
                ps.dim(),
                ps.len()
            );
        }
    }
    assert!(certified_checks >= 100, "too few surjective projections: {certified_checks}");
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 600.0, "budget 10 min, took {elapsed:.2} s");
    println!(
        "criterion 4 (lemma soundness, 300 instances, {certified_checks} certified \
         comparisons, zero violations): PASS in {elapsed:.2} s"
    );
}

/// Criterion 5: the Cheeger sandwich holds with 1e-9 slack on every graph
/// from criteria 1 and 3.
#[test]
fn criterion_05_cheeger_sandwich() {
    let t0 = Instant::now();
    let mut graphs = Vec::new();
    for k in 1..=4 {
        graphs.push(hypercube_skeleton(k).unwrap());
    }
    for ps in small_random_sets() {
        graphs.push(extract_skeleton(&ps).unwrap());
    }
    for (i, g) in graphs.iter().enumerate() {
        let h = to_f64(&edge_expansion_exact(g).unwrap().value);
        let b = cheeger_bounds(g).unwrap();
        assert!(b.connected);
        assert!(
            b.lower - 1e-9 <= h && h <= b.upper + 1e-9,
            "graph {i}: h = {h} outside [{}, {}]",
            b.lower,
            b.upper
        );
    }
    let elapsed = t0.elapsed().as_secs_f64();
    println!(
        "criterion 5 (Cheeger sandwich on {} graphs): PASS in {elapsed:.2} s",
        graphs.len()
    );
}

/// The criterion-6 grid: three models at d = 10, 14, 18 with n (or p 2^d)
/// of the form k 2^k for the choose-rule k.
fn theorem1_grid() -> ExperimentConfig {
    let cell = |model: &str, d: usize, n: Option<u64>, p: Option<&str>| CellSpec {
        model: model.into(),
        d,
        n,
        p: p.map(String::from),
    };
    ExperimentConfig {
        cells: vec![
            cell("bins", 10, Some(4608), None),          // k = 9
            cell("bins", 14, Some(106_496), None),       // k = 13
            cell("bins", 18, Some(2_228_224), None),     // k = 17
            cell("binomial", 10, None, Some("7/8")),     // k = 7
            cell("binomial", 14, None, Some("5/8")),     // k = 10
            cell("binomial", 18, None, Some("7/8")),     // k = 14
            cell("uniform", 10, Some(896), None),        // k = 7
            cell("uniform", 14, Some(10_240), None),     // k = 10
            cell("uniform", 18, Some(229_376), None),    // k = 14
        ],
        trials: 100,
        checks: vec![CheckKind::Certificate],
        limits: Limits::default(),
    }
}

/// Criterion 6: the certified edge bound clears 1/(12d) in at least 90% of
/// trials per cell, nondecreasing in d within each model. Budget: 5 min.
#[test]
fn criterion_06_theorem1_surrogate() {
    let t0 = Instant::now();
    let cfg = theorem1_grid();
    let out = run_trials(&cfg, MASTER, 2).unwrap();
    let fractions: Vec<f64> = out
        .summaries
        .iter()
        .map(|s| {
            assert_eq!(s.errors, 0, "cell {} had errors", s.cell);
            s.success_fraction.expect("completed trials")
        })
        .collect();
    for (s, f) in out.summaries.iter().zip(&fractions) {
        assert!(
            *f >= 0.90,
            "cell {} ({} d={} {}): fraction {f}",
            s.cell,
            s.model,
            s.d,
            s.param
        );
    }
    for base in [0, 3, 6] {
        assert!(
            fractions[base] <= fractions[base + 1] + 1e-12
                && fractions[base + 1] <= fractions[base + 2] + 1e-12,
            "model block at {base} not nondecreasing: {:?}",
            &fractions[base..base + 3]
        );
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "budget 5 min, took {elapsed:.2} s");
    println!(
        "criterion 6 (1/(12d) surrogate, 9 cells x 100 trials, fractions {:?}): \
         PASS in {elapsed:.1} s",
        fractions.iter().map(|f| format!("{f:.2}")).collect::<Vec<_>>()
    );
}

/// Criterion 7: max fiber load exceeds 6k in at most 5% of 500 trials at
/// k = 6. Budget: 1 min.
#[test]
fn criterion_07_max_load_tail() {
    let t0 = Instant::now();
    let report = max_load_experiment(10, 6, 500, derive_seed(MASTER, &[7])).unwrap();
    assert!(
        report.exceedance <= 0.05,
        "exceedance {} above 5%",
        report.exceedance
    );
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "budget 1 min, took {elapsed:.2} s");
    println!(
        "criterion 7 (max-load tail, k=6, 500 trials, exceedance {:.3}): PASS in {elapsed:.2} s",
        report.exceedance
    );
}

/// Criterion 8: coverage failure at d = 8 stays within (2/e)^8 plus three
/// binomial standard errors over 200 trials; d = 1 sanity lands on 1/2
/// within 0.05 over 1000 trials. Budget: 1 min.
#[test]
fn criterion_08_coverage_tail() {
    let t0 = Instant::now();
    let r8 = coverage_experiment(8, 200, derive_seed(MASTER, &[8, 0])).unwrap();
    let se = (r8.bound * (1.0 - r8.bound) / 200.0).sqrt();
    assert!(
        r8.failure_fraction <= r8.bound + 3.0 * se,
        "failure {} above {} + 3se = {}",
        r8.failure_fraction,
        r8.bound,
        r8.bound + 3.0 * se
    );
    let r1 = coverage_experiment(1, 1000, derive_seed(MASTER, &[8, 1])).unwrap();
    assert!(
        (r1.failure_fraction - 0.5).abs() <= 0.05,
        "d=1 failure {} not within 0.5 +- 0.05",
        r1.failure_fraction
    );
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "budget 1 min, took {elapsed:.2} s");
    println!(
        "criterion 8 (coverage tail, d=8: {:.3} <= {:.3}; d=1: {:.3}): PASS in {elapsed:.2} s",
        r8.failure_fraction,
        r8.bound + 3.0 * se,
        r1.failure_fraction
    );
}

/// Criterion 9: on cubes k <= 6 and 20 random certified instances, TV
/// decays monotonically, the uniform law is stationary to 1e-12, and
/// mixing_time(1/4) <= 64 (Delta/h^2) ln|V| with h the exact edge
/// expansion. Budget: 3 min.
#[test]
fn criterion_09_mixing_pipeline() {
    let t0 = Instant::now();
    let half = rat(1, 2);
    // (graph, exact edge expansion h)
    let mut suite: Vec<(zeroone::hullgraph::SkeletonGraph, Rational)> = Vec::new();
    for k in 1..=6usize {
        let g = hypercube_skeleton(k).unwrap();
        // cube edge expansion is 1; criterion 1 verifies it by enumeration
        // for k <= 4 (k = 5 in the opt-in stress test)
        if k <= 4 {
            assert_eq!(edge_expansion_exact(&g).unwrap().value, BigRational::one());
        }
        suite.push((g, BigRational::one()));
    }
    let mut t = 0u64;
    let mut accepted = 0;
    while accepted < 20 {
        let seed = derive_seed(MASTER, &[9, t]);
        let spec = match t % 4 {
            0 => ModelSpec { d: 5, params: ModelParams::BallsIntoBins { n: 20 }, seed },
            1 => ModelSpec { d: 6, params: ModelParams::BallsIntoBins { n: 24 }, seed },
            2 => ModelSpec { d: 5, params: ModelParams::Uniform { n: 16 }, seed },
            _ => ModelSpec { d: 5, params: ModelParams::Binomial { p: rat(1, 2) }, seed },
        };
        t += 1;
        let Ok(ps) = spec.sample_points() else { continue };
        if ps.len() < 2 || ps.len() > 20 {
            continue;
        }
        let Ok(auto) = certify_auto(&ps, &spec) else { continue };
        if !auto.certificate.surjective {
            continue;
        }
        accepted += 1;
        let g = extract_skeleton(&ps).unwrap();
        let h = edge_expansion_exact(&g).unwrap().value;
        suite.push((g, h));
    }
    for (i, (g, h)) in suite.iter().enumerate() {
        let n = g.n();
        assert!(n <= 256);
        let chain = build_chain(g, &half).unwrap();
        // uniform stationarity to 1e-12
        let p = chain.transition();
        for j in 0..n {
            let mass: f64 = (0..n).map(|u| p[(u, j)] / n as f64).sum();
            assert!((mass - 1.0 / n as f64).abs() <= 1e-12, "graph {i} column {j}");
        }
        // TV nonincreasing from a fixed start
        let tv = tv_trajectory(&chain, 0, 200).unwrap();
        for w in tv.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "graph {i}: TV increased");
        }
        // mixing bound from the exact edge expansion
        if n >= 2 {
            let tmix = mixing_time(&chain, 0.25).unwrap();
            let hf = to_f64(h);
            let budget = 64.0 * (chain.max_degree() as f64 / (hf * hf)) * (n as f64).ln();
            assert!(
                (tmix as f64) <= budget,
                "graph {i} (|V|={n}): mixing {tmix} above 64 (Delta/h^2) ln|V| = {budget:.1}"
            );
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 180.0, "budget 3 min, took {elapsed:.2} s");
    println!(
        "criterion 9 (mixing pipeline on {} graphs incl. 20 certified instances): \
         PASS in {elapsed:.1} s",
        suite.len()
    );
}

/// Criterion 10: repeated CLI invocations with the same seed and different
/// worker counts produce byte-identical files (the grid's smallest cell,
/// run through the real binary).
#[test]
fn criterion_10_cli_determinism() {
    let t0 = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    std::fs::write(
        &cfg_path,
        r#"{"cells": [{"model": "bins", "d": 10, "n": 4608}], "trials": 100}"#,
    )
    .unwrap();
    let bin = env!("CARGO_BIN_EXE_zeroone");
    for (label, workers) in [("one", "1"), ("four", "4")] {
        let status = Command::new(bin)
            .args(["experiment", "--config"])
            .arg(&cfg_path)
            .arg("--out")
            .arg(dir.path().join(label))
            .args(["--workers", workers, "--seed", "3405692"])
            .status()
            .unwrap();
        assert!(status.success());
    }
    for file in ["records.json", "summary.csv", "summary.md"] {
        let a = std::fs::read(dir.path().join("one").join(file)).unwrap();
        let b = std::fs::read(dir.path().join("four").join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between worker counts");
    }
    // gen twice with one seed: byte-identical point files
    for name in ["p1.txt", "p2.txt"] {
        let status = Command::new(bin)
            .args(["gen", "--model", "uniform", "--d", "8", "--n", "40", "--seed", "11"])
            .arg("--out")
            .arg(dir.path().join(name))
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(
        std::fs::read(dir.path().join("p1.txt")).unwrap(),
        std::fs::read(dir.path().join("p2.txt")).unwrap()
    );
    println!(
        "criterion 10 (CLI byte-identical across worker counts): PASS in {:.1} s",
        t0.elapsed().as_secs_f64()
    );
}
