//! Batch experiment runner: reproduces the high-probability expansion
//! claims as empirical frequencies over seeded trials, with schedule-
//! independent output and schema-stable reports.
//!
//! Per-trial seeds derive from the master seed as
//! `derive_seed(master, [cell index, trial index])` (SplitMix64 folding,
//! see [`crate::randmodels`]), so summaries are identical for any worker
//! count. A certified trial succeeds iff its edge bound is at least
//! `1/(12d)` as exact rationals; the degenerate regimes succeed via their
//! direct checks (few vertices: `|ps| <= d`, or `3d` for the binomial
//! model; full cube expected: the sample is all of `{0,1}^d`).
//!
//! Trial wall times are kept in memory but never persisted: report files
//! must be byte-identical across reruns and worker counts.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use num::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitgeom::project;
use crate::certify::{certify_auto, CertifyError};
use crate::expansion::{
    cheeger_bounds, edge_expansion_exact_with, vertex_expansion_exact_with, DENSE_CAP,
};
use crate::hullgraph::{extract_skeleton_with, HullOptions};
use crate::randmodels::{derive_seed, random_point, stream, ModelError, ModelKind, ModelParams, ModelSpec};
use crate::walk::{build_chain, mixing_time};
use crate::{certify, Rational};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("i/o on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Per-trial computations beyond sampling and regime classification.
/// `certificate` and `coverage` are always available on the record;
/// `max_load` additionally stores the fiber histogram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Certificate,
    ExactExpansion,
    Spectral,
    Mixing,
    MaxLoad,
    Coverage,
}

/// One cell of the experiment grid, close to its JSON form: a model name
/// (`bins`, `binomial`, `uniform`), a dimension, and `n` or `p` (`p` as an
/// exact rational string like `"7/8"`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellSpec {
    pub model: String,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
}

impl CellSpec {
    pub fn kind(&self) -> Result<ModelKind, HarnessError> {
        match self.model.as_str() {
            "bins" => Ok(ModelKind::BallsIntoBins),
            "binomial" => Ok(ModelKind::Binomial),
            "uniform" => Ok(ModelKind::Uniform),
            other => Err(HarnessError::Config(format!(
                "unknown model {other:?}; expected bins, binomial or uniform"
            ))),
        }
    }

    pub fn params(&self) -> Result<ModelParams, HarnessError> {
        match self.kind()? {
            ModelKind::BallsIntoBins => {
                let n = self.n.ok_or_else(|| {
                    HarnessError::Config("bins cell needs field n".into())
                })?;
                Ok(ModelParams::BallsIntoBins { n })
            }
            ModelKind::Uniform => {
                let n = self.n.ok_or_else(|| {
                    HarnessError::Config("uniform cell needs field n".into())
                })?;
                Ok(ModelParams::Uniform { n })
            }
            ModelKind::Binomial => {
                let p = self.p.as_ref().ok_or_else(|| {
                    HarnessError::Config("binomial cell needs field p".into())
                })?;
                let p: Rational = p.parse().map_err(|e| {
                    HarnessError::Config(format!("bad rational {p:?}: {e}"))
                })?;
                Ok(ModelParams::Binomial { p })
            }
        }
    }

    pub fn param_label(&self) -> String {
        match (&self.n, &self.p) {
            (Some(n), _) => format!("n={n}"),
            (None, Some(p)) => format!("p={p}"),
            (None, None) => "?".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Point cap forwarded to skeleton extraction.
    #[serde(default = "default_pair_budget")]
    pub pair_budget: usize,
    /// Vertex cap forwarded to exact cut enumeration.
    #[serde(default = "default_enum_cap")]
    pub enum_cap: usize,
}

fn default_pair_budget() -> usize {
    crate::hullgraph::DEFAULT_PAIR_BUDGET
}

fn default_enum_cap() -> usize {
    crate::expansion::DEFAULT_ENUM_CAP
}

impl Default for Limits {
    fn default() -> Self {
        Limits { pair_budget: default_pair_budget(), enum_cap: default_enum_cap() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub cells: Vec<CellSpec>,
    pub trials: u64,
    #[serde(default = "default_checks")]
    pub checks: Vec<CheckKind>,
    #[serde(default)]
    pub limits: Limits,
}

fn default_checks() -> Vec<CheckKind> {
    vec![CheckKind::Certificate]
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.cells.is_empty() {
            return Err(HarnessError::Config("grid must contain at least one cell".into()));
        }
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        for cell in &self.cells {
            let params = cell.params()?;
            let spec = ModelSpec { d: cell.d, params, seed: 0 };
            spec.validate()?;
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self, HarnessError> {
        let cfg: ExperimentConfig = serde_json::from_str(s)
            .map_err(|e| HarnessError::Config(format!("bad config JSON: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn has_check(&self, c: CheckKind) -> bool {
        self.checks.contains(&c)
    }
}

/// Which of the theorems' case splits a trial landed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeTag {
    FewVertices,
    FullCubeExpected,
    Certified,
    NotSurjective,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub k: usize,
    pub coords: Vec<usize>,
    pub surjective: bool,
    pub coverage: String,
    pub max_fiber: u64,
    pub edge_bound: Option<String>,
    pub vertex_bound: Option<String>,
    pub six_d_flag: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactSummary {
    pub edge: String,
    pub vertex: String,
    /// Certified bounds did not exceed the exact values (when certified).
    pub certificate_sound: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub lambda2: f64,
    pub lower: f64,
    pub upper: f64,
    /// `lower - 1e-9 <= exact edge expansion <= upper + 1e-9`, when the
    /// exact value was computed.
    pub sandwich_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixingSummary {
    pub mixing_time: usize,
    pub spectral_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub cell: usize,
    pub trial: u64,
    pub seed: u64,
    pub model: String,
    pub d: usize,
    pub param: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinct_points: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regime: Option<RegimeTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixing: Option<MixingSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber_histogram: Option<BTreeMap<u64, u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Seconds; in-memory only so report files stay byte-identical.
    #[serde(skip)]
    pub wall: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub cell: usize,
    pub model: String,
    pub d: usize,
    pub param: String,
    pub trials: u64,
    pub completed: u64,
    pub errors: u64,
    pub few_vertices: u64,
    pub full_cube_expected: u64,
    pub certified: u64,
    pub not_surjective: u64,
    pub successes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success_fraction: Option<f64>,
    pub six_d_count: u64,
}

pub struct RunOutput {
    pub records: Vec<TrialRecord>,
    pub summaries: Vec<CellSummary>,
    pub elapsed_seconds: f64,
}

fn twelve_d_bound(d: usize) -> Rational {
    BigRational::new(1.into(), (12 * d as u64).into())
}

fn run_one(cfg: &ExperimentConfig, cell_idx: usize, cell: &CellSpec, trial: u64, master: u64) -> TrialRecord {
    let started = Instant::now();
    let seed = derive_seed(master, &[cell_idx as u64, trial]);
    let mut rec = TrialRecord {
        cell: cell_idx,
        trial,
        seed,
        model: cell.model.clone(),
        d: cell.d,
        param: cell.param_label(),
        distinct_points: None,
        regime: None,
        success: None,
        certificate: None,
        exact: None,
        spectral: None,
        mixing: None,
        fiber_histogram: None,
        error: None,
        wall: 0.0,
    };
    let note = |rec: &mut TrialRecord, msg: String| {
        rec.error = Some(match rec.error.take() {
            Some(prev) => format!("{prev}; {msg}"),
            None => msg,
        });
    };

    let params = match cell.params() {
        Ok(p) => p,
        Err(e) => {
            note(&mut rec, e.to_string());
            rec.wall = started.elapsed().as_secs_f64();
            return rec;
        }
    };
    let spec = ModelSpec { d: cell.d, params, seed };
    let ps = match spec.sample_points() {
        Ok(ps) => ps,
        Err(e) => {
            note(&mut rec, format!("sampling: {e}"));
            rec.wall = started.elapsed().as_secs_f64();
            return rec;
        }
    };
    rec.distinct_points = Some(ps.len() as u64);

    match certify_auto(&ps, &spec) {
        Ok(auto) => {
            let cert = &auto.certificate;
            rec.regime = Some(if cert.surjective {
                RegimeTag::Certified
            } else {
                RegimeTag::NotSurjective
            });
            rec.success = Some(match &cert.edge_bound {
                Some(eb) => *eb >= twelve_d_bound(cell.d),
                None => false,
            });
            if cfg.has_check(CheckKind::MaxLoad) {
                if let Ok((_, fibers)) = project(&ps, &cert.coords) {
                    rec.fiber_histogram = Some(certify::fiber_histogram(&fibers));
                }
            }
            rec.certificate = Some(CertificateSummary {
                k: cert.k(),
                coords: cert.coords.clone(),
                surjective: cert.surjective,
                coverage: cert.coverage.to_string(),
                max_fiber: cert.max_fiber,
                edge_bound: cert.edge_bound.as_ref().map(|b| b.to_string()),
                vertex_bound: cert.vertex_bound.as_ref().map(|b| b.to_string()),
                six_d_flag: auto.six_d,
            });
        }
        Err(e @ CertifyError::FewVertices(_)) => {
            rec.regime = Some(RegimeTag::FewVertices);
            let cap = match spec.kind() {
                ModelKind::Binomial => 3 * cell.d as u64,
                _ => cell.d as u64,
            };
            rec.success = Some(ps.len() as u64 <= cap);
            if rec.success == Some(false) {
                note(&mut rec, format!("few-vertices direct check failed: {e}"));
            }
        }
        Err(CertifyError::FullCubeExpected(_)) => {
            rec.regime = Some(RegimeTag::FullCubeExpected);
            let full = cell.d < 64 && ps.len() as u64 == 1u64 << cell.d;
            rec.success = Some(full);
        }
        Err(e) => {
            note(&mut rec, format!("certification: {e}"));
            rec.wall = started.elapsed().as_secs_f64();
            return rec;
        }
    }

    let wants_skeleton = cfg.has_check(CheckKind::ExactExpansion)
        || cfg.has_check(CheckKind::Spectral)
        || cfg.has_check(CheckKind::Mixing);
    if wants_skeleton {
        let opts = HullOptions { max_points: cfg.limits.pair_budget };
        match extract_skeleton_with(&ps, &opts) {
            Ok(g) => {
                let mut exact_edge: Option<Rational> = None;
                if cfg.has_check(CheckKind::ExactExpansion) {
                    let edge = edge_expansion_exact_with(&g, cfg.limits.enum_cap);
                    let vertex = vertex_expansion_exact_with(&g, cfg.limits.enum_cap);
                    match (edge, vertex) {
                        (Ok(e), Ok(v)) => {
                            let sound = rec.certificate.as_ref().and_then(|c| {
                                match (&c.edge_bound, &c.vertex_bound) {
                                    (Some(eb), Some(vb)) => {
                                        let eb: Rational = eb.parse().unwrap();
                                        let vb: Rational = vb.parse().unwrap();
                                        Some(eb <= e.value && vb <= v.value)
                                    }
                                    _ => None,
                                }
                            });
                            exact_edge = Some(e.value.clone());
                            rec.exact = Some(ExactSummary {
                                edge: e.value.to_string(),
                                vertex: v.value.to_string(),
                                certificate_sound: sound,
                            });
                        }
                        (e, v) => {
                            for r in [e.err(), v.err()].into_iter().flatten() {
                                note(&mut rec, format!("exact expansion: {r}"));
                            }
                        }
                    }
                }
                if cfg.has_check(CheckKind::Spectral) {
                    if g.n() >= 2 && g.n() <= DENSE_CAP {
                        match cheeger_bounds(&g) {
                            Ok(b) => {
                                let sandwich_ok = exact_edge.as_ref().map(|h| {
                                    let hf = rational_to_f64(h);
                                    b.lower - 1e-9 <= hf && hf <= b.upper + 1e-9
                                });
                                rec.spectral = Some(SpectralSummary {
                                    lambda2: b.lambda2,
                                    lower: b.lower,
                                    upper: b.upper,
                                    sandwich_ok,
                                });
                            }
                            Err(e) => note(&mut rec, format!("spectral: {e}")),
                        }
                    } else {
                        note(&mut rec, "spectral: size outside dense cap".into());
                    }
                }
                if cfg.has_check(CheckKind::Mixing) && g.n() <= DENSE_CAP {
                    let half = BigRational::new(1.into(), 2.into());
                    match build_chain(&g, &half) {
                        Ok(chain) => match mixing_time(&chain, 0.25) {
                            Ok(t) => {
                                rec.mixing = Some(MixingSummary {
                                    mixing_time: t,
                                    spectral_gap: chain.spectral_gap(),
                                });
                            }
                            Err(e) => note(&mut rec, format!("mixing: {e}")),
                        },
                        Err(e) => note(&mut rec, format!("chain: {e}")),
                    }
                }
            }
            Err(e) => note(&mut rec, format!("skeleton: {e}")),
        }
    }

    rec.wall = started.elapsed().as_secs_f64();
    rec
}

fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn summarize(cfg: &ExperimentConfig, records: &[TrialRecord]) -> Vec<CellSummary> {
    cfg.cells
        .iter()
        .enumerate()
        .map(|(idx, cell)| {
            let mine: Vec<&TrialRecord> = records.iter().filter(|r| r.cell == idx).collect();
            let count_regime = |tag: RegimeTag| -> u64 {
                mine.iter().filter(|r| r.regime == Some(tag)).count() as u64
            };
            let completed = mine.iter().filter(|r| r.regime.is_some()).count() as u64;
            let errors = mine.iter().filter(|r| r.regime.is_none()).count() as u64;
            let successes = mine.iter().filter(|r| r.success == Some(true)).count() as u64;
            let six_d_count = mine
                .iter()
                .filter(|r| r.certificate.as_ref().is_some_and(|c| c.six_d_flag))
                .count() as u64;
            CellSummary {
                cell: idx,
                model: cell.model.clone(),
                d: cell.d,
                param: cell.param_label(),
                trials: mine.len() as u64,
                completed,
                errors,
                few_vertices: count_regime(RegimeTag::FewVertices),
                full_cube_expected: count_regime(RegimeTag::FullCubeExpected),
                certified: count_regime(RegimeTag::Certified),
                not_surjective: count_regime(RegimeTag::NotSurjective),
                successes,
                success_fraction: (completed > 0)
                    .then(|| successes as f64 / completed as f64),
                six_d_count,
            }
        })
        .collect()
}

/// Run every `(cell, trial)` job, deterministically in the master seed and
/// independent of `workers`.
pub fn run_trials(
    cfg: &ExperimentConfig,
    master_seed: u64,
    workers: usize,
) -> Result<RunOutput, HarnessError> {
    cfg.validate()?;
    let started = Instant::now();
    let jobs: Vec<(usize, u64)> = (0..cfg.cells.len())
        .flat_map(|c| (0..cfg.trials).map(move |t| (c, t)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let mut records: Vec<TrialRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|&(c, t)| run_one(cfg, c, &cfg.cells[c], t, master_seed))
            .collect()
    });
    records.sort_by_key(|r| (r.cell, r.trial));
    let summaries = summarize(cfg, &records);
    Ok(RunOutput { records, summaries, elapsed_seconds: started.elapsed().as_secs_f64() })
}

/// Contents of `records.json`.
#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct RecordsDoc {
    pub master_seed: u64,
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
}

fn write_file(path: &Path, contents: &str) -> Result<(), HarnessError> {
    std::fs::write(path, contents).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn fraction_cell(f: Option<f64>) -> String {
    match f {
        Some(v) => format!("{v:.6}"),
        None => String::new(),
    }
}

pub fn summary_csv(summaries: &[CellSummary]) -> String {
    let mut out = String::from(
        "cell,model,d,param,trials,completed,errors,few_vertices,full_cube_expected,\
         certified,not_surjective,successes,success_fraction,six_d_count\n",
    );
    for s in summaries {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            s.cell,
            s.model,
            s.d,
            s.param,
            s.trials,
            s.completed,
            s.errors,
            s.few_vertices,
            s.full_cube_expected,
            s.certified,
            s.not_surjective,
            s.successes,
            fraction_cell(s.success_fraction),
            s.six_d_count
        );
    }
    out
}

pub fn summary_markdown(summaries: &[CellSummary], master_seed: u64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Experiment summary\n");
    let _ = writeln!(out, "Master seed: `{master_seed}`.\n");
    let _ = writeln!(
        out,
        "A trial succeeds when its certified edge bound is at least `1/(12d)` \
         as exact rationals; few-vertices and full-cube trials succeed via \
         their direct checks (`|ps| <= d` / `<= 3d` for binomial, resp. the \
         sample covering all of `{{0,1}}^d`). Fractions use completed trials \
         as denominator.\n"
    );
    let _ = writeln!(
        out,
        "| cell | model | d | param | trials | completed | errors | certified | \
         not surj. | few | full cube | successes | fraction |"
    );
    let _ = writeln!(out, "|---|---|---|---|---|---|---|---|---|---|---|---|---|");
    for s in summaries {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            s.cell,
            s.model,
            s.d,
            s.param,
            s.trials,
            s.completed,
            s.errors,
            s.certified,
            s.not_surjective,
            s.few_vertices,
            s.full_cube_expected,
            s.successes,
            fraction_cell(s.success_fraction)
        );
    }
    out
}

/// Write `records.json`, `summary.csv` and `summary.md` into `out_dir`.
pub fn emit_report(
    cfg: &ExperimentConfig,
    master_seed: u64,
    records: &[TrialRecord],
    summaries: &[CellSummary],
    out_dir: &Path,
) -> Result<(), HarnessError> {
    std::fs::create_dir_all(out_dir).map_err(|source| HarnessError::Io {
        path: out_dir.display().to_string(),
        source,
    })?;
    let doc = RecordsDoc {
        master_seed,
        config: cfg.clone(),
        records: records.to_vec(),
    };
    let mut json = serde_json::to_string_pretty(&doc).expect("records serialize");
    json.push('\n');
    write_file(&out_dir.join("records.json"), &json)?;
    write_file(&out_dir.join("summary.csv"), &summary_csv(summaries))?;
    write_file(&out_dir.join("summary.md"), &summary_markdown(summaries, master_seed))?;
    Ok(())
}

/// Empirical maximum fiber load for `n = k 2^k` balls in `2^k` bins, thrown
/// as uniform d-bit points projected to their first `k` coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxLoadReport {
    pub d: usize,
    pub k: usize,
    pub n: u64,
    pub trials: u64,
    /// The tail threshold `6k`.
    pub threshold: u64,
    pub exceed_count: u64,
    pub exceedance: f64,
    /// max load value -> number of trials attaining it
    pub histogram: BTreeMap<u64, u64>,
}

pub fn max_load_experiment(
    d: usize,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<MaxLoadReport, HarnessError> {
    if k == 0 || k > d {
        return Err(HarnessError::Config(format!("need 1 <= k <= d, got k = {k}, d = {d}")));
    }
    if k > 26 {
        return Err(HarnessError::Config(format!("bin array cap k <= 26, got {k}")));
    }
    if trials == 0 {
        return Err(HarnessError::Config("trials must be at least 1".into()));
    }
    let bins = 1usize << k;
    let n = (k as u64) << k;
    let mask = (bins - 1) as u64;
    let threshold = 6 * k as u64;
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let mut exceed_count = 0;
    let mut counts = vec![0u32; bins];
    for trial in 0..trials {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut rng = stream(derive_seed(seed, &[trial]));
        for _ in 0..n {
            let p = random_point(&mut rng, d);
            let bin = (0..k).fold(0u64, |acc, j| acc | (p.get(j) as u64) << j) & mask;
            counts[bin as usize] += 1;
        }
        let max = *counts.iter().max().unwrap() as u64;
        *histogram.entry(max).or_insert(0) += 1;
        if max > threshold {
            exceed_count += 1;
        }
    }
    Ok(MaxLoadReport {
        d,
        k,
        n,
        trials,
        threshold,
        exceed_count,
        exceedance: exceed_count as f64 / trials as f64,
        histogram,
    })
}

/// Empirical probability that `n = d 2^d` uniform draws miss some vertex of
/// `{0,1}^d`, to compare against the `(2/e)^d` tail bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverageReport {
    pub d: usize,
    pub n: u64,
    pub trials: u64,
    pub failures: u64,
    pub failure_fraction: f64,
    /// `(2/e)^d`
    pub bound: f64,
}

pub fn coverage_experiment(d: usize, trials: u64, seed: u64) -> Result<CoverageReport, HarnessError> {
    if d == 0 || d > 14 {
        return Err(HarnessError::Config(format!(
            "coverage experiment supports 1 <= d <= 14, got {d}"
        )));
    }
    if trials == 0 {
        return Err(HarnessError::Config("trials must be at least 1".into()));
    }
    let total = 1u64 << d;
    let n = d as u64 * total;
    let words = (total as usize).div_ceil(64);
    let mut failures = 0;
    let mut occupancy = vec![0u64; words];
    for trial in 0..trials {
        occupancy.iter_mut().for_each(|w| *w = 0);
        let mut rng = stream(derive_seed(seed, &[trial]));
        let mut hit = 0u64;
        for _ in 0..n {
            let p = random_point(&mut rng, d);
            let idx = (0..d).fold(0u64, |acc, j| acc | (p.get(j) as u64) << j);
            let (w, b) = ((idx / 64) as usize, idx % 64);
            if occupancy[w] >> b & 1 == 0 {
                occupancy[w] |= 1 << b;
                hit += 1;
                if hit == total {
                    break;
                }
            }
        }
        if hit < total {
            failures += 1;
        }
    }
    Ok(CoverageReport {
        d,
        n,
        trials,
        failures,
        failure_fraction: failures as f64 / trials as f64,
        bound: (2.0 / std::f64::consts::E).powi(d as i32),
    })
}
