//! Thin CLI over the `zeroone` library: generate random 0/1 vertex sets,
//! extract skeletons, compute exact and certified expansion, run walks and
//! batch experiments. All heavy lifting lives in the library; this binary
//! only parses arguments and shuttles files.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zeroone::bitgeom::PointSet;
use zeroone::certify::{certify_projection, choose_k_binomial, choose_k_count, search_coords};
use zeroone::expansion::{
    cheeger_bounds, edge_expansion_exact_with, vertex_expansion_exact_with, DEFAULT_ENUM_CAP,
};
use zeroone::harness::{emit_report, run_trials, ExperimentConfig};
use zeroone::hullgraph::{extract_skeleton_with, HullOptions, SkeletonGraph, DEFAULT_PAIR_BUDGET};
use zeroone::randmodels::{ModelParams, ModelSpec};
use zeroone::walk::{build_chain, mixing_profile};
use zeroone::Rational;

#[derive(Parser)]
#[command(
    name = "zeroone",
    version,
    about = "Random 0/1 polytopes: models, skeletons, expansion, certificates, walks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelName {
    Bins,
    Binomial,
    Uniform,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindName {
    Edge,
    Vertex,
}

#[derive(Args)]
struct ModelArgs {
    /// Random model
    #[arg(long, value_enum)]
    model: ModelName,
    /// Draw count (bins) or subset size (uniform)
    #[arg(long)]
    n: Option<u64>,
    /// Inclusion probability for the binomial model, as NUM/DEN
    #[arg(long)]
    p: Option<String>,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams> {
        match self.model {
            ModelName::Bins => {
                let n = self.n.context("--model bins requires --n")?;
                Ok(ModelParams::BallsIntoBins { n })
            }
            ModelName::Uniform => {
                let n = self.n.context("--model uniform requires --n")?;
                Ok(ModelParams::Uniform { n })
            }
            ModelName::Binomial => {
                let p = self.p.as_ref().context("--model binomial requires --p NUM/DEN")?;
                let p: Rational =
                    p.parse().map_err(|e| anyhow::anyhow!("bad rational {p:?}: {e}"))?;
                Ok(ModelParams::Binomial { p })
            }
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample a random 0/1 vertex set and write the point-set text format
    Gen {
        #[command(flatten)]
        model: ModelArgs,
        /// Ambient dimension d
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        /// Output file ("d n" header plus one bitstring per line)
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract the polytope graph of a point set via the exact LP test
    Skeleton {
        /// Point-set text file
        #[arg(long = "in")]
        input: PathBuf,
        /// Skeleton JSON output file
        #[arg(long)]
        out: PathBuf,
        /// Point cap (the pair budget errs rather than degrading)
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        max_points: usize,
    },
    /// Exact expansion of a skeleton, optionally with spectral bounds
    Expansion {
        /// Skeleton JSON file
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: KindName,
        /// Also report lambda2 and the Cheeger sandwich
        #[arg(long)]
        spectral: bool,
        /// Cut-enumeration vertex cap (opt-in up to 32)
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: usize,
    },
    /// Projection certificate for a point set
    Certify {
        /// Point-set text file
        #[arg(long = "in")]
        input: PathBuf,
        /// Project to the first K coordinates (or the searched K, with
        /// --search-coords)
        #[arg(long, conflicts_with = "auto")]
        k: Option<usize>,
        /// Choose k by the model's rule (requires --model and --n/--p)
        #[arg(long, requires = "model")]
        auto: bool,
        #[arg(long, value_enum)]
        model: Option<ModelName>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        p: Option<String>,
        /// Greedy coordinate search instead of the first k coordinates
        #[arg(long)]
        search_coords: bool,
    },
    /// Lazy uniform-stationary walk on a skeleton: mixing time and TV decay
    Walk {
        /// Skeleton JSON file
        #[arg(long = "in")]
        input: PathBuf,
        /// Total-variation target
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        /// Self-loop mass, a rational in [1/2, 1)
        #[arg(long, default_value = "1/2")]
        laziness: String,
        /// Optional CSV file for the worst-start trajectory (columns t,tv)
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Run a trial grid from a config file and emit reports
    Experiment {
        /// Config JSON: { cells: [{model, d, n|p}], trials, checks, limits }
        #[arg(long)]
        config: PathBuf,
        /// Output directory (records.json, summary.csv, summary.md)
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct ExpansionOut {
    kind: &'static str,
    value: String,
    witness: Vec<usize>,
    cut_size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<f64>,
}

#[derive(Serialize)]
struct CertifyOut {
    k: usize,
    coords: Vec<usize>,
    surjective: bool,
    coverage: String,
    max_fiber: u64,
    edge_bound: Option<String>,
    vertex_bound: Option<String>,
    six_d_flag: bool,
}

#[derive(Serialize)]
struct WalkOut {
    mixing_time: usize,
    gap: f64,
    tv: Vec<f64>,
}

fn read_points(path: &PathBuf) -> Result<PointSet> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(PointSet::read_text(BufReader::new(file))?)
}

fn read_skeleton(path: &PathBuf) -> Result<SkeletonGraph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(SkeletonGraph::from_json_str(&text)?)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = serde_json::to_string_pretty(value)?;
    out.push('\n');
    print!("{out}");
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Gen { model, d, seed, out } => {
            let spec = ModelSpec { d, params: model.params()?, seed };
            spec.validate()?;
            let ps = spec.sample_points()?;
            let file =
                File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            let mut w = BufWriter::new(file);
            ps.write_text(&mut w)?;
            w.flush()?;
            eprintln!("wrote {} points of dimension {} to {}", ps.len(), d, out.display());
        }
        Cmd::Skeleton { input, out, max_points } => {
            let ps = read_points(&input)?;
            let g = extract_skeleton_with(&ps, &HullOptions { max_points })?;
            std::fs::write(&out, g.to_json_string())
                .with_context(|| format!("writing {}", out.display()))?;
            eprintln!(
                "skeleton: {} vertices, {} edges -> {}",
                g.n(),
                g.edge_count(),
                out.display()
            );
        }
        Cmd::Expansion { input, kind, spectral, cap } => {
            let g = read_skeleton(&input)?;
            let res = match kind {
                KindName::Edge => edge_expansion_exact_with(&g, cap)?,
                KindName::Vertex => vertex_expansion_exact_with(&g, cap)?,
            };
            let mut out = ExpansionOut {
                kind: match kind {
                    KindName::Edge => "edge",
                    KindName::Vertex => "vertex",
                },
                value: res.value.to_string(),
                witness: res.witness,
                cut_size: res.cut_size,
                lambda2: None,
                lower: None,
                upper: None,
            };
            if spectral {
                let b = cheeger_bounds(&g)?;
                out.lambda2 = Some(b.lambda2);
                out.lower = Some(b.lower);
                out.upper = Some(b.upper);
            }
            print_json(&out)?;
        }
        Cmd::Certify { input, k, auto, model, n, p, search_coords: search } => {
            let ps = read_points(&input)?;
            let k = if auto {
                let args = ModelArgs { model: model.context("--auto requires --model")?, n, p };
                match args.params()? {
                    ModelParams::BallsIntoBins { n } | ModelParams::Uniform { n } => {
                        choose_k_count(n, ps.dim())?
                    }
                    ModelParams::Binomial { p } => choose_k_binomial(&p, ps.dim())?,
                }
            } else {
                k.context("pass --k K or --auto with model parameters")?
            };
            let coords: Vec<usize> = if search {
                search_coords(&ps, k)?
            } else {
                (0..k).collect()
            };
            let cert = certify_projection(&ps, &coords)?;
            let six_d_flag = cert.six_d_flag(ps.dim());
            print_json(&CertifyOut {
                k: cert.k(),
                coords: cert.coords.clone(),
                surjective: cert.surjective,
                coverage: cert.coverage.to_string(),
                max_fiber: cert.max_fiber,
                edge_bound: cert.edge_bound.as_ref().map(|b| b.to_string()),
                vertex_bound: cert.vertex_bound.as_ref().map(|b| b.to_string()),
                six_d_flag,
            })?;
        }
        Cmd::Walk { input, eps, laziness, trajectory } => {
            let g = read_skeleton(&input)?;
            let laziness: Rational = laziness
                .parse()
                .map_err(|e| anyhow::anyhow!("bad laziness rational: {e}"))?;
            let chain = build_chain(&g, &laziness)?;
            let (t, tv) = mixing_profile(&chain, eps)?;
            if let Some(path) = trajectory {
                let mut csv = String::from("t,tv\n");
                for (step, value) in tv.iter().enumerate() {
                    csv.push_str(&format!("{step},{value}\n"));
                }
                std::fs::write(&path, csv)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            print_json(&WalkOut { mixing_time: t, gap: chain.spectral_gap(), tv })?;
        }
        Cmd::Experiment { config, out, workers, seed } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let cfg = ExperimentConfig::from_json_str(&text)?;
            if workers == 0 {
                bail!("--workers must be at least 1");
            }
            let run = run_trials(&cfg, seed, workers)?;
            emit_report(&cfg, seed, &run.records, &run.summaries, &out)?;
            eprintln!(
                "{} trials across {} cells in {:.2}s -> {}",
                run.records.len(),
                cfg.cells.len(),
                run.elapsed_seconds,
                out.display()
            );
        }
    }
    Ok(())
}
