use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::FileConfig;

#[derive(Debug, Parser)]
#[command(name = "tvgc", version, about = "Clustering of time-varying graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample time-varying SBM sequences with ground-truth labels.
    GenerateSbm(GenerateArgs),
    /// Build a k-NN graph sequence from a directory of point-cloud frames.
    BuildKnn(KnnArgs),
    /// Cluster every frame of one or more graph sequences.
    Cluster(ClusterArgs),
    /// Score estimated labels against ground truth.
    Evaluate(EvaluateArgs),
    /// Per-frame Laplacian eigengap profile.
    Eigengap(EigengapArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Base seed. Trial `i` uses `seed + i`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON file with flat config keys; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub trials: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    Dense,
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    TvPds,
    StaticSc,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::TvPds => "tv-pds",
            Method::StaticSc => "static-sc",
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "dense")]
    pub preset: Preset,
    #[arg(long)]
    pub n_per_cluster: Option<usize>,
    /// Number of planted clusters.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of frames.
    #[arg(long)]
    pub t_len: Option<usize>,
    #[arg(long)]
    pub p_intra: Option<f64>,
    #[arg(long)]
    pub p_inter: Option<f64>,
    #[arg(long)]
    pub flip_prob: Option<f64>,
}

#[derive(Debug, Args)]
pub struct KnnArgs {
    #[command(flatten)]
    pub common: Common,
    /// Directory of `*.csv` frames, one `x,y,z` point per line.
    #[arg(long)]
    pub input: PathBuf,
    /// Neighbours per point.
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    /// Points kept after farthest-point sampling.
    #[arg(long)]
    pub target_n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub common: Common,
    /// A `.tvg` file, a directory holding `graph.tvg`, or a directory of
    /// `trial_*` subdirectories.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "tv-pds")]
    pub method: Method,
    /// Number of clusters.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub gamma1: Option<f64>,
    #[arg(long)]
    pub gamma2: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Also store wall time in report.json. Makes reruns differ.
    #[arg(long)]
    pub record_time: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Estimated labels: a `.lbl` file or a cluster output directory.
    #[arg(long)]
    pub est: PathBuf,
    /// Ground truth: a `.lbl` file or a generate-sbm output directory.
    #[arg(long)]
    pub truth: PathBuf,
    /// Also write accuracy.svg.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct EigengapArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub input: PathBuf,
    /// Number of smallest eigenvalues; the profile has `m - 1` gaps.
    #[arg(long, default_value_t = 5)]
    pub m: usize,
}

impl GenerateArgs {
    pub fn overrides(&self) -> FileConfig {
        FileConfig {
            seed: self.common.seed,
            trials: self.common.trials,
            k: self.k,
            n_per_cluster: self.n_per_cluster,
            t_len: self.t_len,
            p_intra: self.p_intra,
            p_inter: self.p_inter,
            flip_prob: self.flip_prob,
            ..Default::default()
        }
    }
}

impl ClusterArgs {
    pub fn overrides(&self) -> FileConfig {
        FileConfig {
            seed: self.common.seed,
            trials: self.common.trials,
            k: self.k,
            alpha: self.alpha,
            gamma1: self.gamma1,
            gamma2: self.gamma2,
            epsilon: self.epsilon,
            sigma: self.sigma,
            max_iters: self.max_iters,
            restarts: self.restarts,
            ..Default::default()
        }
    }
}
