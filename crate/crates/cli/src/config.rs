use std::path::Path;

use serde::Deserialize;
use tvgc::generators::SbmTvParams;
use tvgc::solver::SolverConfig;

use crate::error::{CliError, CliResult};

/// Flat JSON config. Keys mirror `SolverConfig` and `SbmTvParams`; any
/// value given on the command line wins.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub k: Option<usize>,
    pub n_per_cluster: Option<usize>,
    pub t_len: Option<usize>,
    pub p_intra: Option<f64>,
    pub p_inter: Option<f64>,
    pub flip_prob: Option<f64>,
    pub alpha: Option<f64>,
    pub gamma1: Option<f64>,
    pub gamma2: Option<f64>,
    pub epsilon: Option<f64>,
    pub sigma: Option<f64>,
    pub max_iters: Option<usize>,
    pub restarts: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    /// Laid over `base`, then `flags` on top.
    pub fn sbm(&self, base: SbmTvParams, flags: &FileConfig) -> SbmTvParams {
        SbmTvParams {
            n_per_cluster: pick(flags.n_per_cluster, self.n_per_cluster, base.n_per_cluster),
            k: pick(flags.k, self.k, base.k),
            t_len: pick(flags.t_len, self.t_len, base.t_len),
            p_intra: pick(flags.p_intra, self.p_intra, base.p_intra),
            p_inter: pick(flags.p_inter, self.p_inter, base.p_inter),
            flip_prob: pick(flags.flip_prob, self.flip_prob, base.flip_prob),
            seed: pick(flags.seed, self.seed, base.seed),
        }
    }

    pub fn solver(&self, flags: &FileConfig) -> SolverConfig {
        let base = SolverConfig::default();
        SolverConfig {
            alpha: pick(flags.alpha, self.alpha, base.alpha),
            gamma1: flags.gamma1.or(self.gamma1).or(base.gamma1),
            gamma2: flags.gamma2.or(self.gamma2).or(base.gamma2),
            epsilon: flags.epsilon.or(self.epsilon).or(base.epsilon),
            sigma: pick(flags.sigma, self.sigma, base.sigma),
            max_iters: pick(flags.max_iters, self.max_iters, base.max_iters),
            restarts: pick(flags.restarts, self.restarts, base.restarts),
            seed: pick(flags.seed, self.seed, base.seed),
        }
    }
}

fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
