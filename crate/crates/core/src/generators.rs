//! Stochastic-block-model time-varying graphs with slowly drifting labels.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`. Stream 0 drives
//! label evolution and stream `t + 1` draws the edges of frame `t`, so each
//! frame can be regenerated on its own and results are identical across
//! platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{TVGraphSequence, WeightedGraph};
use crate::labels::LabelSequence;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SbmTvParams {
    pub n_per_cluster: usize,
    pub k: usize,
    pub t_len: usize,
    pub p_intra: f64,
    pub p_inter: f64,
    pub flip_prob: f64,
    pub seed: u64,
}

impl SbmTvParams {
    /// High-density setting: `p_intra = 0.3`, `p_inter = 0.2`, three clusters
    /// of 50 nodes, 100 frames, 1% label flips.
    pub fn dense(seed: u64) -> Self {
        Self {
            n_per_cluster: 50,
            k: 3,
            t_len: 100,
            p_intra: 0.3,
            p_inter: 0.2,
            flip_prob: 0.01,
            seed,
        }
    }

    /// Sparse setting: `p_intra = 0.1`, `p_inter = 0.05`, otherwise as [`Self::dense`].
    pub fn sparse(seed: u64) -> Self {
        Self {
            p_intra: 0.1,
            p_inter: 0.05,
            ..Self::dense(seed)
        }
    }

    pub fn n(&self) -> usize {
        self.n_per_cluster * self.k
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.k < 2 {
            return bad(format!("k must be >= 2, got {}", self.k));
        }
        if self.n_per_cluster == 0 {
            return bad("n_per_cluster must be positive".into());
        }
        if self.t_len == 0 {
            return bad("t_len must be >= 1".into());
        }
        if !(0.0..=1.0).contains(&self.p_inter)
            || !(0.0..=1.0).contains(&self.p_intra)
            || self.p_inter > self.p_intra
        {
            return bad(format!(
                "need 0 <= p_inter <= p_intra <= 1, got p_intra={} p_inter={}",
                self.p_intra, self.p_inter
            ));
        }
        if !(0.0..=1.0).contains(&self.flip_prob) {
            return bad(format!("flip_prob {} outside [0, 1]", self.flip_prob));
        }
        Ok(())
    }
}

/// One SBM draw: every unordered pair gets a unit edge with probability
/// `p_intra` when labels match and `p_inter` otherwise.
pub fn sbm_static<R: Rng + ?Sized>(
    labels: &[usize],
    p_intra: f64,
    p_inter: f64,
    rng: &mut R,
) -> WeightedGraph {
    let n = labels.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if labels[i] == labels[j] {
                p_intra
            } else {
                p_inter
            };
            if rng.random::<f64>() < p {
                edges.push((i, j, 1.0));
            }
        }
    }
    WeightedGraph::new(n, edges).expect("generated edges are valid")
}

pub fn frame_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Frame 0 holds the equisized planted partition. Each later frame copies the
/// previous labels and moves every node, with probability `flip_prob`, to one
/// of the other `k - 1` clusters chosen uniformly. Edges are redrawn
/// independently per frame.
pub fn sbm_tv_sequence(params: &SbmTvParams) -> Result<(TVGraphSequence, LabelSequence)> {
    params.validate()?;
    let k = params.k;
    let mut label_rng = frame_rng(params.seed, 0);
    let mut frames: Vec<Vec<usize>> = Vec::with_capacity(params.t_len);
    frames.push((0..params.n()).map(|i| i / params.n_per_cluster).collect());
    for t in 1..params.t_len {
        let mut next = frames[t - 1].clone();
        for l in next.iter_mut() {
            if label_rng.random::<f64>() < params.flip_prob {
                let r = label_rng.random_range(0..k - 1);
                *l = if r >= *l { r + 1 } else { r };
            }
        }
        frames.push(next);
    }
    let graphs = frames
        .iter()
        .enumerate()
        .map(|(t, labels)| {
            let mut rng = frame_rng(params.seed, t as u64 + 1);
            sbm_static(labels, params.p_intra, params.p_inter, &mut rng)
        })
        .collect();
    Ok((
        TVGraphSequence::new(graphs)?,
        LabelSequence::new(k, frames)?,
    ))
}
