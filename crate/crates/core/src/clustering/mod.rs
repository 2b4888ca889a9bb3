//! Clustering pipelines: the per-frame spectral baseline, two-way clustering
//! by polarity of the solver output, and sequential deflation for `k > 2`.

mod align;
mod kmeans;

pub use align::{align_labels, align_sequence};
pub use kmeans::{kmeans, kmeans_fit, wcss, KMeansFit, KMEANS_RESTARTS};

use crate::eigen::{smallest_eigenvectors, Eigenpairs};
use crate::error::{Error, Result};
use crate::graph::{Laplacian, TVGraphSequence};
use crate::labels::LabelSequence;
use crate::solver::{pds_solve, project_feasible, OrthogonalityBasis, SolveResult, SolverConfig};
use crate::temporal::StackedVector;

/// Cluster vectors found so far; `columns[l]` is `c^(l+1)` over all frames.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSequence {
    pub columns: Vec<StackedVector>,
}

impl EmbeddingSequence {
    pub fn t_len(&self) -> usize {
        self.columns.first().map_or(0, StackedVector::t_len)
    }

    /// Rows of frame `t`: one point per node with one coordinate per column.
    pub fn frame_rows(&self, t: usize) -> Vec<Vec<f64>> {
        let n = self.columns.first().map_or(0, StackedVector::n);
        (0..n)
            .map(|i| self.columns.iter().map(|c| c.frame(t)[i]).collect())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct MultiOutcome {
    pub labels: LabelSequence,
    pub embedding: EmbeddingSequence,
    /// One solve per deflation level.
    pub solves: Vec<SolveResult>,
}

/// Per-frame spectral clustering: `k` smallest eigenvectors of `L_t`, rows
/// clustered by k-means. Frames are clustered independently and only
/// renamed afterwards to agree with their predecessor.
pub fn static_sc(seq: &TVGraphSequence, k: usize, seed: u64) -> Result<LabelSequence> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be >= 2, got {k}")));
    }
    let mut frames = Vec::with_capacity(seq.t_len());
    for l in seq.laplacians() {
        let eig = smallest_eigenvectors(&l, k)?;
        let rows: Vec<Vec<f64>> = (0..l.n())
            .map(|i| eig.vectors.iter().map(|v| v[i]).collect())
            .collect();
        frames.push(kmeans(&rows, k, seed)?);
    }
    align_sequence(&mut frames, k);
    LabelSequence::new(k, frames)
}

/// Two-way clustering: label 0 where `[c_t]_i ≥ 0`, 1 otherwise.
pub fn tv_cluster_two(
    seq: &TVGraphSequence,
    cfg: &SolverConfig,
) -> Result<(LabelSequence, SolveResult)> {
    let ls = seq.laplacians();
    let spectra = frame_spectra(&ls, 2)?;
    let basis = OrthogonalityBasis::ones(seq.n(), seq.t_len());
    let init = warm_start(&spectra, &basis)?;
    let res = pds_solve(&ls, &basis, cfg, &init)?;
    let labels = polarity_labels(&res.c);
    Ok((LabelSequence::new(2, labels)?, res))
}

pub fn polarity_labels(c: &StackedVector) -> Vec<Vec<usize>> {
    c.frames()
        .map(|f| f.iter().map(|&v| usize::from(v < 0.0)).collect())
        .collect()
}

/// Computes `k - 1` cluster vectors by sequential deflation, the `l`-th
/// constrained orthogonal to the all-ones direction and all previous
/// vectors in each frame, then reads labels off per frame with k-means on
/// the stacked embedding and aligns them over time.
pub fn tv_cluster_multi(
    seq: &TVGraphSequence,
    k: usize,
    cfg: &SolverConfig,
) -> Result<MultiOutcome> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be >= 2, got {k}")));
    }
    if k - 1 > seq.n() {
        return Err(Error::InvalidParameter(format!(
            "{} cluster vectors requested for {} nodes",
            k - 1,
            seq.n()
        )));
    }
    let ls = seq.laplacians();
    let spectra = frame_spectra(&ls, k.min(seq.n()))?;
    let mut basis = OrthogonalityBasis::ones(seq.n(), seq.t_len());
    let mut columns = Vec::with_capacity(k - 1);
    let mut solves = Vec::with_capacity(k - 1);
    for _ in 1..k {
        let init = warm_start(&spectra, &basis)?;
        let res = pds_solve(&ls, &basis, cfg, &init)?;
        basis.push(&res.c)?;
        columns.push(res.c.clone());
        solves.push(res);
    }
    let embedding = EmbeddingSequence { columns };
    let mut frames = Vec::with_capacity(seq.t_len());
    for t in 0..seq.t_len() {
        frames.push(kmeans(&embedding.frame_rows(t), k, cfg.seed)?);
    }
    align_sequence(&mut frames, k);
    Ok(MultiOutcome {
        labels: LabelSequence::new(k, frames)?,
        embedding,
        solves,
    })
}

fn frame_spectra(ls: &[Laplacian], m: usize) -> Result<Vec<Eigenpairs>> {
    ls.iter().map(|l| smallest_eigenvectors(l, m)).collect()
}

/// Start point for the next deflation level: in each frame, the first
/// eigenvector (past those already spent on earlier levels) whose component
/// outside the current basis is non-negligible, projected and put on the
/// sphere. Signs follow the previous frame.
fn warm_start(spectra: &[Eigenpairs], basis: &OrthogonalityBasis) -> Result<StackedVector> {
    let n = basis.n();
    let level = basis.level();
    let mut frames: Vec<Vec<f64>> = Vec::with_capacity(spectra.len());
    for (t, eig) in spectra.iter().enumerate() {
        let mut chosen = None;
        for v in eig.vectors.iter().skip(level) {
            let mut cand = v.clone();
            for u in basis.frame(t) {
                let p: f64 = cand.iter().zip(u).map(|(a, b)| a * b).sum();
                cand.iter_mut().zip(u).for_each(|(a, b)| *a -= p * b);
            }
            let norm: f64 = cand.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm > 1e-3 {
                chosen = Some(cand);
                break;
            }
        }
        // fall back to a fixed non-constant ramp; feasibility projection follows
        let mut f =
            chosen.unwrap_or_else(|| (0..n).map(|i| i as f64 - (n as f64 - 1.0) / 2.0).collect());
        if let Some(prev) = frames.last() {
            let s: f64 = f.iter().zip(prev).map(|(a, b)| a * b).sum();
            if s < 0.0 {
                f.iter_mut().for_each(|a| *a = -*a);
            }
        }
        frames.push(f);
    }
    let mut c = StackedVector::from_frames(&frames)?;
    project_feasible(&mut c, basis)?;
    Ok(c)
}
