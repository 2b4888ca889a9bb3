//! Evaluation: pair-counting accuracy, label mismatch counts, RatioCut and
//! eigengap profiles.

use crate::eigen::smallest_eigenvectors;
use crate::error::{Error, Result};
use crate::graph::{Laplacian, WeightedGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyReport {
    pub per_frame: Vec<f64>,
    pub mean: f64,
    pub mismatch_per_frame: Vec<usize>,
}

/// Fraction of ordered node pairs `(i, j)`, `i ≠ j`, on which `est` and
/// `truth` agree about co-membership.
pub fn pair_accuracy(est: &[usize], truth: &[usize]) -> Result<f64> {
    let n = truth.len();
    if est.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: est.len(),
        });
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "pair accuracy needs at least 2 nodes, got {n}"
        )));
    }
    let mut agree = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if (est[i] == est[j]) == (truth[i] == truth[j]) {
                agree += 1;
            }
        }
    }
    // symmetric count over unordered pairs equals the ordered count / 2
    Ok(2.0 * agree as f64 / (n * (n - 1)) as f64)
}

/// Nodes whose label differs between two (already aligned) frames.
pub fn mismatch_count(labels: &[usize], prev: &[usize]) -> Result<usize> {
    if labels.len() != prev.len() {
        return Err(Error::DimensionMismatch {
            expected: prev.len(),
            actual: labels.len(),
        });
    }
    Ok(labels.iter().zip(prev).filter(|(a, b)| a != b).count())
}

pub fn accuracy_report(est: &[Vec<usize>], truth: &[Vec<usize>]) -> Result<AccuracyReport> {
    if est.len() != truth.len() || est.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            actual: est.len(),
        });
    }
    let per_frame = est
        .iter()
        .zip(truth)
        .map(|(e, t)| pair_accuracy(e, t))
        .collect::<Result<Vec<_>>>()?;
    let mean = per_frame.iter().sum::<f64>() / per_frame.len() as f64;
    let mismatch_per_frame = est
        .windows(2)
        .map(|w| mismatch_count(&w[1], &w[0]))
        .collect::<Result<Vec<_>>>()?;
    Ok(AccuracyReport {
        per_frame,
        mean,
        mismatch_per_frame,
    })
}

/// `Σ_l cut(A_l, Ā_l) / |A_l|`.
pub fn ratiocut(g: &WeightedGraph, labels: &[usize], k: usize) -> Result<f64> {
    if labels.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: labels.len(),
        });
    }
    let mut sizes = vec![0usize; k];
    for &l in labels {
        if l >= k {
            return Err(Error::InvalidParameter(format!("label {l} >= k = {k}")));
        }
        sizes[l] += 1;
    }
    if let Some(empty) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::EmptyCluster(empty));
    }
    let mut cut = vec![0.0; k];
    for &(i, j, w) in g.edges() {
        if labels[i] != labels[j] {
            cut[labels[i]] += w;
            cut[labels[j]] += w;
        }
    }
    Ok(cut.iter().zip(&sizes).map(|(c, &s)| c / s as f64).sum())
}

/// `λ_{i+1} - λ_i` for the `m` smallest eigenvalues.
pub fn eigengap_profile(l: &Laplacian, m: usize) -> Result<Vec<f64>> {
    let eig = smallest_eigenvectors(l, m)?;
    Ok(eig.values.windows(2).map(|w| w[1] - w[0]).collect())
}
