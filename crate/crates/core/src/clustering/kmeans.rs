//! Lloyd's k-means with k-means++ seeding and seeded restarts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const KMEANS_RESTARTS: usize = 50;
const MAX_LLOYD_ITERS: usize = 300;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansFit {
    pub assignments: Vec<usize>,
    /// Within-cluster sum of squared distances.
    pub inertia: f64,
}

/// Best of [`KMEANS_RESTARTS`] runs by inertia. Restart `r` draws from
/// stream `r` of `ChaCha8Rng::seed_from_u64(seed)`. Cluster ids are renamed
/// in order of first appearance.
pub fn kmeans(points: &[Vec<f64>], k: usize, seed: u64) -> Result<Vec<usize>> {
    kmeans_fit(points, k, seed, KMEANS_RESTARTS).map(|f| f.assignments)
}

pub fn kmeans_fit(points: &[Vec<f64>], k: usize, seed: u64, restarts: usize) -> Result<KMeansFit> {
    let n = points.len();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "k-means needs 1 <= k <= n, got k={k} n={n}"
        )));
    }
    let m = points[0].len();
    if let Some(p) = points.iter().find(|p| p.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: p.len(),
        });
    }
    let mut best: Option<KMeansFit> = None;
    for r in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let fit = lloyd(points, k, &mut rng);
        if best.as_ref().is_none_or(|b| fit.inertia < b.inertia) {
            best = Some(fit);
        }
    }
    let mut fit = best.expect("at least one restart");
    canonical_names(&mut fit.assignments, k);
    Ok(fit)
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn plus_plus_init(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut centers = vec![points[rng.random_range(0..n)].clone()];
    let mut d2: Vec<f64> = points.iter().map(|p| sq_dist(p, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = d2.iter().sum();
        let idx = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut chosen = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if target < w {
                    chosen = i;
                    break;
                }
                target -= w;
            }
            chosen
        } else {
            rng.random_range(0..n)
        };
        centers.push(points[idx].clone());
        for (d, p) in d2.iter_mut().zip(points) {
            *d = d.min(sq_dist(p, &centers[centers.len() - 1]));
        }
    }
    centers
}

fn lloyd(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> KMeansFit {
    let m = points[0].len();
    let mut centers = plus_plus_init(points, k, rng);
    let mut assign = vec![usize::MAX; points.len()];
    for _ in 0..MAX_LLOYD_ITERS {
        let mut changed = false;
        for (a, p) in assign.iter_mut().zip(points) {
            let best = nearest(p, &centers);
            if *a != best {
                *a = best;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        let mut sums = vec![vec![0.0; m]; k];
        let mut counts = vec![0usize; k];
        for (&a, p) in assign.iter().zip(points) {
            counts[a] += 1;
            sums[a].iter_mut().zip(p).for_each(|(s, x)| *s += x);
        }
        for c in 0..k {
            if counts[c] > 0 {
                centers[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
        // An empty cluster takes over the point farthest from its center.
        for c in 0..k {
            if counts[c] == 0 {
                let far = (0..points.len())
                    .filter(|&i| counts[assign[i]] > 1)
                    .max_by(|&i, &j| {
                        sq_dist(&points[i], &centers[assign[i]])
                            .total_cmp(&sq_dist(&points[j], &centers[assign[j]]))
                    });
                if let Some(i) = far {
                    counts[assign[i]] -= 1;
                    counts[c] = 1;
                    assign[i] = c;
                    centers[c] = points[i].clone();
                }
            }
        }
    }
    let inertia = assign
        .iter()
        .zip(points)
        .map(|(&a, p)| sq_dist(p, &centers[a]))
        .sum();
    KMeansFit {
        assignments: assign,
        inertia,
    }
}

fn nearest(p: &[f64], centers: &[Vec<f64>]) -> usize {
    let mut best = (0, f64::INFINITY);
    for (c, center) in centers.iter().enumerate() {
        let d = sq_dist(p, center);
        if d < best.1 {
            best = (c, d);
        }
    }
    best.0
}

fn canonical_names(assign: &mut [usize], k: usize) {
    let mut map = vec![usize::MAX; k];
    let mut next = 0;
    for a in assign.iter_mut() {
        if map[*a] == usize::MAX {
            map[*a] = next;
            next += 1;
        }
        *a = map[*a];
    }
}

/// Sum of squared distances of each point to its cluster mean.
pub fn wcss(points: &[Vec<f64>], assign: &[usize], k: usize) -> f64 {
    let m = points.first().map_or(0, Vec::len);
    let mut sums = vec![vec![0.0; m]; k];
    let mut counts = vec![0usize; k];
    for (&a, p) in assign.iter().zip(points) {
        counts[a] += 1;
        sums[a].iter_mut().zip(p).for_each(|(s, x)| *s += x);
    }
    assign
        .iter()
        .zip(points)
        .map(|(&a, p)| {
            let mean: Vec<f64> = sums[a].iter().map(|s| s / counts[a] as f64).collect();
            sq_dist(p, &mean)
        })
        .sum()
}
