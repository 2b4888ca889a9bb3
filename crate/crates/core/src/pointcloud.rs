//! Registered dynamic point clouds: CSV loading, farthest-point downsampling
//! shared across frames, and k-nearest-neighbor graphs.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

pub type Point = [f64; 3];

/// Frames of equally many points; point `i` is the same physical point in
/// every frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFrameSequence {
    frames: Vec<Vec<Point>>,
}

impl PointFrameSequence {
    pub fn new(frames: Vec<Vec<Point>>) -> Result<Self> {
        let n = frames
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidParameter("no frames found".into()))?;
        for (t, f) in frames.iter().enumerate() {
            if f.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "inconsistent point count: frame {t} has {} points, expected {n}",
                    f.len()
                )));
            }
            if f.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "frame {t} has a non-finite coordinate"
                )));
            }
        }
        Ok(Self { frames })
    }

    pub fn n(&self) -> usize {
        self.frames[0].len()
    }

    pub fn t_len(&self) -> usize {
        self.frames.len()
    }

    pub fn frames(&self) -> &[Vec<Point>] {
        &self.frames
    }

    /// Keeps only `indices` (in the given order) in every frame.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self {
            frames: self
                .frames
                .iter()
                .map(|f| indices.iter().map(|&i| f[i]).collect())
                .collect(),
        }
    }
}

/// Loads every `*.csv` in `dir`, in lexicographic filename order, as one
/// frame of `x,y,z` lines.
pub fn load_frames(dir: &Path) -> Result<PointFrameSequence> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "csv"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::format(dir, "no frames found"));
    }
    let mut frames = Vec::with_capacity(files.len());
    for path in &files {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut pts = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::format(
                    path,
                    format!(
                        "line {}: expected 3 fields, found {}",
                        lineno + 1,
                        fields.len()
                    ),
                ));
            }
            let mut p = [0.0; 3];
            for (slot, field) in p.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|_| {
                    Error::format(
                        path,
                        format!("line {}: non-numeric field {field:?}", lineno + 1),
                    )
                })?;
            }
            pts.push(p);
        }
        frames.push(pts);
    }
    PointFrameSequence::new(frames).map_err(|e| match e {
        Error::InvalidParameter(m) => Error::format(dir, m),
        other => other,
    })
}

fn dist2(a: &Point, b: &Point) -> f64 {
    (0..3).map(|d| (a[d] - b[d]) * (a[d] - b[d])).sum()
}

/// Farthest-point sampling on frame 0 from a seeded start point; the chosen
/// index set (sorted ascending) is applied to every frame.
pub fn downsample(
    seq: &PointFrameSequence,
    target_n: usize,
    seed: u64,
) -> Result<PointFrameSequence> {
    Ok(seq.select(&farthest_point_indices(&seq.frames[0], target_n, seed)?))
}

pub fn farthest_point_indices(points: &[Point], target_n: usize, seed: u64) -> Result<Vec<usize>> {
    let n = points.len();
    if target_n > n {
        return Err(Error::InvalidParameter(format!(
            "cannot downsample {n} points to {target_n}"
        )));
    }
    if target_n == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = rng.random_range(0..n);
    let mut chosen = vec![false; n];
    chosen[first] = true;
    let mut picked = vec![first];
    let mut d: Vec<f64> = points.iter().map(|p| dist2(p, &points[first])).collect();
    while picked.len() < target_n {
        let mut best = (usize::MAX, -1.0);
        for i in 0..n {
            if !chosen[i] && d[i] > best.1 {
                best = (i, d[i]);
            }
        }
        let next = best.0;
        chosen[next] = true;
        picked.push(next);
        for (di, p) in d.iter_mut().zip(points) {
            *di = di.min(dist2(p, &points[next]));
        }
    }
    picked.sort_unstable();
    Ok(picked)
}

/// Directed k-NN by Euclidean distance (ties to the lower index), made
/// undirected by union, unit weights.
pub fn knn_graph(points: &[Point], k: usize) -> Result<WeightedGraph> {
    let n = points.len();
    if k >= n {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be smaller than the point count {n}"
        )));
    }
    let mut pairs = BTreeSet::new();
    let mut order: Vec<(f64, usize)> = Vec::with_capacity(n);
    for i in 0..n {
        order.clear();
        order.extend(
            (0..n)
                .filter(|&j| j != i)
                .map(|j| (dist2(&points[i], &points[j]), j)),
        );
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, j) in order.iter().take(k) {
            pairs.insert((i.min(j), i.max(j)));
        }
    }
    WeightedGraph::new(n, pairs.into_iter().map(|(i, j)| (i, j, 1.0)))
}

/// A toy articulated body: a torso blob plus `parts - 1` limb blobs held at
/// a fixed distance from it that swing smoothly over time. Blobs sit close
/// enough for a k-NN graph to link neighbors with a few edges. Each part is rigid
/// (fixed per-point offsets), so registration is exact. Returns the frames
/// and each point's part id.
pub fn articulated_blobs(
    parts: usize,
    points_per_part: usize,
    t_len: usize,
    seed: u64,
) -> (PointFrameSequence, Vec<usize>) {
    const BLOB_SD: f64 = 0.35;
    const REACH: f64 = 1.8;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jitter = Normal::new(0.0, BLOB_SD).expect("valid sd");
    let n = parts * points_per_part;
    let labels: Vec<usize> = (0..n).map(|i| i / points_per_part).collect();
    let offsets: Vec<Point> = (0..n)
        .map(|_| {
            [
                jitter.sample(&mut rng),
                jitter.sample(&mut rng),
                jitter.sample(&mut rng),
            ]
        })
        .collect();
    let limbs = parts.saturating_sub(1).max(1);
    let frames = (0..t_len)
        .map(|t| {
            let time = t as f64;
            let body = [0.05 * time, 0.02 * time, 0.0];
            offsets
                .iter()
                .zip(&labels)
                .map(|(&j, &part)| {
                    if part == 0 {
                        return [body[0] + j[0], body[1] + j[1], body[2] + j[2]];
                    }
                    let base = std::f64::consts::TAU * (part - 1) as f64 / limbs as f64;
                    let yaw = base + 0.3 * (0.15 * time + part as f64).sin();
                    let pitch = 0.4 * (0.1 * time + 0.5 * part as f64).cos();
                    let dir = [
                        yaw.cos() * pitch.cos(),
                        yaw.sin() * pitch.cos(),
                        pitch.sin(),
                    ];
                    [
                        body[0] + REACH * dir[0] + j[0],
                        body[1] + REACH * dir[1] + j[1],
                        body[2] + REACH * dir[2] + j[2],
                    ]
                })
                .collect()
        })
        .collect();
    (
        PointFrameSequence::new(frames).expect("finite synthetic frames"),
        labels,
    )
}
