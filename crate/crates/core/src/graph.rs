//! Weighted undirected graphs, their combinatorial Laplacians, and registered
//! graph sequences.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Symmetric nonnegative weighted adjacency on `n` nodes.
///
/// Each unordered pair is stored once with `i < j`; the edge list is kept
/// sorted so two graphs with the same edges compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) out of range for {n} nodes"
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at node {i}")));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) has weight {w}"
                )));
            }
            canon.push((i.min(j), i.max(j), w));
        }
        canon.sort_by_key(|e| (e.0, e.1));
        if let Some(w) = canon
            .windows(2)
            .find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
        {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self { n, edges: canon })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(i, j, w)` with `i < j`, sorted.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for &(i, j, w) in &self.edges {
            d[i] += w;
            d[j] += w;
        }
        d
    }

    /// Dense adjacency matrix `W`.
    pub fn adjacency_dense(&self) -> DMatrix<f64> {
        let mut w = DMatrix::zeros(self.n, self.n);
        for &(i, j, wij) in &self.edges {
            w[(i, j)] = wij;
            w[(j, i)] = wij;
        }
        w
    }
}

/// Combinatorial Laplacian `L = D - W` kept in sparse row form.
#[derive(Debug, Clone)]
pub struct Laplacian {
    n: usize,
    degrees: Vec<f64>,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    weights: Vec<f64>,
}

impl Laplacian {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn max_degree(&self) -> f64 {
        self.degrees.iter().copied().fold(0.0, f64::max)
    }

    /// `out = L x`.
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(out.len(), self.n);
        for i in 0..self.n {
            let mut acc = self.degrees[i] * x[i];
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc -= self.weights[k] * x[self.cols[k]];
            }
            out[i] = acc;
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.apply_into(x, &mut out);
        out
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            m[(i, i)] = self.degrees[i];
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                m[(i, self.cols[k])] -= self.weights[k];
            }
        }
        m
    }

    /// Gershgorin upper bound on the spectrum: `2 * max degree`.
    pub fn spectral_upper_bound(&self) -> f64 {
        2.0 * self.max_degree()
    }
}

pub fn build_laplacian(g: &WeightedGraph) -> Laplacian {
    let n = g.n;
    let mut counts = vec![0usize; n];
    for &(i, j, _) in &g.edges {
        counts[i] += 1;
        counts[j] += 1;
    }
    let mut row_ptr = vec![0usize; n + 1];
    for i in 0..n {
        row_ptr[i + 1] = row_ptr[i] + counts[i];
    }
    let mut fill = row_ptr[..n].to_vec();
    let mut cols = vec![0usize; row_ptr[n]];
    let mut weights = vec![0.0; row_ptr[n]];
    for &(i, j, w) in &g.edges {
        cols[fill[i]] = j;
        weights[fill[i]] = w;
        fill[i] += 1;
        cols[fill[j]] = i;
        weights[fill[j]] = w;
        fill[j] += 1;
    }
    Laplacian {
        n,
        degrees: g.degrees(),
        row_ptr,
        cols,
        weights,
    }
}

/// `fᵀ L f`, the graph-signal smoothness `½ Σ w_ij (f_i - f_j)²`.
pub fn quadratic_form(l: &Laplacian, f: &[f64]) -> Result<f64> {
    if f.len() != l.n {
        return Err(Error::DimensionMismatch {
            expected: l.n,
            actual: f.len(),
        });
    }
    let mut acc = 0.0;
    for i in 0..l.n {
        for k in l.row_ptr[i]..l.row_ptr[i + 1] {
            let j = l.cols[k];
            if j > i {
                let d = f[i] - f[j];
                acc += l.weights[k] * d * d;
            }
        }
    }
    Ok(acc)
}

/// Registered graphs over a fixed node set, one per time slot.
#[derive(Debug, Clone, PartialEq)]
pub struct TVGraphSequence {
    n: usize,
    graphs: Vec<WeightedGraph>,
}

impl TVGraphSequence {
    pub fn new(graphs: Vec<WeightedGraph>) -> Result<Self> {
        let first = graphs
            .first()
            .ok_or_else(|| Error::InvalidGraph("sequence needs at least one frame".into()))?;
        let n = first.n();
        if let Some((t, g)) = graphs.iter().enumerate().find(|(_, g)| g.n() != n) {
            return Err(Error::InvalidGraph(format!(
                "frame {t} has {} nodes, expected {n}",
                g.n()
            )));
        }
        Ok(Self { n, graphs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_len(&self) -> usize {
        self.graphs.len()
    }

    pub fn graphs(&self) -> &[WeightedGraph] {
        &self.graphs
    }

    pub fn laplacians(&self) -> Vec<Laplacian> {
        self.graphs.iter().map(build_laplacian).collect()
    }
}
