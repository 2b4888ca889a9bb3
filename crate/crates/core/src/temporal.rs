//! Frame-major stacked vectors and the first-order temporal difference
//! operator acting on them.

use crate::error::{Error, Result};

/// `T·N` reals, frame `t` occupying `[tN, (t+1)N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StackedVector {
    n: usize,
    t_len: usize,
    values: Vec<f64>,
}

impl StackedVector {
    pub fn zeros(n: usize, t_len: usize) -> Self {
        Self {
            n,
            t_len,
            values: vec![0.0; n * t_len],
        }
    }

    pub fn from_values(n: usize, t_len: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * t_len {
            return Err(Error::DimensionMismatch {
                expected: n * t_len,
                actual: values.len(),
            });
        }
        Ok(Self { n, t_len, values })
    }

    pub fn from_frames(frames: &[Vec<f64>]) -> Result<Self> {
        let n = frames.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(n * frames.len());
        for f in frames {
            if f.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: f.len(),
                });
            }
            values.extend_from_slice(f);
        }
        Ok(Self {
            n,
            t_len: frames.len(),
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_len(&self) -> usize {
        self.t_len
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn frame(&self, t: usize) -> &[f64] {
        &self.values[t * self.n..(t + 1) * self.n]
    }

    pub fn frame_mut(&mut self, t: usize) -> &mut [f64] {
        &mut self.values[t * self.n..(t + 1) * self.n]
    }

    pub fn frames(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n.max(1)).take(self.t_len)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

/// `Φc`: frame 0 is zero, frame `t ≥ 1` is `c_t - c_{t-1}`.
pub fn temporal_diff(c: &StackedVector) -> StackedVector {
    let mut out = StackedVector::zeros(c.n, c.t_len);
    temporal_diff_into(c, &mut out);
    out
}

pub(crate) fn temporal_diff_into(c: &StackedVector, out: &mut StackedVector) {
    let n = c.n;
    out.frame_mut(0).fill(0.0);
    for t in 1..c.t_len {
        let (prev, cur) = (&c.values[(t - 1) * n..t * n], &c.values[t * n..(t + 1) * n]);
        for ((o, a), b) in out.values[t * n..(t + 1) * n].iter_mut().zip(cur).zip(prev) {
            *o = a - b;
        }
    }
}

/// `Φᵀd`: frame `t` is `[t ≥ 1] d_t - [t < T-1] d_{t+1}`. Frame 0 of `d` is
/// ignored because `Φ` never writes there.
pub fn temporal_diff_adjoint(d: &StackedVector) -> StackedVector {
    let mut out = StackedVector::zeros(d.n, d.t_len);
    temporal_diff_adjoint_into(d, &mut out);
    out
}

pub(crate) fn temporal_diff_adjoint_into(d: &StackedVector, out: &mut StackedVector) {
    let (n, t_len) = (d.n, d.t_len);
    for t in 0..t_len {
        let o = &mut out.values[t * n..(t + 1) * n];
        if t >= 1 {
            o.copy_from_slice(&d.values[t * n..(t + 1) * n]);
        } else {
            o.fill(0.0);
        }
        if t + 1 < t_len {
            for (oi, di) in o.iter_mut().zip(&d.values[(t + 1) * n..(t + 2) * n]) {
                *oi -= di;
            }
        }
    }
}
