//! Spectral routines on graph Laplacians.
//!
//! The largest eigenvalue (needed for the solver's Lipschitz constant) comes
//! from power iteration on the sparse operator. The few smallest eigenpairs
//! come from a dense symmetric eigendecomposition, which is exact and cheap
//! at a few hundred nodes.

use nalgebra::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Laplacian;

const POWER_TOL: f64 = 1e-8;
const POWER_MAX_ITERS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxEigenvalue {
    pub value: f64,
    pub converged: bool,
}

/// Largest eigenvalue of `diag(L_1, ..., L_T)`, i.e. the maximum over blocks.
///
/// Each block runs power iteration until the Rayleigh quotient changes by
/// less than `1e-8` relative. If any block hits the iteration cap the best
/// estimate is returned with `converged = false`.
pub fn max_eigenvalue(ls: &[Laplacian]) -> Result<MaxEigenvalue> {
    if ls.is_empty() {
        return Err(Error::InvalidParameter("no Laplacians given".into()));
    }
    let mut best = MaxEigenvalue {
        value: 0.0,
        converged: true,
    };
    for l in ls {
        let est = power_iteration(l);
        best.value = best.value.max(est.value);
        best.converged &= est.converged;
    }
    Ok(best)
}

fn power_iteration(l: &Laplacian) -> MaxEigenvalue {
    let n = l.n();
    if n == 0 || l.max_degree() == 0.0 {
        return MaxEigenvalue {
            value: 0.0,
            converged: true,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    normalize(&mut x);
    let mut y = vec![0.0; n];
    let mut lambda = 0.0;
    for _ in 0..POWER_MAX_ITERS {
        l.apply_into(&x, &mut y);
        let rq: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return MaxEigenvalue {
                value: rq.max(lambda),
                converged: true,
            };
        }
        let done = (rq - lambda).abs() <= POWER_TOL * rq.abs();
        lambda = rq;
        if done {
            return MaxEigenvalue {
                value: lambda,
                converged: true,
            };
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }
    MaxEigenvalue {
        value: lambda,
        converged: false,
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

/// The `m` smallest eigenpairs of `L`, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    /// Unit-norm eigenvectors, `vectors[k]` pairs with `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Each eigenvector's sign is fixed so its largest-magnitude entry (first one
/// on ties) is positive.
pub fn smallest_eigenvectors(l: &Laplacian, m: usize) -> Result<Eigenpairs> {
    let n = l.n();
    if m == 0 || m > n {
        return Err(Error::TooManyEigenpairs { requested: m, n });
    }
    let eig = SymmetricEigen::new(l.to_dense());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut values = Vec::with_capacity(m);
    let mut vectors = Vec::with_capacity(m);
    for &k in order.iter().take(m) {
        values.push(eig.eigenvalues[k]);
        let mut v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
        let pivot = v
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |acc, (i, x)| {
                if x.abs() > acc.1 {
                    (i, x.abs())
                } else {
                    acc
                }
            })
            .0;
        if v[pivot] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        vectors.push(v);
    }
    Ok(Eigenpairs { values, vectors })
}
