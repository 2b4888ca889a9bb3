//! Independent numeric oracles. None of these call into the code under test;
//! they re-derive each quantity by brute force or generic optimization.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

/// `½ Σ_{i,j} w_ij (f_i - f_j)²` over the full dense adjacency.
pub fn laplacian_double_sum(w: &DMatrix<f64>, f: &[f64]) -> f64 {
    let n = f.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += w[(i, j)] * (f[i] - f[j]).powi(2);
        }
    }
    0.5 * acc
}

/// Pair-counting accuracy from explicit co-membership matrices.
pub fn pair_accuracy_brute(est: &[usize], truth: &[usize]) -> f64 {
    let n = est.len();
    let p = |l: &[usize]| DMatrix::from_fn(n, n, |i, j| u8::from(l[i] == l[j]));
    let (pe, pt) = (p(est), p(truth));
    let count = pe.iter().zip(pt.iter()).filter(|(a, b)| a == b).count();
    (count - n) as f64 / (n * (n - 1)) as f64
}

/// Minimizes `½‖x - z‖²` over `‖x‖² = N` by Riemannian gradient steps on the
/// sphere from a fixed start, without using the closed form.
pub fn sphere_projection_oracle(z: &[f64]) -> Vec<f64> {
    let n = z.len();
    let radius = (n as f64).sqrt();
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.37 * i as f64).collect();
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v *= radius / norm);
    let zn = z.iter().map(|v| v * v).sum::<f64>().sqrt();
    for _ in 0..20_000 {
        // gradient of ½‖x - z‖² is x - z; remove the radial part
        let g: Vec<f64> = x.iter().zip(z).map(|(a, b)| a - b).collect();
        let radial = g.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() / (n as f64);
        let step = 0.5 / (1.0 + zn / radius);
        for (xi, gi) in x.iter_mut().zip(&g) {
            *xi -= step * (gi - radial * *xi);
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v *= radius / norm);
    }
    x
}

/// Projection onto `|xᵀv| ≤ eps` by Newton's method on the quadratic penalty
/// `½‖x - z‖² + ½ρ max(0, |xᵀv| - eps)²` with a very large `ρ`.
pub fn slab_projection_oracle(z: &[f64], v: &[f64], eps: f64) -> Vec<f64> {
    let n = z.len();
    let rho = 1e11;
    let zv = DVector::from_row_slice(z);
    let vv = DVector::from_row_slice(v);
    let mut x = zv.clone();
    for _ in 0..50 {
        let s = x.dot(&vv);
        let excess = s.abs() - eps;
        let mut grad = &x - &zv;
        let mut hess = DMatrix::<f64>::identity(n, n);
        if excess > 0.0 {
            grad += &vv * (rho * excess * s.signum());
            hess += &vv * vv.transpose() * rho;
        }
        let dx = hess.lu().solve(&grad).expect("SPD Hessian");
        x -= &dx;
        if dx.norm() < 1e-15 {
            break;
        }
    }
    x.iter().copied().collect()
}

/// Elementwise `argmin_x tau|x| + ½(x - z)²` by golden-section search.
pub fn soft_threshold_oracle(z: &[f64], tau: f64) -> Vec<f64> {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    z.iter()
        .map(|&zi| {
            let f = |x: f64| tau * x.abs() + 0.5 * (x - zi).powi(2);
            let (mut a, mut b) = (-zi.abs() - tau - 1.0, zi.abs() + tau + 1.0);
            for _ in 0..200 {
                let c = b - phi * (b - a);
                let d = a + phi * (b - a);
                if f(c) <= f(d) {
                    b = d;
                } else {
                    a = c;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// `prox_{(γ α‖·‖₁)*}`: projection onto the ℓ∞ ball of radius `γα`.
pub fn l1_scaled_conjugate_prox(z: &[f64], gamma: f64, alpha: f64) -> Vec<f64> {
    let r = gamma * alpha;
    z.iter().map(|&v| v.clamp(-r, r)).collect()
}

/// `prox` of the support function of `{x : |xᵀv| ≤ eps}` (the conjugate of
/// its indicator, which is invariant to positive scaling).
pub fn slab_conjugate_prox(z: &[f64], v: &[f64], eps: f64) -> Vec<f64> {
    let vv: f64 = v.iter().map(|a| a * a).sum();
    let zv: f64 = z.iter().zip(v).map(|(a, b)| a * b).sum();
    let s = zv.signum() * (zv.abs() - eps).max(0.0) / vv;
    v.iter().map(|a| s * a).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
