//! Proximal operators used by the primal-dual iteration.

use crate::error::{Error, Result};

/// Radial projection onto the sphere `‖x‖² = N` where `N = z.len()`.
pub fn prox_sphere(z: &[f64]) -> Result<Vec<f64>> {
    let mut out = z.to_vec();
    prox_sphere_in_place(&mut out)?;
    Ok(out)
}

pub(crate) fn prox_sphere_in_place(z: &mut [f64]) -> Result<()> {
    let sq: f64 = z.iter().map(|v| v * v).sum();
    if sq == 0.0 || !sq.is_finite() {
        return Err(Error::Degenerate(format!(
            "cannot project vector with squared norm {sq} onto the sphere"
        )));
    }
    let scale = (z.len() as f64 / sq).sqrt();
    z.iter_mut().for_each(|v| *v *= scale);
    Ok(())
}

/// Euclidean projection onto the slab `{x : |xᵀv| ≤ eps}`.
pub fn prox_slab(z: &[f64], v: &[f64], eps: f64) -> Result<Vec<f64>> {
    let mut out = z.to_vec();
    project_slab_in_place(&mut out, v, eps)?;
    Ok(out)
}

pub(crate) fn project_slab_in_place(z: &mut [f64], v: &[f64], eps: f64) -> Result<()> {
    if z.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            actual: z.len(),
        });
    }
    let vv: f64 = v.iter().map(|x| x * x).sum();
    if vv == 0.0 {
        return Err(Error::Degenerate(
            "slab direction is the zero vector".into(),
        ));
    }
    let zv: f64 = z.iter().zip(v).map(|(a, b)| a * b).sum();
    if zv.abs() <= eps {
        return Ok(());
    }
    let shift = (zv - zv.signum() * eps) / vv;
    z.iter_mut().zip(v).for_each(|(a, b)| *a -= shift * b);
    Ok(())
}

/// Elementwise `sgn(z_i) max(0, |z_i| - tau)`.
pub fn soft_threshold(z: &[f64], tau: f64) -> Vec<f64> {
    z.iter()
        .map(|&x| x.signum() * (x.abs() - tau).max(0.0))
        .collect()
}

/// A function with a computable proximal operator `prox_{γf}`.
pub trait Proximable {
    fn prox(&self, z: &[f64], gamma: f64) -> Vec<f64>;
}

/// `α‖·‖₁`.
#[derive(Debug, Clone, Copy)]
pub struct L1Norm {
    pub alpha: f64,
}

impl Proximable for L1Norm {
    fn prox(&self, z: &[f64], gamma: f64) -> Vec<f64> {
        soft_threshold(z, gamma * self.alpha)
    }
}

/// Indicator of the intersection of slabs `|xᵀv| ≤ eps`, one per direction.
///
/// With more than one direction the prox is the sequence of single-slab
/// projections, which is exact when the directions are orthogonal.
#[derive(Debug, Clone)]
pub struct SlabIndicator<'a> {
    pub directions: &'a [Vec<f64>],
    pub eps: f64,
}

impl Proximable for SlabIndicator<'_> {
    fn prox(&self, z: &[f64], _gamma: f64) -> Vec<f64> {
        let mut out = z.to_vec();
        for v in self.directions {
            project_slab_in_place(&mut out, v, self.eps).expect("slab directions are nonzero");
        }
        out
    }
}

/// `prox_{γf*}(z)` through the Moreau identity: `z - γ prox_{f/γ}(z/γ)`.
pub fn prox_conjugate<F: Proximable + ?Sized>(f: &F, gamma: f64, z: &[f64]) -> Vec<f64> {
    let scaled: Vec<f64> = z.iter().map(|v| v / gamma).collect();
    let p = f.prox(&scaled, 1.0 / gamma);
    z.iter().zip(&p).map(|(a, b)| a - gamma * b).collect()
}
