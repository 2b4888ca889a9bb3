//! Primal-dual splitting for the temporally regularized spectral problem
//!
//! ```text
//! min_c  ½ Σ_t c_tᵀ L_t c_t + α ‖Φ c‖₁
//! s.t.   |c_tᵀ v| ≤ ε for every basis direction v of frame t,  ‖c_t‖² = N
//! ```
//!
//! split as `f1 = ½ cᵀLc` (gradient step), `f2` = sphere indicators (primal
//! prox), and `f3(Mc)` with `M = [I; Φ]` carrying the slab indicators and
//! the ℓ1 term (dual proxes via the Moreau identity).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::prox::{project_slab_in_place, prox_sphere_in_place};
use crate::eigen::max_eigenvalue;
use crate::error::{Error, Result};
use crate::graph::Laplacian;
use crate::temporal::{temporal_diff_adjoint_into, temporal_diff_into, StackedVector};

/// `‖M‖² ≤ ‖I‖² + ‖Φ‖² ≤ 1 + 4`.
pub const M_NORM_SQ_BOUND: f64 = 5.0;

const ZERO_PERTURBATION_NORM: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub alpha: f64,
    /// Primal step; `None` selects `2/(11β)`.
    pub gamma1: Option<f64>,
    /// Dual step; `None` selects `β`.
    pub gamma2: Option<f64>,
    /// Slab half-width; `None` selects `1e-6·√N`.
    pub epsilon: Option<f64>,
    pub sigma: f64,
    pub max_iters: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            gamma1: None,
            gamma2: None,
            epsilon: None,
            sigma: 1e-5,
            max_iters: 20_000,
            restarts: 1,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return bad(format!("alpha must be finite and >= 0, got {}", self.alpha));
        }
        for (name, g) in [("gamma1", self.gamma1), ("gamma2", self.gamma2)] {
            if let Some(g) = g {
                if !(g > 0.0 && g.is_finite()) {
                    return bad(format!("{name} must be positive, got {g}"));
                }
            }
        }
        if let Some(e) = self.epsilon {
            if !(e >= 0.0 && e.is_finite()) {
                return bad(format!("epsilon must be >= 0, got {e}"));
            }
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return bad(format!("sigma must be positive, got {}", self.sigma));
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive".into());
        }
        if self.restarts == 0 {
            return bad("restarts must be >= 1".into());
        }
        Ok(())
    }

    pub fn epsilon_for(&self, n: usize) -> f64 {
        self.epsilon.unwrap_or(1e-6 * (n as f64).sqrt())
    }

    /// Resolved `(γ1, γ2)` for Lipschitz constant `beta`.
    ///
    /// The defaults meet `1/γ1 - 5γ2 ≥ β/2` with equality. The slab dual is
    /// locally stable around a constrained eigenvector with eigenvalue `λ`
    /// only when `γ2 > λ`; `γ2 = β` covers every `λ ≤ β`. Smaller dual steps
    /// let the iterates slide onto the constant vector.
    pub fn steps_for(&self, beta: f64) -> (f64, f64) {
        (
            self.gamma1.unwrap_or(2.0 / (11.0 * beta)),
            self.gamma2.unwrap_or(beta),
        )
    }
}

/// Per-frame constraint directions, unit norm and mutually orthogonal.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityBasis {
    n: usize,
    frames: Vec<Vec<Vec<f64>>>,
}

impl OrthogonalityBasis {
    const ORTHO_TOL: f64 = 1e-8;

    /// The normalized all-ones direction in every frame.
    pub fn ones(n: usize, t_len: usize) -> Self {
        let u = vec![1.0 / (n as f64).sqrt(); n];
        Self {
            n,
            frames: vec![vec![u]; t_len],
        }
    }

    pub fn new(n: usize, frames: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let basis = Self { n, frames };
        for (t, dirs) in basis.frames.iter().enumerate() {
            for (a, u) in dirs.iter().enumerate() {
                if u.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        actual: u.len(),
                    });
                }
                for (b, w) in dirs.iter().enumerate().take(a + 1) {
                    let want = if a == b { 1.0 } else { 0.0 };
                    if (dot(u, w) - want).abs() > Self::ORTHO_TOL {
                        return Err(Error::InvalidParameter(format!(
                            "basis directions {b} and {a} of frame {t} are not orthonormal"
                        )));
                    }
                }
            }
        }
        Ok(basis)
    }

    /// Appends the normalized frames of `c` as one more direction per frame.
    pub fn push(&mut self, c: &StackedVector) -> Result<()> {
        if c.t_len() != self.frames.len() || c.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n * self.frames.len(),
                actual: c.as_slice().len(),
            });
        }
        for (dirs, ct) in self.frames.iter_mut().zip(c.frames()) {
            let norm = dot(ct, ct).sqrt();
            if norm == 0.0 {
                return Err(Error::Degenerate(
                    "zero vector in orthogonality basis".into(),
                ));
            }
            let u: Vec<f64> = ct.iter().map(|v| v / norm).collect();
            if let Some(w) = dirs.iter().find(|w| dot(&u, w).abs() > Self::ORTHO_TOL) {
                return Err(Error::InvalidParameter(format!(
                    "new direction has overlap {} with existing basis",
                    dot(&u, w)
                )));
            }
            dirs.push(u);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_len(&self) -> usize {
        self.frames.len()
    }

    pub fn frame(&self, t: usize) -> &[Vec<f64>] {
        &self.frames[t]
    }

    pub fn level(&self) -> usize {
        self.frames.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub c: StackedVector,
    pub d1: StackedVector,
    pub d2: StackedVector,
    pub iters: usize,
    pub converged: bool,
    /// Objective of every iterate, starting from the initial point.
    pub objective_trace: Vec<f64>,
    /// Largest `|c_tᵀv| - ε` over frames and directions before the final
    /// projection onto the constraint set (0 when already feasible).
    pub pre_polish_violation: f64,
    /// Which run produced this result; 0 is the caller's initial point.
    pub restart: usize,
    pub beta: f64,
}

impl SolveResult {
    pub fn final_objective(&self) -> f64 {
        *self
            .objective_trace
            .last()
            .expect("trace holds the initial objective")
    }
}

/// `½ Σ_t c_tᵀ L_t c_t + α ‖Φc‖₁`.
pub fn objective(ls: &[Laplacian], c: &StackedVector, alpha: f64) -> f64 {
    let mut lc = StackedVector::zeros(c.n(), c.t_len());
    apply_block(ls, c, &mut lc);
    objective_with(c, &lc, alpha)
}

fn objective_with(c: &StackedVector, lc: &StackedVector, alpha: f64) -> f64 {
    let quad = 0.5 * c.dot(lc);
    let n = c.n();
    let v = c.as_slice();
    let mut tv = 0.0;
    for i in n..v.len() {
        tv += (v[i] - v[i - n]).abs();
    }
    quad + alpha * tv
}

fn apply_block(ls: &[Laplacian], c: &StackedVector, out: &mut StackedVector) {
    for (t, l) in ls.iter().enumerate() {
        let n = c.n();
        l.apply_into(c.frame(t), &mut out.as_mut_slice()[t * n..(t + 1) * n]);
    }
}

/// Largest violation of the slab and sphere constraints, as
/// `(max_t,v |c_tᵀv|, max_t |‖c_t‖² - N|)`.
pub fn constraint_residuals(c: &StackedVector, basis: &OrthogonalityBasis) -> (f64, f64) {
    let n = c.n() as f64;
    let mut slab: f64 = 0.0;
    let mut sphere: f64 = 0.0;
    for (t, ct) in c.frames().enumerate() {
        for v in basis.frame(t) {
            slab = slab.max(dot(ct, v).abs());
        }
        sphere = sphere.max((dot(ct, ct) - n).abs());
    }
    (slab, sphere)
}

/// Runs the iteration from `init`, then `cfg.restarts - 1` more times from
/// seeded Gaussian starts, and keeps the run with the lowest final objective.
pub fn pds_solve(
    ls: &[Laplacian],
    basis: &OrthogonalityBasis,
    cfg: &SolverConfig,
    init: &StackedVector,
) -> Result<SolveResult> {
    cfg.validate()?;
    let t_len = ls.len();
    let n = ls.first().map(Laplacian::n).unwrap_or(0);
    if t_len == 0 || n == 0 {
        return Err(Error::InvalidParameter(
            "need at least one nonempty frame".into(),
        ));
    }
    if let Some(l) = ls.iter().find(|l| l.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: l.n(),
        });
    }
    if basis.t_len() != t_len || basis.n() != n {
        return Err(Error::InvalidParameter(format!(
            "basis covers {} frames of {} nodes, graphs have {t_len} of {n}",
            basis.t_len(),
            basis.n()
        )));
    }
    if init.n() != n || init.t_len() != t_len {
        return Err(Error::DimensionMismatch {
            expected: n * t_len,
            actual: init.as_slice().len(),
        });
    }

    let lambda = max_eigenvalue(ls)?;
    let mut beta = if lambda.converged {
        lambda.value
    } else {
        ls.iter()
            .map(Laplacian::spectral_upper_bound)
            .fold(0.0, f64::max)
    };
    if beta <= 0.0 {
        // zero gradient: every positive constant is a Lipschitz bound
        beta = 1.0;
    }
    let (gamma1, gamma2) = cfg.steps_for(beta);
    if 1.0 / gamma1 - M_NORM_SQ_BOUND * gamma2 < beta / 2.0 * (1.0 - 1e-12) {
        return Err(Error::StepSize {
            gamma1,
            gamma2,
            beta,
        });
    }

    let run = Run {
        ls,
        basis,
        alpha: cfg.alpha,
        eps: cfg.epsilon_for(n),
        gamma1,
        gamma2,
        sigma: cfg.sigma,
        max_iters: cfg.max_iters,
        beta,
    };
    let mut best: Option<SolveResult> = None;
    for r in 0..cfg.restarts {
        let mut noise = ChaCha8Rng::seed_from_u64(cfg.seed);
        noise.set_stream(2 * r as u64 + 1);
        let start = if r == 0 {
            init.clone()
        } else {
            let mut g = ChaCha8Rng::seed_from_u64(cfg.seed);
            g.set_stream(2 * r as u64);
            random_feasible_start(basis, &mut g)?
        };
        let mut res = run.iterate(start, &mut noise)?;
        res.restart = r;
        if best
            .as_ref()
            .is_none_or(|b| res.final_objective() < b.final_objective())
        {
            best = Some(res);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn random_feasible_start(
    basis: &OrthogonalityBasis,
    rng: &mut ChaCha8Rng,
) -> Result<StackedVector> {
    let (n, t_len) = (basis.n(), basis.t_len());
    let values: Vec<f64> = (0..n * t_len).map(|_| StandardNormal.sample(rng)).collect();
    let mut c = StackedVector::from_values(n, t_len, values)?;
    project_feasible(&mut c, basis)?;
    Ok(c)
}

/// Exact projection of every frame onto the orthogonal complement of its
/// basis, rescaled onto the sphere.
pub fn project_feasible(c: &mut StackedVector, basis: &OrthogonalityBasis) -> Result<()> {
    for t in 0..c.t_len() {
        let ortho = gram_schmidt(basis.frame(t));
        let ct = c.frame_mut(t);
        for u in &ortho {
            let p = dot(ct, u);
            ct.iter_mut().zip(u).for_each(|(a, b)| *a -= p * b);
        }
        prox_sphere_in_place(ct)?;
    }
    Ok(())
}

fn gram_schmidt(dirs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(dirs.len());
    for v in dirs {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let p = dot(&w, u);
                w.iter_mut().zip(u).for_each(|(a, b)| *a -= p * b);
            }
        }
        let norm = dot(&w, &w).sqrt();
        if norm > 1e-12 {
            w.iter_mut().for_each(|a| *a /= norm);
            out.push(w);
        }
    }
    out
}

struct Run<'a> {
    ls: &'a [Laplacian],
    basis: &'a OrthogonalityBasis,
    alpha: f64,
    eps: f64,
    gamma1: f64,
    gamma2: f64,
    sigma: f64,
    max_iters: usize,
    beta: f64,
}

impl Run<'_> {
    fn iterate(&self, mut c: StackedVector, noise: &mut ChaCha8Rng) -> Result<SolveResult> {
        let (n, t_len) = (c.n(), c.t_len());
        let mut d1 = StackedVector::zeros(n, t_len);
        let mut d2 = StackedVector::zeros(n, t_len);
        let mut lc = StackedVector::zeros(n, t_len);
        let mut phit_d2 = StackedVector::zeros(n, t_len);
        let mut next = StackedVector::zeros(n, t_len);
        let mut extrap = StackedVector::zeros(n, t_len);
        let mut phi_x = StackedVector::zeros(n, t_len);
        let mut scratch = vec![0.0; n];
        let mut prev_d1 = StackedVector::zeros(n, t_len);
        let mut prev_d2 = StackedVector::zeros(n, t_len);

        apply_block(self.ls, &c, &mut lc);
        let mut trace = vec![objective_with(&c, &lc, self.alpha)];
        let mut converged = false;
        let mut iters = 0;

        while iters < self.max_iters {
            iters += 1;

            // primal: c+ = prox_sphere(c - γ1 (Lc + d1 + Φᵀd2))
            temporal_diff_adjoint_into(&d2, &mut phit_d2);
            for (i, out) in next.as_mut_slice().iter_mut().enumerate() {
                let grad = lc.as_slice()[i] + d1.as_slice()[i] + phit_d2.as_slice()[i];
                *out = c.as_slice()[i] - self.gamma1 * grad;
            }
            for t in 0..t_len {
                let frame = next.frame_mut(t);
                if prox_sphere_in_place(frame).is_err() {
                    if frame.iter().any(|v| !v.is_finite()) {
                        return Err(Error::NonFinite { iteration: iters });
                    }
                    perturb(frame, noise);
                    prox_sphere_in_place(frame)?;
                }
            }

            for ((x, &a), &b) in extrap
                .as_mut_slice()
                .iter_mut()
                .zip(next.as_slice())
                .zip(c.as_slice())
            {
                *x = 2.0 * a - b;
            }

            // d1 <- prox_{γ2 ι*}(d1 + γ2 x) = w - γ2 Proj(w / γ2)
            for t in 0..t_len {
                let (w, x) = (d1.frame_mut(t), extrap.frame(t));
                for ((wi, &xi), s) in w.iter_mut().zip(x).zip(scratch.iter_mut()) {
                    *wi += self.gamma2 * xi;
                    *s = *wi / self.gamma2;
                }
                for v in self.basis.frame(t) {
                    project_slab_in_place(&mut scratch, v, self.eps)?;
                }
                for (wi, &p) in w.iter_mut().zip(&scratch) {
                    *wi -= self.gamma2 * p;
                }
            }

            // d2 <- prox_{γ2 (α‖·‖₁)*}(d2 + γ2 Φx) = clip to [-α, α]
            temporal_diff_into(&extrap, &mut phi_x);
            for (d, &p) in d2.as_mut_slice().iter_mut().zip(phi_x.as_slice()) {
                *d = (*d + self.gamma2 * p).clamp(-self.alpha, self.alpha);
            }

            let rel = rel_change(next.as_slice(), c.as_slice());
            let dual_rel = rel_change(d1.as_slice(), prev_d1.as_slice())
                .max(rel_change(d2.as_slice(), prev_d2.as_slice()));
            prev_d1.as_mut_slice().copy_from_slice(d1.as_slice());
            prev_d2.as_mut_slice().copy_from_slice(d2.as_slice());
            std::mem::swap(&mut c, &mut next);

            apply_block(self.ls, &c, &mut lc);
            let obj = objective_with(&c, &lc, self.alpha);
            if !rel.is_finite() || !obj.is_finite() || !d1.norm().is_finite() {
                return Err(Error::NonFinite { iteration: iters });
            }
            trace.push(obj);
            if rel <= self.sigma && dual_rel <= self.sigma {
                converged = true;
                break;
            }
        }

        let (slab, _) = constraint_residuals(&c, self.basis);
        let pre_polish_violation = (slab - self.eps).max(0.0);
        project_feasible(&mut c, self.basis)?;
        *trace.last_mut().expect("nonempty") = objective(self.ls, &c, self.alpha);

        Ok(SolveResult {
            c,
            d1,
            d2,
            iters,
            converged,
            objective_trace: trace,
            pre_polish_violation,
            restart: 0,
            beta: self.beta,
        })
    }
}

/// `‖a - b‖ / ‖b‖`, with the denominator floored at 1 so zero duals do not
/// divide by zero.
fn rel_change(a: &[f64], b: &[f64]) -> f64 {
    let mut diff = 0.0;
    let mut base = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        diff += (x - y) * (x - y);
        base += y * y;
    }
    diff.sqrt() / base.sqrt().max(1.0)
}

fn perturb(frame: &mut [f64], rng: &mut ChaCha8Rng) {
    let noise: Vec<f64> = frame.iter().map(|_| StandardNormal.sample(rng)).collect();
    let norm = dot(&noise, &noise).sqrt();
    for (v, e) in frame.iter_mut().zip(noise) {
        *v += ZERO_PERTURBATION_NORM * e / norm;
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
