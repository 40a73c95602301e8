//! Adjacency tensors kept implicit behind edge lists, spectral radius by
//! power iteration with Collatz-Wielandt bounds, eigenpair residuals, and the
//! covering lift maps.
//!
//! Tensor entries are never materialized: an edge e contributes
//! sgn(e)/(m-1)! at each index permutation, and the (m-1)! symmetry factor
//! cancels against the entry, so (A x^(m-1))_v = sum over edges at v of
//! sgn(e) * prod of x_u over the other vertices of e.

use num_complex::Complex64;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, SignedHypergraph};
use crate::voltage::{derive, VoltageAssignment};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Absolute tolerance for the lift-identity checks, applied to inputs scaled
/// to unit max-norm.
pub const LIFT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("hypothesis violated: the hypergraph is connected")]
    Disconnected,
    #[error("vector has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("eigenpair residual of the zero vector is undefined")]
    ZeroVector,
    #[error("power iteration did not converge in {iterations} iterations (gap {gap:.3e})")]
    NoConvergence { iterations: usize, gap: f64 },
}

/// A view of the adjacency tensor of a plain or signed hypergraph.
#[derive(Debug, Clone, Copy)]
pub struct TensorView<'a> {
    hypergraph: &'a Hypergraph,
    signs: Option<&'a [i8]>,
}

impl<'a> TensorView<'a> {
    pub fn unsigned(h: &'a Hypergraph) -> Self {
        TensorView { hypergraph: h, signs: None }
    }

    pub fn signed(sh: &'a SignedHypergraph) -> Self {
        TensorView {
            hypergraph: sh.base(),
            signs: Some(sh.signs()),
        }
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        self.hypergraph
    }

    pub fn edge_sign(&self, e: usize) -> f64 {
        self.signs.map_or(1.0, |s| f64::from(s[e]))
    }
}

/// (A x^(m-1))_v over the complex numbers.
pub fn tensor_apply(
    view: &TensorView,
    x: &[Complex64],
) -> Result<Vec<Complex64>, SpectralError> {
    let h = view.hypergraph();
    if x.len() != h.vertex_count() {
        return Err(SpectralError::DimensionMismatch {
            expected: h.vertex_count(),
            got: x.len(),
        });
    }
    let mut out = vec![Complex64::ZERO; h.vertex_count()];
    for (e, edge) in h.edges().iter().enumerate() {
        let sign = view.edge_sign(e);
        for &v in edge {
            let mut prod = Complex64::new(sign, 0.0);
            for &u in edge {
                if u != v {
                    prod *= x[u];
                }
            }
            out[v] += prod;
        }
    }
    Ok(out)
}

fn apply_positive(h: &Hypergraph, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; h.vertex_count()];
    for edge in h.edges() {
        for &v in edge {
            let mut prod = 1.0;
            for &u in edge {
                if u != v {
                    prod *= x[u];
                }
            }
            out[v] += prod;
        }
    }
    out
}

/// Result of the power iteration, including the Collatz-Wielandt bound trace.
#[derive(Debug, Clone)]
pub struct PowerIteration {
    pub rho: f64,
    pub iterations: usize,
    pub gap: f64,
    /// The final normalized iterate; converges to the Perron vector.
    pub vector: Vec<f64>,
    /// (lower, upper) bound per iteration.
    pub trace: Vec<(f64, f64)>,
}

/// Spectral radius of a connected hypergraph by power iteration from the
/// all-ones vector: x <- normalize((A x^(m-1))^[1/(m-1)]) with max-norm
/// normalization, stopping when the Collatz-Wielandt gap drops below `tol`.
pub fn spectral_radius(
    h: &Hypergraph,
    tol: f64,
    max_iter: usize,
) -> Result<PowerIteration, SpectralError> {
    assert!(tol > 0.0, "tolerance must be positive");
    if !h.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let n = h.vertex_count();
    let exponent = 1.0 / (h.uniformity() as f64 - 1.0);
    let mut x = vec![1.0; n];
    let mut trace = Vec::new();
    let mut gap = f64::INFINITY;
    for it in 1..=max_iter {
        let y = apply_positive(h, &x);
        let mut low = f64::INFINITY;
        let mut high = f64::NEG_INFINITY;
        for v in 0..n {
            let ratio = y[v] / x[v].powi(h.uniformity() as i32 - 1);
            low = low.min(ratio);
            high = high.max(ratio);
        }
        trace.push((low, high));
        gap = high - low;
        if gap < tol {
            return Ok(PowerIteration {
                rho: 0.5 * (low + high),
                iterations: it,
                gap,
                vector: x,
                trace,
            });
        }
        let mut next: Vec<f64> = y.iter().map(|&v| v.powf(exponent)).collect();
        let max = next.iter().cloned().fold(0.0, f64::max);
        if max > 0.0 {
            for v in next.iter_mut() {
                *v /= max;
            }
        }
        x = next;
    }
    Err(SpectralError::NoConvergence { iterations: max_iter, gap })
}

/// Max-norm defect of a candidate eigenpair: max_v |(A x^(m-1))_v - lambda x_v^(m-1)|.
pub fn eigen_residual(
    view: &TensorView,
    lambda: Complex64,
    x: &[Complex64],
) -> Result<f64, SpectralError> {
    if x.iter().all(|c| c.norm() == 0.0) {
        return Err(SpectralError::ZeroVector);
    }
    let m = view.hypergraph().uniformity();
    let applied = tensor_apply(view, x)?;
    let defect = applied
        .iter()
        .zip(x)
        .map(|(a, xi)| (a - lambda * xi.powu(m as u32 - 1)).norm())
        .fold(0.0, f64::max);
    Ok(defect)
}

/// The layer-constant lift: tau(x)(v, i) = x(v) for every layer i.
pub fn lift_tau(x: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(x.len() * k);
    for &value in x {
        for _ in 0..k {
            out.push(value);
        }
    }
    out
}

/// The signed two-fold lift: y(v, 1) = x(v), y(v, 2) = -x(v).
pub fn signed_lift(x: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(x.len() * 2);
    for &value in x {
        out.push(value);
        out.push(-value);
    }
    out
}

/// Outcome of checking the covering lift identities on one test vector.
#[derive(Debug, Clone)]
pub struct LiftCheck {
    /// max over (v, i) of |(A(cover) tau(x)^(m-1))_(v,i) - (A(H) x^(m-1))_v|
    pub unsigned_defect: f64,
    /// for k = 2 and even m: defect of the signed-lift identity against the
    /// signed hypergraph, None otherwise
    pub signed_defect: Option<f64>,
    pub max_defect: f64,
    pub ok: bool,
}

/// Checks, for an arbitrary complex vector (scaled to unit max-norm), that
/// applying the covering tensor to the lifted vector reproduces the base
/// application layer by layer; for two-fold covers of even uniformity the
/// signed variant is checked as well.
pub fn verify_lift_identities(
    h: &Hypergraph,
    phi: &VoltageAssignment,
    x: &[Complex64],
) -> Result<LiftCheck, SpectralError> {
    if x.len() != h.vertex_count() {
        return Err(SpectralError::DimensionMismatch {
            expected: h.vertex_count(),
            got: x.len(),
        });
    }
    let max = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let x: Vec<Complex64> = if max > 0.0 {
        x.iter().map(|&c| c / max).collect()
    } else {
        x.to_vec()
    };

    let k = phi.fold();
    let cover = derive(h, phi);
    let cover_view = TensorView::unsigned(cover.hypergraph());
    let base_applied = tensor_apply(&TensorView::unsigned(h), &x)?;

    let tau = lift_tau(&x, k);
    let cover_applied = tensor_apply(&cover_view, &tau)?;
    let mut unsigned_defect = 0.0f64;
    for v in 0..h.vertex_count() {
        for i in 0..k {
            let defect = (cover_applied[v * k + i] - base_applied[v]).norm();
            unsigned_defect = unsigned_defect.max(defect);
        }
    }

    let signed_defect = if k == 2 && h.uniformity() % 2 == 0 {
        let gamma = crate::invariants::signed_hypergraph(h, phi);
        let gamma_applied = tensor_apply(&TensorView::signed(&gamma), &x)?;
        let y = signed_lift(&x);
        let cover_y = tensor_apply(&cover_view, &y)?;
        let mut defect = 0.0f64;
        for v in 0..h.vertex_count() {
            defect = defect.max((cover_y[2 * v] - gamma_applied[v]).norm());
            defect = defect.max((cover_y[2 * v + 1] + gamma_applied[v]).norm());
        }
        Some(defect)
    } else {
        None
    };

    let max_defect = unsigned_defect.max(signed_defect.unwrap_or(0.0));
    Ok(LiftCheck {
        unsigned_defect,
        signed_defect,
        max_defect,
        ok: max_defect <= LIFT_TOLERANCE,
    })
}
