//! Singular values, trace norm and Frobenius norm of small dense matrices.
//!
//! Singular values come from a cyclic Jacobi eigen-solve of the Gram matrix
//! on the smaller side. Each value is then re-evaluated as `‖Aᵀv‖` for the
//! corresponding unit eigenvector `v`, which keeps zero singular values at
//! round-off level instead of the square root of it.

use serde::Serialize;

use crate::binmat::BinaryMatrix;
use crate::error::{Error, Result};

/// Largest smaller-side dimension accepted by [`singular_spectrum`].
pub const SPECTRAL_CAP: usize = 64;

/// Absolute tolerance for deciding equality between trace norms.
pub const TIE_TOL: f64 = 1e-9;

/// Sweeps stop once the off-diagonal norm drops below this fraction of the
/// Gram trace.
pub const JACOBI_REL_TOL: f64 = 1e-13;

pub const JACOBI_MAX_SWEEPS: usize = 64;

/// Descending singular values with the derived norms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub singular_values: Vec<f64>,
    pub trace_norm: f64,
    pub frobenius: f64,
}

impl Spectrum {
    /// Sorts the values descending and derives both norms.
    pub fn from_singular_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let trace_norm = values.iter().sum();
        let frobenius = values.iter().map(|s| s * s).sum::<f64>().sqrt();
        Self { singular_values: values, trace_norm, frobenius }
    }

    /// `σ_i` with 1-based index; zero past the stored values.
    pub fn sigma(&self, i: usize) -> f64 {
        assert!(i >= 1, "singular values are 1-indexed");
        self.singular_values.get(i - 1).copied().unwrap_or(0.0)
    }

    /// Count of singular values above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.singular_values.iter().filter(|&&s| s > tol).count()
    }
}

/// Reusable scratch space for repeated spectra of same-sized matrices.
#[derive(Debug, Default)]
pub struct Workspace {
    gram: Vec<f64>,
    vecs: Vec<f64>,
    col: Vec<f64>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Singular values of `a`, descending.
pub fn singular_spectrum(a: &BinaryMatrix) -> Result<Spectrum> {
    let mut ws = Workspace::new();
    let mut out = Vec::new();
    singular_values_into(a, &mut ws, &mut out)?;
    Ok(Spectrum::from_singular_values(out))
}

/// Trace norm of `a` using caller-provided scratch space.
pub fn trace_norm_with(a: &BinaryMatrix, ws: &mut Workspace, out: &mut Vec<f64>) -> Result<f64> {
    singular_values_into(a, ws, out)?;
    Ok(out.iter().sum())
}

/// Writes the (unsorted) singular values of `a` into `out`.
pub fn singular_values_into(a: &BinaryMatrix, ws: &mut Workspace, out: &mut Vec<f64>) -> Result<()> {
    let dim = a.rows().min(a.cols());
    if dim > SPECTRAL_CAP {
        return Err(Error::SpectralCapExceeded { dim, cap: SPECTRAL_CAP });
    }
    if a.rows() > a.cols() {
        return singular_values_wide(&a.transpose(), ws, out);
    }
    singular_values_wide(a, ws, out)
}

/// Requires `rows <= cols`; works on the `rows × rows` Gram matrix `A·Aᵀ`.
fn singular_values_wide(a: &BinaryMatrix, ws: &mut Workspace, out: &mut Vec<f64>) -> Result<()> {
    let k = a.rows();
    ws.gram.clear();
    ws.gram.resize(k * k, 0.0);
    for i in 0..k {
        for j in i..k {
            let g = a.row_overlap(i, j) as f64;
            ws.gram[i * k + j] = g;
            ws.gram[j * k + i] = g;
        }
    }
    ws.vecs.clear();
    ws.vecs.resize(k * k, 0.0);
    symmetric_eigen(&mut ws.gram, k, &mut ws.vecs)?;

    out.clear();
    let col = &mut ws.col;
    col.resize(a.cols(), 0.0);
    for e in 0..k {
        // (Aᵀ v)_j = Σ_i a_ij v_i
        col.iter_mut().for_each(|c| *c = 0.0);
        for i in 0..k {
            let vi = ws.vecs[i * k + e];
            if vi == 0.0 {
                continue;
            }
            for (j, c) in col.iter_mut().enumerate() {
                if a.get(i, j) {
                    *c += vi;
                }
            }
        }
        out.push(col.iter().map(|c| c * c).sum::<f64>().sqrt());
    }
    Ok(())
}

/// Cyclic Jacobi eigen-decomposition of the symmetric `k × k` row-major
/// matrix `g`. On return the diagonal of `g` holds the eigenvalues and
/// column `e` of `vecs` the matching unit eigenvector.
pub fn symmetric_eigen(g: &mut [f64], k: usize, vecs: &mut [f64]) -> Result<()> {
    assert_eq!(g.len(), k * k);
    assert_eq!(vecs.len(), k * k);
    vecs.iter_mut().for_each(|v| *v = 0.0);
    for i in 0..k {
        vecs[i * k + i] = 1.0;
    }
    let trace: f64 = (0..k).map(|i| g[i * k + i].abs()).sum();
    let threshold = JACOBI_REL_TOL * trace;

    let off_norm = |g: &[f64]| {
        let mut s = 0.0;
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    s += g[i * k + j] * g[i * k + j];
                }
            }
        }
        s.sqrt()
    };

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(g) <= threshold {
            return Ok(());
        }
        for p in 0..k {
            for q in p + 1..k {
                let gpq = g[p * k + q];
                if gpq == 0.0 {
                    continue;
                }
                let theta = (g[q * k + q] - g[p * k + p]) / (2.0 * gpq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..k {
                    let grp = g[r * k + p];
                    let grq = g[r * k + q];
                    g[r * k + p] = c * grp - s * grq;
                    g[r * k + q] = s * grp + c * grq;
                }
                for r in 0..k {
                    let gpr = g[p * k + r];
                    let gqr = g[q * k + r];
                    g[p * k + r] = c * gpr - s * gqr;
                    g[q * k + r] = s * gpr + c * gqr;
                }
                g[p * k + q] = 0.0;
                g[q * k + p] = 0.0;
                for r in 0..k {
                    let vrp = vecs[r * k + p];
                    let vrq = vecs[r * k + q];
                    vecs[r * k + p] = c * vrp - s * vrq;
                    vecs[r * k + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    let off = off_norm(g);
    if off <= threshold {
        Ok(())
    } else {
        Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS, off })
    }
}

/// Lower bound `√(|A|₂² − a²) + a` on the trace norm of any matrix whose
/// largest singular value is at most `a_cap`.
pub fn pro1_lower_bound(frobenius_sq: f64, a_cap: f64) -> Result<f64> {
    let nonneg = |x: f64| x >= 0.0;
    if !nonneg(frobenius_sq) || !nonneg(a_cap) || a_cap * a_cap > frobenius_sq * (1.0 + 1e-12) {
        return Err(Error::OutOfRange(format!("cap {a_cap} must lie in [0, {}]", frobenius_sq.max(0.0).sqrt())));
    }
    Ok((frobenius_sq - a_cap * a_cap).max(0.0).sqrt() + a_cap)
}

/// Checks `σ_i(a) >= σ_i(b)` for every admissible `i`, where `b` must be the
/// submatrix of `a` on the given rows and columns.
pub fn interlacing_check(a: &BinaryMatrix, b: &BinaryMatrix, rows: &[usize], cols: &[usize]) -> Result<bool> {
    if a.submatrix(rows, cols)? != *b {
        return Err(Error::NotASubmatrix("selected entries differ from b".into()));
    }
    let sa = singular_spectrum(a)?;
    let sb = singular_spectrum(b)?;
    Ok((1..=sb.singular_values.len()).all(|i| sa.sigma(i) >= sb.sigma(i) - TIE_TOL))
}
