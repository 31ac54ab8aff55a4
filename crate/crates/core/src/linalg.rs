//! Dense Hermitian eigen-decompositions, PSD tests and joint
//! diagonalization of commuting Hermitian matrices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerance;

/// Eigenvalues in ascending order with matching eigenvector columns.
pub fn hermitian_eigen(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let mut values: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// `(M + M^H) / 2`.
pub fn hermitian_part(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()).map(|v| v * 0.5)
}

/// Largest entry of `|M − M^H|`.
pub fn hermitian_residual(m: &DMatrix<Complex64>) -> f64 {
    (m - m.adjoint()).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Result of a positive semidefiniteness test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsdCertificate {
    pub psd: bool,
    pub min_eigenvalue: f64,
    pub hermitian_residual: f64,
    /// Largest entry magnitude, the scale the tolerance was applied to.
    pub scale: f64,
}

/// Tests `M ⪰ 0`: `M` must be Hermitian and its smallest eigenvalue at least
/// `−tol·max(1, max|M|)`.
pub fn psd_certificate(m: &DMatrix<Complex64>, tol: f64) -> Result<PsdCertificate> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let scale = max_abs(m).max(1.0);
    let residual = hermitian_residual(m);
    let min_eigenvalue = if m.nrows() == 0 { 0.0 } else { hermitian_eigen(m).0[0] };
    Ok(PsdCertificate {
        psd: residual <= tol * scale && min_eigenvalue >= -tol * scale,
        min_eigenvalue,
        hermitian_residual: residual,
        scale,
    })
}

pub fn real_psd_certificate(m: &DMatrix<f64>, tol: f64) -> Result<PsdCertificate> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let scale = m.amax().max(1.0);
    let residual = (m - m.transpose()).amax();
    let min_eigenvalue = symmetric_eigenvalues(m).first().copied().unwrap_or(0.0);
    Ok(PsdCertificate {
        psd: residual <= tol * scale && min_eigenvalue >= -tol * scale,
        min_eigenvalue,
        hermitian_residual: residual,
        scale,
    })
}

/// Orthonormal joint eigenvectors (columns) of pairwise commuting Hermitian
/// matrices whose joint eigenspaces are one-dimensional.
///
/// A seeded strictly positive combination is diagonalized first; clusters of
/// eigenvalues closer than [`tolerance::CLUSTER_GAP`] are split by
/// diagonalizing each generator restricted to the cluster in turn.
pub fn joint_eigenbasis(generators: &[DMatrix<Complex64>], seed: u64) -> Result<DMatrix<Complex64>> {
    let n = generators.first().map(|g| g.nrows()).unwrap_or(0);
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mix = DMatrix::<Complex64>::zeros(n, n);
    for g in generators {
        let w: f64 = rng.random_range(0.5..1.5);
        mix += g.map(|v| v * w);
    }
    let basis = DMatrix::<Complex64>::identity(n, n);
    let mut columns = Vec::with_capacity(n);
    split(&mix, &basis, generators, 0, &mut columns)?;
    Ok(DMatrix::from_columns(&columns))
}

/// Diagonalizes `Q^H A Q` and recurses into degenerate clusters using the
/// generators from `next` on.
fn split(
    a: &DMatrix<Complex64>,
    q: &DMatrix<Complex64>,
    generators: &[DMatrix<Complex64>],
    next: usize,
    out: &mut Vec<DVector<Complex64>>,
) -> Result<()> {
    let restricted = q.adjoint() * a * q;
    let (values, vectors) = hermitian_eigen(&restricted);
    let basis = q * vectors;
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end] - values[end - 1] < tolerance::CLUSTER_GAP {
            end += 1;
        }
        let cluster = basis.columns(start, end - start).into_owned();
        if end - start == 1 {
            out.push(cluster.column(0).into_owned());
        } else if next < generators.len() {
            split(&generators[next], &cluster, generators, next + 1, out)?;
        } else {
            let residual = generators
                .iter()
                .map(|g| {
                    let r = cluster.adjoint() * g * &cluster;
                    let mean = r.trace() / Complex64::new(r.nrows() as f64, 0.0);
                    let centered = r - DMatrix::<Complex64>::identity(end - start, end - start) * mean;
                    max_abs(&centered)
                })
                .fold(0.0, f64::max);
            return Err(Error::DegenerateSplitFailure {
                dim: end - start,
                residual,
            });
        }
        start = end;
    }
    Ok(())
}
