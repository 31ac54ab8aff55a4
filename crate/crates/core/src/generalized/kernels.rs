//! Kernels over `X × X` built from functions on `D`, and the positivity
//! tests around them.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::{GeneralizedScheme, PartialTensor, Partition};
use crate::error::{Error, Result};
use crate::harmonic::{expansion_of, measure_of, CharacterTable, DualMeasure};
use crate::linalg::{max_abs, psd_certificate, PsdCertificate};
use crate::tolerance;

/// `max |α(i) conj(α(j)) − Σ_k p̃[i][j̄][k] α(k)|` over determined pairs.
pub(crate) fn multiplicativity_residual_partial(p: &PartialTensor, inv: &[usize], alpha: &[Complex64]) -> f64 {
    let d = p.dim();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            if let Some(row) = p.row(i, inv[j]) {
                let rhs: Complex64 = row.iter().zip(alpha).map(|(c, a)| a * *c).sum();
                worst = worst.max((alpha[i] * alpha[j].conj() - rhs).norm());
            }
        }
    }
    worst
}

/// `S̃_f = Σ_i f(i) ω_i S̃_i`.
pub fn s_tilde_f(g: &GeneralizedScheme, f: &[Complex64]) -> Result<DMatrix<Complex64>> {
    let n = g.partition().num_points();
    let d = g.partition().num_classes();
    if f.len() != d {
        return Err(Error::InvalidInput(format!(
            "function has {} values for {d} classes",
            f.len()
        )));
    }
    let mut out = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..d {
        if f[i] == Complex64::new(0.0, 0.0) {
            continue;
        }
        let w = g.haar()[i]
            .ok_or_else(|| Error::IncompleteWindow(format!("Haar weight of class {}", g.partition().classes()[i])))?;
        out += g.stoch()[i].map(|v| f[i] * (v * w));
    }
    Ok(out)
}

/// `F_f(x, y) = f(i)` for `(x, y) ∈ R_i`.
pub fn kernel_f(p: &Partition, f: &[Complex64]) -> DMatrix<Complex64> {
    let n = p.num_points();
    DMatrix::from_fn(n, n, |x, y| f[p.relation_of(x, y)])
}

/// Whether `(π(x) A(x, y))` is positive semidefinite. The test runs on the
/// congruent matrix `W^{1/2} A W^{−1/2}`, which has the same inertia and
/// stays well scaled when the vertex weights span many orders of magnitude.
pub fn pi_positive_definite(g: &GeneralizedScheme, a: &DMatrix<Complex64>) -> Result<PsdCertificate> {
    if a.nrows() != a.ncols() {
        return Err(Error::NonSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let n = g.partition().num_points();
    if a.nrows() != n {
        return Err(Error::InvalidInput(format!(
            "kernel is {}x{0}, expected {n}x{n}",
            a.nrows()
        )));
    }
    let sqrt_pi: Vec<f64> = g.vertex_weight().iter().map(|v| v.sqrt()).collect();
    let congruent = DMatrix::from_fn(n, n, |x, y| a[(x, y)] * (sqrt_pi[x] / sqrt_pi[y]));
    psd_certificate(&congruent, tolerance::PSD)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnectionCertificate {
    pub connected: bool,
    pub base_positive_definite: bool,
    pub base_min_eigenvalue: f64,
    pub kernel_psd: bool,
    pub kernel_min_eigenvalue: f64,
    /// Number of classes the base test could use.
    pub base_classes: usize,
    /// Set when a window restricted the base test to a subset of classes.
    pub sampled: bool,
    pub multiplicativity_residual: f64,
}

/// Positive connection property of a character `α` of the deformed
/// hypergroup: `α` is positive definite on the base hypergroup and the
/// kernel `F_α` is positive semidefinite.
pub fn positive_connection_check(g: &GeneralizedScheme, alpha: &[Complex64]) -> Result<ConnectionCertificate> {
    let d = g.partition().num_classes();
    if alpha.len() != d {
        return Err(Error::InvalidInput(format!(
            "character has {} values for {d} classes",
            alpha.len()
        )));
    }
    let residual = multiplicativity_residual_partial(g.deformed(), g.partition().involution(), alpha);
    if residual > tolerance::CHARACTER {
        return Err(Error::NotACharacter { residual });
    }

    let inv = g.partition().involution();
    let sub: Vec<usize> = (0..d).filter(|&i| g.pair_determined(i, inv[i])).collect();
    let w = g.base_valencies();
    let mut m = DMatrix::<Complex64>::zeros(sub.len(), sub.len());
    for (a, &i) in sub.iter().enumerate() {
        for (b, &j) in sub.iter().enumerate() {
            let row = g
                .base_numbers()
                .row(i, inv[j])
                .ok_or_else(|| Error::IncompleteWindow(format!("base counts for ({i},{j})")))?;
            let (wi, wj) = (w[i].expect("determined"), w[inv[j]].expect("determined"));
            let mut v = Complex64::new(0.0, 0.0);
            for (k, &p) in row.iter().enumerate() {
                if p > 0.0 {
                    let wk = w[k].ok_or_else(|| Error::IncompleteWindow(format!("valency of class {k}")))?;
                    v += alpha[k] * (wk * p / (wi * wj));
                }
            }
            m[(a, b)] = v;
        }
    }
    let base = psd_certificate(&m, tolerance::PSD)?;
    let kernel = psd_certificate(&kernel_f(g.partition(), alpha), tolerance::PSD)?;
    Ok(ConnectionCertificate {
        connected: base.psd && kernel.psd,
        base_positive_definite: base.psd,
        base_min_eigenvalue: base.min_eigenvalue,
        kernel_psd: kernel.psd,
        kernel_min_eigenvalue: kernel.min_eigenvalue,
        base_classes: sub.len(),
        sampled: g.window().is_some(),
        multiplicativity_residual: residual,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralizedDual {
    pub measure: DualMeasure,
    /// Whether `β` passed the positive connection check.
    pub certified: bool,
    pub connection: ConnectionCertificate,
}

/// Expansion of `α·β` in the characters of the deformed hypergroup. The
/// result is returned even when `β` is not certified; `certified` says
/// whether nonnegativity is guaranteed.
pub fn dual_product_generalized(
    g: &GeneralizedScheme,
    tbl: &CharacterTable,
    alpha: usize,
    beta: usize,
) -> Result<GeneralizedDual> {
    let connection = positive_connection_check(g, tbl.character(beta))?;
    let coeffs = expansion_of(tbl, tbl.character(alpha), tbl.character(beta));
    Ok(GeneralizedDual {
        measure: measure_of(alpha, beta, &coeffs),
        certified: connection.connected,
        connection,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchurCheck {
    pub psd: bool,
    pub min_eigenvalue: f64,
    /// Relative distance between `S̃_α ∘ F_β` and `S̃_{αβ}`.
    pub product_residual: f64,
}

/// The pointwise product `π(x) S̃_α(x, y) F_β(x, y)` is positive
/// semidefinite and equals the weighted `S̃_{αβ}`.
pub fn schur_product_check(g: &GeneralizedScheme, alpha: &[Complex64], beta: &[Complex64]) -> Result<SchurCheck> {
    let s_alpha = s_tilde_f(g, alpha)?;
    let f_beta = kernel_f(g.partition(), beta);
    let product = s_alpha.component_mul(&f_beta);
    let ab: Vec<Complex64> = alpha.iter().zip(beta).map(|(a, b)| a * b).collect();
    let s_ab = s_tilde_f(g, &ab)?;
    let product_residual = max_abs(&(&product - &s_ab)) / max_abs(&s_ab).max(1.0);
    let cert = pi_positive_definite(g, &product)?;
    Ok(SchurCheck {
        psd: cert.psd,
        min_eigenvalue: cert.min_eigenvalue,
        product_residual,
    })
}

fn symmetrized(g: &GeneralizedScheme, i: usize) -> DMatrix<f64> {
    let pi = g.vertex_weight();
    let n = pi.len();
    DMatrix::from_fn(n, n, |x, y| g.stoch()[i][(x, y)] * (pi[x] / pi[y]).sqrt())
}

/// Largest singular value of `W^{1/2} S̃_i W^{−1/2}` for each class.
pub fn operator_norms(g: &GeneralizedScheme) -> Vec<f64> {
    (0..g.partition().num_classes())
        .map(|i| symmetrized(g, i).singular_values().iter().copied().fold(0.0, f64::max))
        .collect()
}

/// `max_i max|W^{1/2} S̃_ī W^{−1/2} − (W^{1/2} S̃_i W^{−1/2})ᵀ|`.
pub fn adjoint_residual(g: &GeneralizedScheme) -> f64 {
    let inv = g.partition().involution();
    (0..inv.len())
        .map(|i| {
            (symmetrized(g, inv[i]) - symmetrized(g, i).transpose())
                .iter()
                .map(|v| v.abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}
