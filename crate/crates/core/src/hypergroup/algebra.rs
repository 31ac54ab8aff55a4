//! Measures and functions on `D`: convolution, translation, involution and
//! the modular function.

use num_complex::Complex64;

use super::FiniteHypergroup;
use crate::error::{Error, Result};
use crate::scalar::Weight;

/// Bilinear extension of the convolution of point measures.
pub fn convolve_measures<T: Weight>(h: &FiniteHypergroup<T>, mu: &[T], nu: &[T]) -> Vec<T> {
    let d = h.num_classes();
    assert_eq!(mu.len(), d);
    assert_eq!(nu.len(), d);
    let mut out = vec![T::zero(); d];
    for i in 0..d {
        if mu[i].is_negligible(0.0) {
            continue;
        }
        for j in 0..d {
            if nu[j].is_negligible(0.0) {
                continue;
            }
            let w = mu[i].clone() * nu[j].clone();
            for (k, c) in h.conv().row(i, j).iter().enumerate() {
                out[k] = out[k].clone() + w.clone() * c.clone();
            }
        }
    }
    out
}

/// Nonnegative with total mass one.
pub fn is_probability<T: Weight>(mu: &[T], tol: f64) -> bool {
    let sum = mu.iter().fold(T::zero(), |acc, v| acc + v.clone());
    mu.iter().all(|v| !v.is_negative(tol)) && sum.approx_eq(&T::one(), tol)
}

/// `f(i * j) = Σ_k c[i][j][k] f(k)`.
pub fn translate<T: Weight>(h: &FiniteHypergroup<T>, f: &[Complex64], i: usize, j: usize) -> Complex64 {
    h.conv().row(i, j).iter().zip(f).map(|(c, v)| v * c.to_f64()).sum()
}

/// `(f * g)(i) = Σ_j f(i * j̄) g(j) ω_j`.
pub fn convolve_functions<T: Weight>(h: &FiniteHypergroup<T>, f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let d = h.num_classes();
    let inv = h.involution();
    let w = h.haar_f64();
    (0..d)
        .map(|i| (0..d).map(|j| translate(h, f, i, inv[j]) * g[j] * w[j]).sum())
        .collect()
}

/// `f*(i) = conj(f(ī))`.
pub fn involute<T: Weight>(h: &FiniteHypergroup<T>, f: &[Complex64]) -> Vec<Complex64> {
    h.involution().iter().map(|&t| f[t].conj()).collect()
}

/// `Δ(i) = ω_i / ω_ī`, checked to be strongly multiplicative:
/// `c[i][j][k] > 0 ⟹ Δ(k) = Δ(i) Δ(j)`.
pub fn modular_function<T: Weight>(h: &FiniteHypergroup<T>, tol: f64) -> Result<Vec<T>> {
    let d = h.num_classes();
    let w = h.haar();
    let delta: Vec<T> = (0..d).map(|i| w[i].clone() / w[h.involution()[i]].clone()).collect();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if h.c(i, j, k).is_positive(tol) && !delta[k].approx_eq(&(delta[i].clone() * delta[j].clone()), tol) {
                    return Err(Error::AxiomViolation {
                        axiom: "modular multiplicativity".into(),
                        witness: format!("c[{i}][{j}][{k}] > 0 but Δ({k}) != Δ({i})Δ({j})"),
                    });
                }
            }
        }
    }
    Ok(delta)
}
