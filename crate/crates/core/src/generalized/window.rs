//! Characters of a windowed deformed hypergroup generated by one class.
//!
//! The translation operator of the generator is truncated to the leading
//! classes whose coefficients the window determines. For polynomial-type
//! hypergroups its eigenvectors are the characters evaluated on those
//! classes, at the zeros of the first omitted polynomial.

use std::collections::VecDeque;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use super::GeneralizedScheme;
use crate::error::{Error, Result};
use crate::harmonic::{measure_of, DualMeasure};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowCharacters {
    pub generator: usize,
    /// Number of leading classes the characters are evaluated on.
    pub classes: usize,
    /// Weights making the truncated operator reversible, `1` at the identity.
    pub weights: Vec<f64>,
    /// `α(generator)` per character, descending.
    pub eigenvalues: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub plancherel: Vec<f64>,
}

pub fn window_characters(g: &GeneralizedScheme, generator: usize) -> Result<WindowCharacters> {
    let d = g.partition().num_classes();
    let e = g.partition().identity();
    if generator >= d {
        return Err(Error::InvalidInput(format!("class index {generator} out of range")));
    }
    let q = (0..d).find(|&j| g.deformed().row(generator, j).is_none()).unwrap_or(d);
    if e >= q {
        return Err(Error::IncompleteWindow(
            "identity class lies outside the determined classes".into(),
        ));
    }
    let t = DMatrix::from_fn(q, q, |j, k| g.deformed().get(generator, j, k).expect("determined"));

    let mut weights = vec![0.0; q];
    weights[e] = 1.0;
    let mut queue = VecDeque::from([e]);
    while let Some(j) = queue.pop_front() {
        for k in 0..q {
            if k == j || t[(j, k)] <= 0.0 || weights[k] > 0.0 {
                continue;
            }
            if t[(k, j)] <= 0.0 {
                return Err(Error::AxiomViolation {
                    axiom: "reversibility".into(),
                    witness: format!("T[{j}][{k}] > 0 but T[{k}][{j}] = 0"),
                });
            }
            weights[k] = weights[j] * t[(j, k)] / t[(k, j)];
            queue.push_back(k);
        }
    }
    if let Some(k) = weights.iter().position(|&w| w == 0.0) {
        return Err(Error::InvalidInput(format!(
            "class {k} is not reached from the identity by the generator"
        )));
    }
    for j in 0..q {
        for k in 0..q {
            let (a, b) = (weights[j] * t[(j, k)], weights[k] * t[(k, j)]);
            let scale = a.abs().max(b.abs());
            if scale > 0.0 && (a - b).abs() > 1e-10 * scale {
                return Err(Error::AxiomViolation {
                    axiom: "reversibility".into(),
                    witness: format!("ω_{j} T[{j}][{k}] = {a} but ω_{k} T[{k}][{j}] = {b}"),
                });
            }
        }
    }

    let root: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
    let s = DMatrix::from_fn(q, q, |j, k| {
        let v = root[j] * t[(j, k)] / root[k];
        let w = root[k] * t[(k, j)] / root[j];
        0.5 * (v + w)
    });
    let eig = SymmetricEigen::new(s);
    let mut order: Vec<usize> = (0..q).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut eigenvalues = Vec::with_capacity(q);
    let mut values = Vec::with_capacity(q);
    let mut plancherel = Vec::with_capacity(q);
    for &c in &order {
        let v: Vec<f64> = (0..q).map(|j| eig.eigenvectors[(j, c)] / root[j]).collect();
        let alpha: Vec<f64> = v.iter().map(|x| x / v[e]).collect();
        plancherel.push(1.0 / alpha.iter().zip(&weights).map(|(a, w)| w * a * a).sum::<f64>());
        eigenvalues.push(eig.eigenvalues[c]);
        values.push(alpha);
    }
    Ok(WindowCharacters {
        generator,
        classes: q,
        weights,
        eigenvalues,
        values,
        plancherel,
    })
}

/// Expansion of `α_a·α_b` in the truncated character basis.
pub fn window_dual_product(wc: &WindowCharacters, a: usize, b: usize) -> DualMeasure {
    let coeffs: Vec<Complex64> = wc
        .values
        .iter()
        .zip(&wc.plancherel)
        .map(|(gamma, p)| {
            let s: f64 = (0..wc.classes)
                .map(|n| wc.weights[n] * wc.values[a][n] * wc.values[b][n] * gamma[n])
                .sum();
            Complex64::new(s * p, 0.0)
        })
        .collect();
    measure_of(a, b, &coeffs)
}
