//! Characters, Plancherel weights, Fourier transform, positive definiteness
//! and dual convolution for finite commutative hypergroups.

mod dual;
mod positivity;

pub use dual::{dual_convolution, dual_hypergroup, dual_identity_residual, dual_products, DualMeasure};
pub(crate) use dual::{expansion as expansion_of, measure_from_expansion as measure_of};
pub use positivity::{bochner_check, is_positive_definite, translation_matrix, BochnerCertificate};

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergroup::{FiniteHypergroup, Origin};
use crate::linalg::joint_eigenbasis;
use crate::scalar::Weight;
use crate::{tolerance, DEFAULT_SEED};

#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    #[serde(skip)]
    hypergroup: FiniteHypergroup<f64>,
    chars: Vec<Vec<Complex64>>,
    plancherel: Vec<f64>,
    positive: usize,
    conjugate: Vec<usize>,
    residual: f64,
}

impl CharacterTable {
    pub fn hypergroup(&self) -> &FiniteHypergroup<f64> {
        &self.hypergroup
    }

    pub fn origin(&self) -> Origin {
        self.hypergroup.origin()
    }

    pub fn num_chars(&self) -> usize {
        self.chars.len()
    }

    pub fn chars(&self) -> &[Vec<Complex64>] {
        &self.chars
    }

    pub fn character(&self, a: usize) -> &[Complex64] {
        &self.chars[a]
    }

    pub fn plancherel(&self) -> &[f64] {
        &self.plancherel
    }

    /// Index of the unique strictly positive character (the constant 1).
    pub fn positive_char_index(&self) -> usize {
        self.positive
    }

    /// Index of the complex conjugate of character `a`.
    pub fn conjugate_index(&self, a: usize) -> usize {
        self.conjugate[a]
    }

    /// For finite hypergroups the Plancherel measure charges every character.
    pub fn in_plancherel_support(&self, a: usize) -> bool {
        a < self.chars.len()
    }

    /// Largest multiplicativity residual over all characters.
    pub fn multiplicativity_residual(&self) -> f64 {
        self.residual
    }

    pub fn is_real(&self) -> bool {
        self.chars.iter().flatten().all(|v| v.im.abs() <= tolerance::CHARACTER)
    }

    /// `f̂(α) = Σ_i ω_i f(i) conj(α(i))`.
    pub fn fourier(&self, f: &[Complex64]) -> Vec<Complex64> {
        let w = self.hypergroup.haar();
        self.chars
            .iter()
            .map(|alpha| alpha.iter().zip(f).zip(w).map(|((a, v), w)| v * a.conj() * *w).sum())
            .collect()
    }

    /// `f(i) = Σ_α π(α) f̂(α) α(i)`.
    pub fn inverse_fourier(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let d = self.hypergroup.num_classes();
        (0..d)
            .map(|i| {
                self.chars
                    .iter()
                    .zip(coeffs)
                    .zip(&self.plancherel)
                    .map(|((alpha, c), p)| c * alpha[i] * *p)
                    .sum()
            })
            .collect()
    }
}

/// `max_{i,j} |α(i) conj(α(j)) − Σ_k c[i][j̄][k] α(k)|`.
pub fn multiplicativity_residual(h: &FiniteHypergroup<f64>, alpha: &[Complex64]) -> f64 {
    let d = h.num_classes();
    let inv = h.involution();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let lhs = alpha[i] * alpha[j].conj();
            let rhs: Complex64 = h.conv().row(i, inv[j]).iter().zip(alpha).map(|(c, a)| a * *c).sum();
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

pub(crate) fn require_commutative<T: Weight>(h: &FiniteHypergroup<T>) -> Result<()> {
    match h.commutativity_witness(tolerance::HYPERGROUP) {
        None => Ok(()),
        Some((i, j, k)) => Err(Error::NotCommutative(format!(
            "c[{a}][{b}][{c}] != c[{b}][{a}][{c}]",
            a = h.classes()[i],
            b = h.classes()[j],
            c = h.classes()[k]
        ))),
    }
}

/// The characters of a commutative hypergroup as the joint eigenvectors of
/// the translation operators `(T_i f)(j) = Σ_k c[i][j][k] f(k)`.
///
/// The operators are symmetrized with the Haar weights so that they become
/// normal; their Hermitian and skew parts are jointly diagonalized.
pub fn character_table<T: Weight>(h: &FiniteHypergroup<T>) -> Result<CharacterTable> {
    character_table_with_seed(h, DEFAULT_SEED)
}

/// [`character_table`] with an explicit seed for the random mixing of the
/// generators. The result does not depend on the seed beyond rounding.
pub fn character_table_with_seed<T: Weight>(h: &FiniteHypergroup<T>, seed: u64) -> Result<CharacterTable> {
    require_commutative(h)?;
    let hf = h.to_float();
    let d = hf.num_classes();
    let e = hf.identity();
    let inv = hf.involution().to_vec();
    let w = hf.haar().to_vec();
    let sqrt_w: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();

    let k: Vec<DMatrix<Complex64>> = (0..d)
        .map(|i| DMatrix::from_fn(d, d, |j, l| Complex64::new(sqrt_w[j] * hf.c(i, j, l) / sqrt_w[l], 0.0)))
        .collect();
    let mut generators = Vec::new();
    for i in 0..d {
        if inv[i] == i {
            generators.push(k[i].clone());
        } else if i < inv[i] {
            generators.push(&k[i] + &k[inv[i]]);
            generators.push((&k[i] - &k[inv[i]]).map(|v| v * Complex64::i()));
        }
    }
    let basis = joint_eigenbasis(&generators, seed)?;

    let mut chars = Vec::with_capacity(d);
    let mut residual = 0.0f64;
    for col in basis.column_iter() {
        let v: Vec<Complex64> = (0..d).map(|j| col[j] / sqrt_w[j]).collect();
        let scale = v[e];
        let mut alpha: Vec<Complex64> = v.iter().map(|x| x / scale).collect();
        alpha[e] = Complex64::new(1.0, 0.0);
        let r = multiplicativity_residual(&hf, &alpha);
        if r > tolerance::CHARACTER {
            return Err(Error::NotACharacter { residual: r });
        }
        residual = residual.max(r);
        chars.push(alpha);
    }
    chars.sort_by(|a, b| character_order(a, b));

    let plancherel = chars
        .iter()
        .map(|alpha| 1.0 / alpha.iter().zip(&w).map(|(a, w)| w * a.norm_sqr()).sum::<f64>())
        .collect();

    let tol = tolerance::CHARACTER;
    let positive: Vec<usize> = (0..d)
        .filter(|&a| chars[a].iter().all(|v| v.re > tol && v.im.abs() <= tol))
        .collect();
    let positive = match positive.as_slice() {
        [p] => *p,
        other => {
            return Err(Error::AxiomViolation {
                axiom: "unique positive character".into(),
                witness: format!("{} strictly positive characters", other.len()),
            })
        }
    };

    let conjugate = (0..d)
        .map(|a| {
            (0..d)
                .find(|&b| {
                    chars[a]
                        .iter()
                        .zip(&chars[b])
                        .all(|(x, y)| (x.conj() - y).norm() <= 1e3 * tol)
                })
                .ok_or_else(|| Error::AxiomViolation {
                    axiom: "conjugate character".into(),
                    witness: format!("conjugate of character {a} not found"),
                })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CharacterTable {
        hypergroup: hf,
        chars,
        plancherel,
        positive,
        conjugate,
        residual,
    })
}

fn round_key(x: f64) -> i64 {
    (x / tolerance::ORDERING_ROUND).round() as i64
}

/// Descending by real parts class by class, then by imaginary parts, on
/// values rounded to the ordering grid.
fn character_order(a: &[Complex64], b: &[Complex64]) -> Ordering {
    let re = |v: &[Complex64]| v.iter().map(|z| round_key(z.re)).collect::<Vec<_>>();
    let im = |v: &[Complex64]| v.iter().map(|z| round_key(z.im)).collect::<Vec<_>>();
    re(b).cmp(&re(a)).then_with(|| im(b).cmp(&im(a)))
}
