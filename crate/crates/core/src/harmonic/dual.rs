use num_complex::Complex64;
use serde::Serialize;

use super::CharacterTable;
use crate::error::{Error, Result};
use crate::hypergroup::{FiniteHypergroup, Origin};
use crate::tensor::Tensor3;
use crate::tolerance;

/// Expansion `α·β = Σ_γ c_γ γ` in the character basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualMeasure {
    pub alpha: usize,
    pub beta: usize,
    /// Coefficients as computed.
    pub raw: Vec<f64>,
    /// Coefficients with values in `[−tol, 0)` clamped to zero and the sum
    /// renormalized to one.
    pub weights: Vec<f64>,
    pub raw_sum: f64,
    pub min_raw: f64,
    /// Largest imaginary part discarded from the raw coefficients.
    pub max_imaginary: f64,
    pub nonnegative: bool,
}

/// `c_γ = π(γ) Σ_i ω_i α(i) β(i) conj(γ(i))` for every character `γ`.
pub(crate) fn expansion(tbl: &CharacterTable, alpha: &[Complex64], beta: &[Complex64]) -> Vec<Complex64> {
    let w = tbl.hypergroup().haar();
    tbl.chars()
        .iter()
        .zip(tbl.plancherel())
        .map(|(gamma, p)| {
            let s: Complex64 = (0..w.len()).map(|i| alpha[i] * beta[i] * gamma[i].conj() * w[i]).sum();
            s * *p
        })
        .collect()
}

pub(crate) fn measure_from_expansion(alpha: usize, beta: usize, coeffs: &[Complex64]) -> DualMeasure {
    let raw: Vec<f64> = coeffs.iter().map(|c| c.re).collect();
    let max_imaginary = coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    let raw_sum = raw.iter().sum();
    let min_raw = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let nonnegative = min_raw >= -tolerance::DUAL_NONNEGATIVE;
    let clamped: Vec<f64> = raw.iter().map(|&v| v.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    let weights = clamped.iter().map(|v| v / total).collect();
    DualMeasure {
        alpha,
        beta,
        raw,
        weights,
        raw_sum,
        min_raw,
        max_imaginary,
        nonnegative,
    }
}

/// The dual product `δ_α *̂ δ_β`. A coefficient below the tolerance is an
/// error for scheme-derived hypergroups and is only flagged otherwise.
pub fn dual_convolution(tbl: &CharacterTable, alpha: usize, beta: usize) -> Result<DualMeasure> {
    let coeffs = expansion(tbl, tbl.character(alpha), tbl.character(beta));
    let m = measure_from_expansion(alpha, beta, &coeffs);
    if !m.nonnegative && tbl.origin() == Origin::Scheme {
        let gamma = m.raw.iter().position(|&v| v == m.min_raw).expect("minimum is attained");
        return Err(Error::NegativeCoefficient {
            alpha,
            beta,
            gamma,
            value: m.min_raw,
        });
    }
    Ok(m)
}

/// All `|D̂|²` dual products, row-major in `(α, β)`.
pub fn dual_products(tbl: &CharacterTable) -> Result<Vec<DualMeasure>> {
    let n = tbl.num_chars();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| dual_convolution(tbl, a, b))
        .collect()
}

/// `max_{α≠β} |(δ_α *̂ δ_β̄)({1})|`, which vanishes for finite hypergroups.
pub fn dual_identity_residual(tbl: &CharacterTable) -> f64 {
    let n = tbl.num_chars();
    let one = tbl.positive_char_index();
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let coeffs = expansion(tbl, tbl.character(a), tbl.character(tbl.conjugate_index(b)));
                worst = worst.max(coeffs[one].norm());
            }
        }
    }
    worst
}

/// The hypergroup on the characters with identity `1`, involution complex
/// conjugation and the clamped dual products as convolution.
pub fn dual_hypergroup(tbl: &CharacterTable) -> Result<FiniteHypergroup<f64>> {
    let n = tbl.num_chars();
    let mut conv = Tensor3::filled(n, 0.0);
    for a in 0..n {
        for b in 0..n {
            let m = measure_from_expansion(a, b, &expansion(tbl, tbl.character(a), tbl.character(b)));
            if !m.nonnegative {
                return Err(Error::DualNotPositive {
                    alpha: a,
                    beta: b,
                    value: m.min_raw,
                });
            }
            for (g, w) in m.weights.iter().enumerate() {
                conv.set(a, b, g, *w);
            }
        }
    }
    let classes = (0..n).map(|a| format!("chi{a}")).collect();
    let involution = (0..n).map(|a| tbl.conjugate_index(a)).collect();
    FiniteHypergroup::from_parts(classes, conv, tbl.positive_char_index(), involution, Origin::Dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::harmonic::character_table;
    use crate::hypergroup::{hypergroup_from_scheme, verify_hypergroup_with_tol};

    #[test]
    fn cyclic_dual_is_a_group() {
        let h = hypergroup_from_scheme(&fixtures::cyclic_scheme(4));
        let tbl = character_table(&h).unwrap();
        for m in dual_products(&tbl).unwrap() {
            let ones = m.weights.iter().filter(|&&w| (w - 1.0).abs() < 1e-12).count();
            let zeros = m.weights.iter().filter(|&&w| w.abs() < 1e-12).count();
            assert_eq!((ones, zeros), (1, 3));
        }
    }

    #[test]
    fn pentagon_dual_products_are_probabilities() {
        let h = hypergroup_from_scheme(&fixtures::pentagon());
        let tbl = character_table(&h).unwrap();
        let products = dual_products(&tbl).unwrap();
        assert_eq!(products.len(), 9);
        for m in &products {
            assert!(m.nonnegative);
            assert!((m.raw_sum - 1.0).abs() < 1e-12);
        }
        let dual = dual_hypergroup(&tbl).unwrap();
        assert!(verify_hypergroup_with_tol(&dual, 1e-10).all_passed());
        assert!(dual_identity_residual(&tbl) < 1e-12);
    }

    #[test]
    fn identity_weight_of_conjugate_pair_is_positive() {
        for (name, s) in fixtures::commutative_schemes() {
            let tbl = character_table(&hypergroup_from_scheme(&s)).unwrap();
            let one = tbl.positive_char_index();
            for a in 0..tbl.num_chars() {
                let m = dual_convolution(&tbl, a, tbl.conjugate_index(a)).unwrap();
                assert!(m.raw[one] > 1e-9, "{name}");
            }
        }
    }

    /// δ_1*δ_1 = ¼δ_0 + ¾δ_1: characters 1 and α(1) = −¼, Plancherel
    /// weights 1/5 and 4/5, and α·α = ¼·1 + ¾·α.
    #[test]
    fn two_point_hypergroup() {
        let conv = Tensor3::from_fn(2, |i, j, k| match (i, j, k) {
            (0, j, k) | (j, 0, k) if j == k => 1.0,
            (0, _, _) | (_, 0, _) => 0.0,
            (1, 1, 0) => 0.25,
            _ => 0.75,
        });
        let h =
            FiniteHypergroup::from_parts(vec!["e".into(), "a".into()], conv, 0, vec![0, 1], Origin::Manual).unwrap();
        let tbl = character_table(&h).unwrap();
        assert!((tbl.character(1)[1].re + 0.25).abs() < 1e-14);
        assert!((tbl.plancherel()[0] - 0.2).abs() < 1e-14);
        assert!((tbl.plancherel()[1] - 0.8).abs() < 1e-14);
        let m = dual_convolution(&tbl, 1, 1).unwrap();
        assert!((m.raw[0] - 0.25).abs() < 1e-14 && (m.raw[1] - 0.75).abs() < 1e-14);
    }
}
