use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::{require_commutative, CharacterTable};
use crate::error::Result;
use crate::hypergroup::FiniteHypergroup;
use crate::linalg::{psd_certificate, PsdCertificate};
use crate::scalar::Weight;
use crate::tolerance;

/// `M[i][j] = f(i * j̄) = Σ_k c[i][j̄][k] f(k)`.
pub fn translation_matrix<T: Weight>(h: &FiniteHypergroup<T>, f: &[Complex64]) -> DMatrix<Complex64> {
    let d = h.num_classes();
    let inv = h.involution();
    DMatrix::from_fn(d, d, |i, j| {
        h.conv().row(i, inv[j]).iter().zip(f).map(|(c, v)| v * c.to_f64()).sum()
    })
}

/// Positive definiteness of `f` as positive semidefiniteness of
/// [`translation_matrix`]; the smallest eigenvalue is the certificate.
pub fn is_positive_definite<T: Weight>(h: &FiniteHypergroup<T>, f: &[Complex64]) -> Result<PsdCertificate> {
    require_commutative(h)?;
    psd_certificate(&translation_matrix(h, f), tolerance::PSD)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BochnerCertificate {
    pub positive: bool,
    /// Smallest real part among the Fourier coefficients.
    pub min_coefficient: f64,
    /// Largest imaginary part among the Fourier coefficients.
    pub max_imaginary: f64,
}

/// Positive definiteness via Bochner: every Fourier coefficient of `f` is
/// real and nonnegative up to `tol`.
pub fn bochner_check(tbl: &CharacterTable, f: &[Complex64], tol: f64) -> BochnerCertificate {
    let hat = tbl.fourier(f);
    let min_coefficient = hat.iter().map(|c| c.re).fold(f64::INFINITY, f64::min);
    let max_imaginary = hat.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    BochnerCertificate {
        positive: min_coefficient >= -tol && max_imaginary <= tol,
        min_coefficient,
        max_imaginary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::harmonic::character_table;
    use crate::hypergroup::{convolve_functions, hypergroup_from_scheme, involute};
    use crate::Error;

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn characters_are_positive_definite() {
        for (name, s) in fixtures::commutative_schemes() {
            let h = hypergroup_from_scheme(&s);
            let tbl = character_table(&h).unwrap();
            for alpha in tbl.chars() {
                assert!(is_positive_definite(&h, alpha).unwrap().psd, "{name}");
            }
        }
    }

    #[test]
    fn self_convolutions_are_positive_definite() {
        let h = hypergroup_from_scheme(&fixtures::petersen());
        let f0 = vec![
            Complex64::new(0.3, -1.0),
            Complex64::new(-0.7, 0.2),
            Complex64::new(1.1, 0.4),
        ];
        let f = convolve_functions(&h, &f0, &involute(&h, &f0));
        assert!(is_positive_definite(&h, &f).unwrap().psd);
    }

    /// 3x3 matrix for f = (1, −1, 1) on the pentagon:
    /// rows f(i*j̄) = [[1, −1, 1], [−1, 1, 0], [1, 0, 0]]; its determinant
    /// is −1, so it has a negative eigenvalue.
    #[test]
    fn pentagon_alternating_function() {
        let h = hypergroup_from_scheme(&fixtures::pentagon());
        let f = real(&[1.0, -1.0, 1.0]);
        let m = translation_matrix(&h, &f);
        let want = [[1.0, -1.0, 1.0], [-1.0, 1.0, 0.0], [1.0, 0.0, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((m[(i, j)].re - want[i][j]).abs() < 1e-15);
            }
        }
        let cert = is_positive_definite(&h, &f).unwrap();
        assert!(!cert.psd);
        let tbl = character_table(&h).unwrap();
        assert!(!bochner_check(&tbl, &f, 1e-9).positive);
    }

    #[test]
    fn noncommutative_is_rejected() {
        let h = hypergroup_from_scheme(&fixtures::s3_regular());
        let f = real(&[1.0; 6]);
        assert!(matches!(is_positive_definite(&h, &f), Err(Error::NotCommutative(_))));
    }
}
