use nalgebra::DMatrix;
use num_complex::Complex64;

use super::*;
use crate::fixtures;
use crate::harmonic::{character_table, dual_convolution};
use crate::hypergroup::{convolve_functions, hypergroup_from_scheme, involute};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn classical_embedding_reproduces_the_scheme_hypergroup() {
    for (name, s) in fixtures::all_schemes() {
        let g = GeneralizedScheme::classical(&s);
        let h = hypergroup_from_generalized(&g).unwrap();
        let want = hypergroup_from_scheme(&s).to_float();
        let d = s.num_classes();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    assert!((h.c(i, j, k) - want.c(i, j, k)).abs() < 1e-12, "{name}");
                }
            }
            assert!((h.haar()[i] - want.haar()[i]).abs() < 1e-9, "{name}");
        }
        assert_eq!(h.haar()[s.identity_class()], 1.0);
        assert_eq!(g.is_commutative(), s.is_commutative(), "{name}");
    }
}

#[test]
fn deformed_identity_row() {
    let g = GeneralizedScheme::classical(&fixtures::petersen());
    for j in 0..3 {
        for k in 0..3 {
            assert_eq!(g.deformed().get(0, j, k), Some(if j == k { 1.0 } else { 0.0 }));
        }
    }
}

fn pentagon_parts() -> (Scheme, Vec<DMatrix<f64>>) {
    let s = fixtures::pentagon();
    let g = GeneralizedScheme::classical(&s);
    (s, g.stoch().to_vec())
}

#[test]
fn support_and_stochastic_errors() {
    let (s, mut stoch) = pentagon_parts();
    stoch[1][(0, 1)] = 0.0;
    stoch[1][(0, 4)] = 1.0;
    let err = GeneralizedScheme::build(&s, stoch, vec![1.0; 5], 0).unwrap_err();
    assert!(matches!(err, Error::SupportMismatch { .. }));

    let (s, mut stoch) = pentagon_parts();
    stoch[1][(0, 1)] = 0.6;
    let err = GeneralizedScheme::build(&s, stoch, vec![1.0; 5], 0).unwrap_err();
    assert!(matches!(err, Error::NotStochastic { .. }));
}

#[test]
fn detailed_balance_error_names_the_pair() {
    let (s, mut stoch) = pentagon_parts();
    stoch[1][(0, 1)] = 0.7;
    stoch[1][(0, 4)] = 0.3;
    let err = GeneralizedScheme::build(&s, stoch, vec![1.0; 5], 0).unwrap_err();
    match err {
        Error::DetailedBalanceViolation { class, residual, .. } => {
            assert_eq!(class, "1");
            assert!(residual > 1e-10);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn kernels_of_the_classical_pentagon() {
    let s = fixtures::pentagon();
    let g = GeneralizedScheme::classical(&s);
    let delta = vec![c(1.0), c(0.0), c(0.0)];
    let id = s_tilde_f(&g, &delta).unwrap();
    assert!((id - DMatrix::<Complex64>::identity(5, 5))
        .iter()
        .all(|v| v.norm() < 1e-15));

    let f = vec![c(0.3), c(-1.2), c(2.5)];
    let sf = s_tilde_f(&g, &f).unwrap();
    let ff = kernel_f(g.partition(), &f);
    for x in 0..5 {
        for y in 0..5 {
            assert!((sf[(x, y)] - f[s.relation_of(x, y)]).norm() < 1e-14);
            assert_eq!(ff[(x, y)], f[s.relation_of(x, y)]);
        }
    }
}

#[test]
fn pi_positive_definiteness() {
    let s = fixtures::petersen();
    let g = GeneralizedScheme::classical(&s);
    assert!(pi_positive_definite(&g, &DMatrix::identity(10, 10)).unwrap().psd);
    assert!(matches!(
        pi_positive_definite(&g, &DMatrix::zeros(10, 9)),
        Err(Error::NonSquare { rows: 10, cols: 9 })
    ));

    let h = hypergroup_from_generalized(&g).unwrap();
    let f0 = vec![Complex64::new(0.4, 0.1), Complex64::new(-1.0, 0.3), c(0.7)];
    let f = convolve_functions(&h, &f0, &involute(&h, &f0));
    assert!(pi_positive_definite(&g, &s_tilde_f(&g, &f).unwrap()).unwrap().psd);

    let tbl = character_table(&h).unwrap();
    for alpha in tbl.chars() {
        assert!(pi_positive_definite(&g, &s_tilde_f(&g, alpha).unwrap()).unwrap().psd);
    }
}

#[test]
fn classical_characters_have_the_connection_property() {
    for (name, s) in fixtures::commutative_schemes() {
        let g = GeneralizedScheme::classical(&s);
        let tbl = character_table(&hypergroup_from_generalized(&g).unwrap()).unwrap();
        for alpha in tbl.chars() {
            let cert = positive_connection_check(&g, alpha).unwrap();
            assert!(cert.connected, "{name}: {cert:?}");
            assert!(!cert.sampled);
        }
    }
}

#[test]
fn non_character_is_rejected() {
    let g = GeneralizedScheme::classical(&fixtures::pentagon());
    let err = positive_connection_check(&g, &[c(1.0), c(0.9), c(0.9)]).unwrap_err();
    assert!(matches!(err, Error::NotACharacter { .. }));
}

#[test]
fn generalized_dual_matches_the_classical_one() {
    for (name, s) in fixtures::commutative_schemes() {
        let g = GeneralizedScheme::classical(&s);
        let tbl_g = character_table(&hypergroup_from_generalized(&g).unwrap()).unwrap();
        let tbl = character_table(&hypergroup_from_scheme(&s)).unwrap();
        let n = tbl.num_chars();
        for a in 0..n {
            for b in 0..n {
                let got = dual_product_generalized(&g, &tbl_g, a, b).unwrap();
                let want = dual_convolution(&tbl, a, b).unwrap();
                assert!(got.certified, "{name}");
                for (x, y) in got.measure.raw.iter().zip(&want.raw) {
                    assert!((x - y).abs() < 1e-12, "{name}");
                }
            }
        }
        let one = tbl_g.positive_char_index();
        for a in 0..n {
            let m = dual_product_generalized(&g, &tbl_g, a, one).unwrap().measure;
            for (gamma, w) in m.weights.iter().enumerate() {
                assert!((w - if gamma == a { 1.0 } else { 0.0 }).abs() < 1e-12, "{name}");
            }
        }
    }
}

#[test]
fn operator_norm_and_adjoint() {
    for (name, s) in fixtures::all_schemes() {
        let g = GeneralizedScheme::classical(&s);
        assert!(operator_norms(&g).iter().all(|&v| v <= 1.0 + 1e-10), "{name}");
        assert!(adjoint_residual(&g) <= 1e-10, "{name}");
    }
}

#[test]
fn schur_product_path() {
    let s = fixtures::complete_graph_scheme(4);
    let g = GeneralizedScheme::classical(&s);
    let tbl = character_table(&hypergroup_from_generalized(&g).unwrap()).unwrap();
    for a in tbl.chars() {
        for b in tbl.chars() {
            let check = schur_product_check(&g, a, b).unwrap();
            assert!(check.psd);
            assert!(check.product_residual < 1e-14);
        }
    }
}
