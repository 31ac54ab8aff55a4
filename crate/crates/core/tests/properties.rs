use std::f64::consts::PI;

use hyperscheme::families::{CoshFamily, GabFamily};
use hyperscheme::fixtures;
use hyperscheme::harmonic::{bochner_check, character_table, dual_products, is_positive_definite};
use hyperscheme::hypergroup::{hypergroup_from_scheme, verify_hypergroup};
use hyperscheme::scheme::{audit_multass, double_coset_representatives, hecke_convolution, scheme_from_group_quotient};
use hyperscheme::Complex64;
use proptest::prelude::*;

const PARAMS: [f64; 5] = [2.0, 2.5, 3.0, 5.0, 10.0];

fn family() -> impl Strategy<Value = GabFamily> {
    (0..PARAMS.len(), 0..PARAMS.len()).prop_map(|(i, j)| GabFamily::new(PARAMS[i], PARAMS[j]).unwrap())
}

proptest! {
    #[test]
    fn linearization_is_a_probability(f in family(), m in 0usize..=15, n in 0usize..=15) {
        let g = f.linearization(m, n);
        prop_assert!(g.iter().all(|&v| v >= 0.0));
        prop_assert!((g.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(g[..m.abs_diff(n)].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn haar_inverts_return_probability(f in family(), n in 0usize..=12) {
        let back = f.linearization(n, n)[0];
        prop_assert!((f.haar(n) * back - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_formula(f in family(), m in 0usize..=10, n in 0usize..=10, x in -1.0f64..=1.0) {
        let p = f.eval_all(m + n, x);
        let rhs: f64 = f.linearization(m, n).iter().zip(&p).map(|(g, pk)| g * pk).sum();
        prop_assert!((p[m] * p[n] - rhs).abs() < 1e-10);
    }

    #[test]
    fn bounded_on_the_dual(f in family(), t in -1.0f64..=1.0) {
        let x = t * f.s1();
        prop_assert!(f.eval_all(30, x).iter().all(|v| v.abs() <= 1.0 + 1e-9));
    }

    #[test]
    fn endpoint_values(f in family(), n in 0usize..=20) {
        prop_assert!((f.eval(n, f.s1()) - 1.0).abs() < 1e-9);
        let want = (1.0 - f.b()).powi(-(n as i32));
        let got: f64 = f.eval_precise(n, f.s0_precise()).into();
        prop_assert!((got - want).abs() <= 1e-9 * want.abs());
    }

    #[test]
    fn endpoint_ordering(f in family()) {
        prop_assert!(-f.s1() <= f.s0() + 1e-15);
        prop_assert!(f.s0() <= -1.0 + 1e-15);
        prop_assert!(1.0 <= f.s1() + 1e-15);
    }

    #[test]
    fn recurrence_matches_closed_form(f in family(), n in 0usize..=50, x in -2.0f64..2.0) {
        prop_assume!((x.abs() - 1.0).abs() > 1e-3);
        prop_assume!(x.abs() <= f.s1() + 1.0);
        let closed = f.closed_form(n, x).unwrap();
        let rec = f.eval(n, x);
        prop_assert!((closed - rec).abs() <= 1e-9 * rec.abs().max(1.0), "{closed} vs {rec}");
    }

    #[test]
    fn cosh_characters_are_multiplicative(r in 0.1f64..5.0, lam in 0.0f64..=PI) {
        let f = CoshFamily::new(r).unwrap();
        prop_assert!(f.multiplicativity_residual(Complex64::new(lam, 0.0), 8) < 1e-12);
        let c = f.convolution(1, 1);
        prop_assert!(c[0].1 > 0.5 && c[0].1 < 1.0);
    }

    #[test]
    fn cyclic_scheme_hypergroups_verify(n in 1usize..=12) {
        let s = fixtures::cyclic_scheme(n);
        prop_assert!(audit_multass(s.numbers()).all_passed());
        prop_assert!(verify_hypergroup(&hypergroup_from_scheme(&s)).all_passed());
    }

    #[test]
    fn fourier_round_trip(idx in 0usize..17, seed in proptest::collection::vec(-1.0f64..1.0, 24)) {
        let schemes = fixtures::commutative_schemes();
        let (_, s) = &schemes[idx % schemes.len()];
        let tbl = character_table(&hypergroup_from_scheme(s)).unwrap();
        let d = s.num_classes();
        let f: Vec<Complex64> = (0..d).map(|i| Complex64::new(seed[2 * i % 24], seed[(2 * i + 1) % 24])).collect();
        let back = tbl.inverse_fourier(&tbl.fourier(&f));
        for (a, b) in f.iter().zip(&back) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn bochner_agrees_with_matrix_test(idx in 0usize..17, seed in proptest::collection::vec(-1.0f64..1.0, 24)) {
        let schemes = fixtures::commutative_schemes();
        let (_, s) = &schemes[idx % schemes.len()];
        let h = hypergroup_from_scheme(s);
        let tbl = character_table(&h).unwrap();
        // build f from random Fourier coefficients so both outcomes occur
        let coeffs: Vec<Complex64> = (0..tbl.num_chars()).map(|a| Complex64::new(seed[a % 24], 0.0)).collect();
        let f = tbl.inverse_fourier(&coeffs);
        let matrix = is_positive_definite(&h, &f).unwrap();
        let char_test = bochner_check(&tbl, &f, 1e-9);
        prop_assert_eq!(matrix.psd, char_test.positive);
    }
}

#[test]
fn dual_products_are_probabilities() {
    for (name, s) in fixtures::commutative_schemes() {
        let tbl = character_table(&hypergroup_from_scheme(&s)).unwrap();
        for m in dual_products(&tbl).unwrap() {
            assert!(m.min_raw >= -1e-9, "{name}");
            assert!((m.raw_sum - 1.0).abs() < 1e-10, "{name}");
        }
    }
}

#[test]
fn hecke_convolution_equals_scheme_convolution() {
    for (name, g, h) in fixtures::group_pairs() {
        let s = scheme_from_group_quotient(&g, &h).unwrap();
        let hyp = hypergroup_from_scheme(&s);
        let reps = double_coset_representatives(&g, &h).unwrap();
        for a in 0..s.num_classes() {
            for b in 0..s.num_classes() {
                let hecke = hecke_convolution(&g, &h, reps[a], reps[b]).unwrap();
                assert_eq!(hecke.as_slice(), hyp.conv().row(a, b), "{name} ({a},{b})");
            }
        }
    }
}
