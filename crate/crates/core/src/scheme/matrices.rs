use nalgebra::DMatrix;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::Scheme;
use crate::report::{AuditReport, Check};

/// Adjacency matrices `A_i` and their row-normalized versions `S_i = A_i / ω_i`.
#[derive(Clone, Debug)]
pub struct SchemeMatrices {
    pub adjacency: Vec<DMatrix<i64>>,
    pub stochastic: Vec<DMatrix<Rational64>>,
}

pub fn scheme_matrices(s: &Scheme) -> SchemeMatrices {
    let n = s.num_points();
    let adjacency: Vec<DMatrix<i64>> = (0..s.num_classes())
        .map(|i| DMatrix::from_fn(n, n, |x, y| i64::from(s.relation_of(x, y) == i)))
        .collect();
    let stochastic = adjacency
        .iter()
        .zip(s.valencies())
        .map(|(a, &w)| a.map(|v| Rational64::new(v, w)))
        .collect();
    SchemeMatrices { adjacency, stochastic }
}

impl SchemeMatrices {
    /// Checks the Bose–Mesner identities exactly.
    pub fn verify(&self, s: &Scheme) -> AuditReport {
        let n = s.num_points();
        let d = s.num_classes();
        let inv = s.involution();
        let mut checks = Vec::new();

        let e = s.identity_class();
        checks.push(Check::from_witness(
            "identity_matrix",
            (self.adjacency[e] != DMatrix::identity(n, n)).then(|| format!("A_{} != I", s.classes()[e])),
        ));

        let total = self
            .adjacency
            .iter()
            .fold(DMatrix::<i64>::zeros(n, n), |acc, a| acc + a);
        checks.push(Check::from_witness(
            "sum_is_all_ones",
            (total != DMatrix::from_element(n, n, 1)).then(|| "sum of A_i != J".to_string()),
        ));

        let transpose = (0..d).find(|&i| self.adjacency[i].transpose() != self.adjacency[inv[i]]);
        checks.push(Check::from_witness(
            "transpose_is_involution",
            transpose.map(|i| format!("A_{}^T != A_{}", s.classes()[i], s.classes()[inv[i]])),
        ));

        let row_sum = (0..d).find_map(|i| {
            (0..n).find_map(|x| {
                let sum = self.stochastic[i]
                    .row(x)
                    .iter()
                    .fold(Rational64::zero(), |acc, v| acc + v);
                (!sum.is_one()).then(|| format!("row {} of S_{} sums to {sum}", s.points()[x], s.classes()[i]))
            })
        });
        checks.push(Check::from_witness("stochastic_rows", row_sum));

        let mut product = None;
        'outer: for i in 0..d {
            for j in 0..d {
                let lhs = &self.adjacency[i] * &self.adjacency[j];
                let mut rhs = DMatrix::<i64>::zeros(n, n);
                for k in 0..d {
                    let p = s.intersection(i, j, k);
                    if p != 0 {
                        rhs += &self.adjacency[k] * p;
                    }
                }
                if lhs != rhs {
                    product = Some(format!("A_{} A_{} != sum_k p A_k", s.classes()[i], s.classes()[j]));
                    break 'outer;
                }
            }
        }
        checks.push(Check::from_witness("product_expansion", product));
        AuditReport { checks }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cyclic_adjacency_is_permutation() {
        let s = fixtures::cyclic_scheme(4);
        let m = scheme_matrices(&s);
        for (i, a) in m.adjacency.iter().enumerate() {
            for x in 0..4 {
                let row: Vec<i64> = a.row(x).iter().copied().collect();
                assert_eq!(row.iter().sum::<i64>(), 1);
                assert_eq!(row[(x + i) % 4], 1);
            }
        }
        assert!(m.verify(&s).all_passed());
    }

    #[test]
    fn pentagon_matrices() {
        let s = fixtures::pentagon();
        let m = scheme_matrices(&s);
        for x in 0..5 {
            for y in 0..5 {
                let adjacent = (x + 1) % 5 == y || (y + 1) % 5 == x;
                assert_eq!(m.adjacency[1][(x, y)], i64::from(adjacent));
                assert_eq!(m.stochastic[1][(x, y)], Rational64::new(i64::from(adjacent), 2));
            }
        }
        assert!(m.verify(&s).all_passed());
    }

    #[test]
    fn all_fixtures_pass_matrix_checks() {
        for (name, s) in fixtures::all_schemes() {
            let report = scheme_matrices(&s).verify(&s);
            assert!(report.all_passed(), "{name}: {report:?}");
        }
    }
}
