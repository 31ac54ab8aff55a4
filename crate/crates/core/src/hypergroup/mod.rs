//! Finite discrete hypergroups stored as convolution tensors
//! `c[i][j][k] = (δ_i * δ_j)({k})`.

mod algebra;
mod verify;

pub use algebra::{convolve_functions, convolve_measures, involute, is_probability, modular_function, translate};
pub use verify::{verify_hypergroup, verify_hypergroup_with_tol};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Weight;
use crate::scheme::Scheme;
use crate::tensor::Tensor3;
use crate::tolerance;

/// Where a hypergroup came from. Scheme-derived hypergroups must have
/// nonnegative dual products, so some checks are strict for them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Scheme,
    Generalized,
    Family,
    Manual,
    Dual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteHypergroup<T: Weight = Rational64> {
    classes: Vec<String>,
    conv: Tensor3<T>,
    identity: usize,
    involution: Vec<usize>,
    haar: Vec<T>,
    origin: Origin,
}

impl<T: Weight> FiniteHypergroup<T> {
    /// Assembles a hypergroup from its parts without checking the axioms.
    /// The Haar weights are derived as `1 / c[ī][i][e]` (zero where that
    /// entry vanishes, which [`verify_hypergroup`] then reports).
    pub fn from_parts(
        classes: Vec<String>,
        conv: Tensor3<T>,
        identity: usize,
        involution: Vec<usize>,
        origin: Origin,
    ) -> Result<Self> {
        let d = classes.len();
        if d == 0 || conv.dim() != d || involution.len() != d || identity >= d {
            return Err(Error::InvalidInput("hypergroup parts have inconsistent sizes".into()));
        }
        if involution.iter().any(|&t| t >= d) {
            return Err(Error::InvalidInput("involution maps outside D".into()));
        }
        let haar = (0..d)
            .map(|i| {
                let v = conv.get(involution[i], i, identity).clone();
                if v.is_negligible(0.0) {
                    T::zero()
                } else {
                    T::one() / v
                }
            })
            .collect();
        Ok(Self {
            classes,
            conv,
            identity,
            involution,
            haar,
            origin,
        })
    }

    /// Infers identity and involution from the tensor, then assembles.
    pub fn infer(classes: Vec<String>, conv: Tensor3<T>, origin: Origin, tol: f64) -> Result<Self> {
        let d = classes.len();
        if conv.dim() != d {
            return Err(Error::InvalidInput("tensor size does not match D".into()));
        }
        let candidates = identity_candidates(&conv, tol);
        let identity = match candidates.as_slice() {
            [e] => *e,
            [] => {
                return Err(Error::AxiomViolation {
                    axiom: "identity".into(),
                    witness: "no class acts as identity".into(),
                })
            }
            many => {
                return Err(Error::AxiomViolation {
                    axiom: "identity".into(),
                    witness: format!("several identity candidates {many:?}"),
                })
            }
        };
        let mut involution = Vec::with_capacity(d);
        for i in 0..d {
            let hits: Vec<usize> = (0..d).filter(|&j| conv.get(i, j, identity).is_positive(tol)).collect();
            match hits.as_slice() {
                [j] => involution.push(*j),
                _ => {
                    return Err(Error::AxiomViolation {
                        axiom: "support".into(),
                        witness: format!("class {} has {} partners reaching the identity", classes[i], hits.len()),
                    })
                }
            }
        }
        Self::from_parts(classes, conv, identity, involution, origin)
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn conv(&self) -> &Tensor3<T> {
        &self.conv
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> &T {
        self.conv.get(i, j, k)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    /// Left Haar weights `ω_i`.
    pub fn haar(&self) -> &[T] {
        &self.haar
    }

    /// Right Haar weights `ω_ī`.
    pub fn haar_right(&self) -> Vec<T> {
        self.involution.iter().map(|&t| self.haar[t].clone()).collect()
    }

    pub fn haar_f64(&self) -> Vec<f64> {
        self.haar.iter().map(Weight::to_f64).collect()
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    pub fn is_symmetric(&self) -> bool {
        self.involution.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness(tolerance::HYPERGROUP).is_none()
    }

    /// A triple `(i, j, k)` with `c[i][j][k] ≠ c[j][i][k]`, if any.
    pub fn commutativity_witness(&self, tol: f64) -> Option<(usize, usize, usize)> {
        let d = self.num_classes();
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    if !self.c(i, j, k).approx_eq(self.c(j, i, k), tol) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn to_float(&self) -> FiniteHypergroup<f64> {
        FiniteHypergroup {
            classes: self.classes.clone(),
            conv: self.conv.map(Weight::to_f64),
            identity: self.identity,
            involution: self.involution.clone(),
            haar: self.haar_f64(),
            origin: self.origin,
        }
    }
}

pub(crate) fn identity_candidates<T: Weight>(conv: &Tensor3<T>, tol: f64) -> Vec<usize> {
    let d = conv.dim();
    (0..d)
        .filter(|&e| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let want = if j == k { T::one() } else { T::zero() };
                    conv.get(e, j, k).approx_eq(&want, tol) && conv.get(j, e, k).approx_eq(&want, tol)
                })
            })
        })
        .collect()
}

/// `δ_i * δ_j = Σ_k ω_k p_{ij}^k / (ω_i ω_j) δ_k` in exact rationals.
pub fn hypergroup_from_scheme(s: &Scheme) -> FiniteHypergroup<Rational64> {
    let d = s.num_classes();
    let w = s.valencies();
    let conv = Tensor3::from_fn(d, |i, j, k| {
        Rational64::new(w[k] * s.intersection(i, j, k), w[i] * w[j])
    });
    FiniteHypergroup::from_parts(
        s.classes().to_vec(),
        conv,
        s.identity_class(),
        s.involution().to_vec(),
        Origin::Scheme,
    )
    .expect("scheme data is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    #[test]
    fn pentagon_products() {
        let h = hypergroup_from_scheme(&fixtures::pentagon());
        assert_eq!(h.conv().row(1, 1), &[r(1, 2), r(0, 1), r(1, 2)]);
        assert_eq!(h.conv().row(1, 2), &[r(0, 1), r(1, 2), r(1, 2)]);
        assert_eq!(h.haar(), &[r(1, 1), r(2, 1), r(2, 1)]);
        assert!(h.is_symmetric());
    }

    #[test]
    fn cyclic_group_algebra() {
        let h = hypergroup_from_scheme(&fixtures::cyclic_scheme(4));
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let want = r(i64::from((i + j) % 4 == k), 1);
                    assert_eq!(*h.c(i, j, k), want);
                }
            }
        }
        assert!(!h.is_symmetric());
        assert!(h.is_commutative());
    }

    #[test]
    fn s3_mod_transposition_products() {
        let h = hypergroup_from_scheme(&fixtures::s3_mod_transposition());
        assert_eq!(h.conv().row(1, 1), &[r(1, 2), r(1, 2)]);
    }

    #[test]
    fn flags_follow_the_scheme() {
        for (name, s) in fixtures::all_schemes() {
            let h = hypergroup_from_scheme(&s);
            assert_eq!(h.is_commutative(), s.is_commutative(), "{name}");
            assert_eq!(h.is_symmetric(), s.is_symmetric(), "{name}");
            assert_eq!(h.haar_right(), h.haar().to_vec(), "{name}");
        }
    }

    #[test]
    fn inference_recovers_identity_and_involution() {
        let h = hypergroup_from_scheme(&fixtures::cyclic_scheme(5));
        let g = FiniteHypergroup::infer(h.classes().to_vec(), h.conv().clone(), Origin::Manual, 0.0).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.involution(), &[0, 4, 3, 2, 1]);
    }
}
