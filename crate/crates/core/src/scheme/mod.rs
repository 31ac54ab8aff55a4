//! Classical association schemes on a finite point set.
//!
//! A scheme is stored as a dense class-index matrix over `X × X` together
//! with the inferred identity class, involution, intersection numbers and
//! valencies. All counts are exact integers.

mod audit;
mod automorphism;
mod graph;
pub mod group;
mod matrices;

pub use audit::audit_multass;
pub use automorphism::{check_automorphism, commutativity_by_involution_automorphism};
pub use graph::scheme_from_distance_regular_graph;
pub use group::{double_coset_representatives, hecke_convolution, scheme_from_group_quotient, FiniteGroup};
pub use matrices::{scheme_matrices, SchemeMatrices};

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, IntersectionMismatch, Result};
use crate::tensor::Tensor3;

/// Intersection numbers `p[i][j][k]` with the valencies, identity and
/// involution they refer to.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntersectionNumbers {
    pub p: Tensor3<i64>,
    pub valencies: Vec<i64>,
    pub identity: usize,
    pub involution: Vec<usize>,
}

impl IntersectionNumbers {
    pub fn num_classes(&self) -> usize {
        self.valencies.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        *self.p.get(i, j, k)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scheme {
    points: Vec<String>,
    classes: Vec<String>,
    relation: Vec<usize>,
    numbers: IntersectionNumbers,
}

impl Scheme {
    /// Builds a scheme from a dense relation matrix: `relation[x * |X| + y]`
    /// is the class index of `(x, y)`.
    ///
    /// Identity class and involution are inferred. The intersection numbers
    /// are counted at every pair and must agree within each class.
    pub fn build(points: Vec<String>, classes: Vec<String>, relation: Vec<usize>) -> Result<Self> {
        let n = points.len();
        let d = classes.len();
        if n == 0 || d == 0 {
            return Err(Error::InvalidInput("X and D must be nonempty".into()));
        }
        if relation.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "relation has {} entries, expected {}",
                relation.len(),
                n * n
            )));
        }
        if let Some(&bad) = relation.iter().find(|&&c| c >= d) {
            return Err(Error::InvalidInput(format!("class index {bad} out of range")));
        }
        check_unique(&points, "point")?;
        check_unique(&classes, "class")?;

        let mut seen = vec![false; d];
        for &c in &relation {
            seen[c] = true;
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return Err(Error::EmptyClass(classes[c].clone()));
        }

        let identity = relation[0];
        for x in 0..n {
            if relation[x * n + x] != identity {
                return Err(Error::NoIdentityClass);
            }
            for y in 0..n {
                if x != y && relation[x * n + y] == identity {
                    return Err(Error::NoIdentityClass);
                }
            }
        }

        let mut involution = vec![usize::MAX; d];
        for x in 0..n {
            for y in 0..n {
                let i = relation[x * n + y];
                let t = relation[y * n + x];
                if involution[i] == usize::MAX {
                    involution[i] = t;
                } else if involution[i] != t {
                    return Err(Error::NoInvolution {
                        class: classes[i].clone(),
                    });
                }
            }
        }
        for i in 0..d {
            if involution[involution[i]] != i {
                return Err(Error::NoInvolution {
                    class: classes[i].clone(),
                });
            }
        }

        let p = count_intersections(&points, &classes, &relation)?;
        let valencies: Vec<i64> = (0..d).map(|i| *p.get(i, involution[i], identity)).collect();

        Ok(Self {
            points,
            classes,
            relation,
            numbers: IntersectionNumbers {
                p,
                valencies,
                identity,
                involution,
            },
        })
    }

    /// Builds a scheme from `(x, y, class)` label triples covering `X × X`.
    pub fn from_triples<S: AsRef<str>>(
        points: Vec<String>,
        classes: Vec<String>,
        triples: &[(S, S, S)],
    ) -> Result<Self> {
        let n = points.len();
        let point_index = index_map(&points);
        let class_index = index_map(&classes);
        let mut relation = vec![usize::MAX; n * n];
        for (x, y, c) in triples {
            let (x, y, c) = (x.as_ref(), y.as_ref(), c.as_ref());
            let xi = *point_index
                .get(x)
                .ok_or_else(|| Error::InvalidInput(format!("unknown point `{x}`")))?;
            let yi = *point_index
                .get(y)
                .ok_or_else(|| Error::InvalidInput(format!("unknown point `{y}`")))?;
            let ci = *class_index
                .get(c)
                .ok_or_else(|| Error::InvalidInput(format!("unknown class `{c}`")))?;
            let slot = &mut relation[xi * n + yi];
            if *slot != usize::MAX && *slot != ci {
                return Err(Error::InvalidInput(format!("pair ({x},{y}) assigned to two classes")));
            }
            *slot = ci;
        }
        if let Some(pos) = relation.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidInput(format!(
                "relation is not total: ({},{}) missing",
                points[pos / n],
                points[pos % n]
            )));
        }
        Self::build(points, classes, relation)
    }

    /// Builds a scheme from a class-valued function on index pairs.
    pub fn from_fn(points: Vec<String>, classes: Vec<String>, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = points.len();
        let relation = (0..n * n).map(|p| f(p / n, p % n)).collect();
        Self::build(points, classes, relation)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn relation_of(&self, x: usize, y: usize) -> usize {
        self.relation[x * self.points.len() + y]
    }

    pub fn relation_matrix(&self) -> &[usize] {
        &self.relation
    }

    pub fn identity_class(&self) -> usize {
        self.numbers.identity
    }

    pub fn involution(&self) -> &[usize] {
        &self.numbers.involution
    }

    pub fn intersection(&self, i: usize, j: usize, k: usize) -> i64 {
        self.numbers.get(i, j, k)
    }

    pub fn numbers(&self) -> &IntersectionNumbers {
        &self.numbers
    }

    pub fn valencies(&self) -> &[i64] {
        &self.numbers.valencies
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == label)
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|c| c == label)
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.num_classes();
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| self.intersection(i, j, k) == self.intersection(j, i, k))))
    }

    pub fn is_symmetric(&self) -> bool {
        self.involution().iter().enumerate().all(|(i, &t)| i == t)
    }

    /// `ω_i = ω_ī` for every class. Always true for finite schemes.
    pub fn is_unimodular(&self) -> bool {
        let w = self.valencies();
        self.involution().iter().enumerate().all(|(i, &t)| w[i] == w[t])
    }
}

fn check_unique(labels: &[String], what: &str) -> Result<()> {
    let mut seen = HashMap::new();
    for l in labels {
        if seen.insert(l.as_str(), ()).is_some() {
            return Err(Error::InvalidInput(format!("duplicate {what} label `{l}`")));
        }
    }
    Ok(())
}

fn index_map(labels: &[String]) -> HashMap<&str, usize> {
    labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
}

/// Counts `|{z : (x,z) ∈ R_i, (z,y) ∈ R_j}|` at every pair and checks that
/// the count depends only on the class of `(x, y)`.
fn count_intersections(points: &[String], classes: &[String], relation: &[usize]) -> Result<Tensor3<i64>> {
    let n = points.len();
    let d = classes.len();
    let mut p = Tensor3::filled(d, 0i64);
    let mut witness: Vec<Option<(usize, usize)>> = vec![None; d];
    let mut counts = vec![0i64; d * d];
    for x in 0..n {
        for y in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for z in 0..n {
                counts[relation[x * n + z] * d + relation[z * n + y]] += 1;
            }
            let k = relation[x * n + y];
            match witness[k] {
                None => {
                    for i in 0..d {
                        for j in 0..d {
                            p.set(i, j, k, counts[i * d + j]);
                        }
                    }
                    witness[k] = Some((x, y));
                }
                Some((wx, wy)) => {
                    for i in 0..d {
                        for j in 0..d {
                            let expected = *p.get(i, j, k);
                            let got = counts[i * d + j];
                            if expected != got {
                                return Err(Error::InconsistentIntersection(Box::new(IntersectionMismatch {
                                    i: classes[i].clone(),
                                    j: classes[j].clone(),
                                    k: classes[k].clone(),
                                    first: expected as u64,
                                    second: got as u64,
                                    x1: points[wx].clone(),
                                    y1: points[wy].clone(),
                                    x2: points[x].clone(),
                                    y2: points[y].clone(),
                                })));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(p)
}
