//! Finite groups given by Cayley tables, their coset schemes `G/H` with
//! classes `G//H`, and the double coset (Hecke) convolution.

use num_rational::Rational64;

use super::Scheme;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table given as element indices.
    pub fn from_table(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidCayleyTable("empty group".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCayleyTable(format!("table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::InvalidCayleyTable("entry outside the element set".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or_else(|| Error::InvalidCayleyTable("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| mul(g, h) == identity && mul(h, g) == identity)
                .ok_or_else(|| Error::InvalidCayleyTable(format!("`{}` has no inverse", elements[g])))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidCayleyTable(format!(
                            "not associative at ({},{},{})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(Self {
            elements,
            table: flat,
            identity,
            inverse,
        })
    }

    /// Validates a Cayley table whose entries are element labels.
    pub fn from_labeled_table(elements: Vec<String>, table: &[Vec<String>]) -> Result<Self> {
        let indices = table
            .iter()
            .map(|row| row.iter().map(|l| index_of(&elements, l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(elements, indices)
    }

    /// The group generated by permutations of `0..degree`, closed under
    /// composition. Elements are labelled in one-line notation.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        let id: Vec<usize> = (0..degree).collect();
        let mut perms = vec![id];
        let mut frontier = 0;
        while frontier < perms.len() {
            let current = perms[frontier].clone();
            for g in generators {
                if g.len() != degree {
                    return Err(Error::InvalidInput("generator of wrong degree".into()));
                }
                let next = compose(g, &current);
                if !perms.contains(&next) {
                    perms.push(next);
                }
            }
            frontier += 1;
        }
        perms.sort();
        let n = perms.len();
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let c = compose(&perms[a], &perms[b]);
                        perms.binary_search(&c).expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| perm_label(p)).collect();
        Self::from_table(labels, table)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table((0..n).map(|i| i.to_string()).collect(), table).expect("cyclic group")
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree > 1 {
            let mut swap: Vec<usize> = (0..degree).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
            gens.push(swap);
            gens.push(cycle);
        }
        Self::from_permutations(degree, &gens).expect("symmetric group")
    }

    /// Symmetries of the regular `n`-gon acting on its vertices.
    pub fn dihedral(n: usize) -> Self {
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rotation, reflection]).expect("dihedral group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        index_of(&self.elements, label)
    }

    /// The subgroup generated by `generators`, sorted.
    pub fn generated(&self, generators: &[usize]) -> Vec<usize> {
        let mut members = vec![self.identity];
        let mut frontier = 0;
        while frontier < members.len() {
            let current = members[frontier];
            for &g in generators {
                let next = self.mul(current, g);
                if !members.contains(&next) {
                    members.push(next);
                }
            }
            frontier += 1;
        }
        members.sort_unstable();
        members
    }

    /// Elements fixing `point` when the group was built from permutations
    /// labelled in one-line notation.
    pub fn point_stabilizer(&self, point: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| {
                parse_perm_label(&self.elements[g])
                    .map(|p| p.get(point) == Some(&point))
                    .unwrap_or(false)
            })
            .collect()
    }

    pub fn check_subgroup(&self, subgroup: &[usize]) -> Result<()> {
        if subgroup.is_empty() {
            return Err(Error::NotASubgroup("empty set".into()));
        }
        if let Some(&bad) = subgroup.iter().find(|&&h| h >= self.order()) {
            return Err(Error::NotASubgroup(format!("index {bad} outside the group")));
        }
        let contains = |g: usize| subgroup.contains(&g);
        if !contains(self.identity) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in subgroup {
            if !contains(self.inv(a)) {
                return Err(Error::NotASubgroup(format!(
                    "inverse of `{}` missing",
                    self.elements[a]
                )));
            }
            for &b in subgroup {
                if !contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "not closed: `{}`·`{}`",
                        self.elements[a], self.elements[b]
                    )));
                }
            }
        }
        Ok(())
    }
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    // (f ∘ g)(i) = f(g(i))
    g.iter().map(|&i| f[i]).collect()
}

fn perm_label(p: &[usize]) -> String {
    let body: Vec<String> = p.iter().map(|v| v.to_string()).collect();
    format!("[{}]", body.join(","))
}

fn parse_perm_label(s: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

fn index_of(labels: &[String], label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::InvalidCayleyTable(format!("unknown element `{label}`")))
}

/// Left cosets `gH` and double cosets `HgH`, each ordered by smallest member.
struct Cosets {
    left_of: Vec<usize>,
    left_reps: Vec<usize>,
    double_of: Vec<usize>,
    double_reps: Vec<usize>,
    /// Number of left cosets inside each double coset.
    index: Vec<usize>,
}

impl Cosets {
    fn new(g: &FiniteGroup, h: &[usize]) -> Self {
        let n = g.order();
        let mut left_of = vec![usize::MAX; n];
        let mut left_reps = Vec::new();
        for x in 0..n {
            if left_of[x] == usize::MAX {
                let id = left_reps.len();
                left_reps.push(x);
                for &k in h {
                    left_of[g.mul(x, k)] = id;
                }
            }
        }
        let mut double_of = vec![usize::MAX; n];
        let mut double_reps = Vec::new();
        for x in 0..n {
            if double_of[x] == usize::MAX {
                let id = double_reps.len();
                double_reps.push(x);
                for &a in h {
                    for &b in h {
                        double_of[g.mul(g.mul(a, x), b)] = id;
                    }
                }
            }
        }
        let mut index = vec![0; double_reps.len()];
        for &rep in &left_reps {
            index[double_of[rep]] += 1;
        }
        Self {
            left_of,
            left_reps,
            double_of,
            double_reps,
            index,
        }
    }

    /// Representatives of the left cosets contained in the double coset of `a`.
    fn left_cosets_in(&self, a: usize) -> Vec<usize> {
        let d = self.double_of[a];
        self.left_reps
            .iter()
            .copied()
            .filter(|&r| self.double_of[r] == d)
            .collect()
    }
}

fn validated_subgroup(g: &FiniteGroup, subgroup: &[usize]) -> Result<Vec<usize>> {
    let mut h = subgroup.to_vec();
    h.sort_unstable();
    h.dedup();
    g.check_subgroup(&h)?;
    Ok(h)
}

/// The scheme on `X = G/H` with classes `D = G//H` and
/// `(xH, yH) ∈ R_{HgH} ⟺ Hx⁻¹yH = HgH`.
pub fn scheme_from_group_quotient(g: &FiniteGroup, subgroup: &[usize]) -> Result<Scheme> {
    let h = validated_subgroup(g, subgroup)?;
    let cosets = Cosets::new(g, &h);
    let points = cosets
        .left_reps
        .iter()
        .map(|&r| format!("{}H", g.elements[r]))
        .collect();
    let classes = cosets
        .double_reps
        .iter()
        .map(|&r| format!("H{}H", g.elements[r]))
        .collect();
    let reps = &cosets.left_reps;
    Scheme::from_fn(points, classes, |x, y| cosets.double_of[g.mul(g.inv(reps[x]), reps[y])])
}

/// One representative per double coset, in the class order of
/// [`scheme_from_group_quotient`].
pub fn double_coset_representatives(g: &FiniteGroup, subgroup: &[usize]) -> Result<Vec<usize>> {
    let h = validated_subgroup(g, subgroup)?;
    Ok(Cosets::new(g, &h).double_reps)
}

/// `δ_{HaH} * δ_{HbH}` computed directly from coset products:
/// the weight of `HcH` is `μ(HcH)·ind(HcH) / (ind(HaH)·ind(HbH))` with
/// `μ(HcH) = |{(i,j) : a_i b_j H = cH}|`. Indexed like the classes of
/// [`scheme_from_group_quotient`].
pub fn hecke_convolution(g: &FiniteGroup, subgroup: &[usize], a: usize, b: usize) -> Result<Vec<Rational64>> {
    let h = validated_subgroup(g, subgroup)?;
    if a >= g.order() || b >= g.order() {
        return Err(Error::InvalidInput("element index outside the group".into()));
    }
    let cosets = Cosets::new(g, &h);
    let a_reps = cosets.left_cosets_in(a);
    let b_reps = cosets.left_cosets_in(b);
    let ind = |x: usize| cosets.index[cosets.double_of[x]] as i64;
    let denom = ind(a) * ind(b);
    Ok(cosets
        .double_reps
        .iter()
        .map(|&c| {
            let target = cosets.left_of[c];
            let mu = a_reps
                .iter()
                .flat_map(|&ai| b_reps.iter().map(move |&bj| (ai, bj)))
                .filter(|&(ai, bj)| cosets.left_of[g.mul(ai, bj)] == target)
                .count() as i64;
            Rational64::new(mu * ind(c), denom)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn s3_with_transposition() -> (FiniteGroup, Vec<usize>) {
        let g = FiniteGroup::symmetric(3);
        let h = g.point_stabilizer(2);
        (g, h)
    }

    #[test]
    fn cayley_validation() {
        let err = FiniteGroup::from_table(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidCayleyTable(_)));
        let err = FiniteGroup::from_table(vec!["a".into()], vec![vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidCayleyTable(_)));
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
    }

    #[test]
    fn subgroup_validation() {
        let g = FiniteGroup::cyclic(4);
        assert!(matches!(
            scheme_from_group_quotient(&g, &[1]),
            Err(Error::NotASubgroup(_))
        ));
        assert!(matches!(
            scheme_from_group_quotient(&g, &[0, 1]),
            Err(Error::NotASubgroup(_))
        ));
        assert!(scheme_from_group_quotient(&g, &[0, 2]).is_ok());
    }

    /// S3 acting on three points, H = stabilizer of a point (order 2):
    /// three cosets, two double cosets of sizes 2 and 4 (1 and 2 cosets).
    #[test]
    fn s3_mod_transposition() {
        let (g, h) = s3_with_transposition();
        assert_eq!(h.len(), 2);
        let s = scheme_from_group_quotient(&g, &h).unwrap();
        assert_eq!(s.num_points(), 3);
        assert_eq!(s.num_classes(), 2);
        assert_eq!(s.valencies(), &[1, 2]);
    }

    #[test]
    fn trivial_subgroup_of_cyclic_recovers_translation_scheme() {
        let g = FiniteGroup::cyclic(4);
        let s = scheme_from_group_quotient(&g, &[0]).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(s.relation_of(x, y), (y + 4 - x) % 4);
            }
        }
    }

    #[test]
    fn whole_group_gives_trivial_scheme() {
        let g = FiniteGroup::symmetric(3);
        let all: Vec<usize> = (0..6).collect();
        let s = scheme_from_group_quotient(&g, &all).unwrap();
        assert_eq!((s.num_points(), s.num_classes()), (1, 1));
    }

    /// Enumerating coset products in S3 with a = b = (0 1 2):
    /// HaH is the non-trivial double coset containing two cosets a_1H, a_2H.
    /// Of the four products a_i b_j H, two land in H and two land in the
    /// fixed representative coset of HaH, giving weights 1/2, 1/2.
    #[test]
    fn s3_hecke_product_of_three_cycles() {
        let (g, h) = s3_with_transposition();
        let cycle = g.index_of("[1,2,0]").unwrap();
        let m = hecke_convolution(&g, &h, cycle, cycle).unwrap();
        assert_eq!(m, vec![Rational64::new(1, 2), Rational64::new(1, 2)]);
    }

    #[test]
    fn hecke_identity_and_group_cases() {
        let (g, h) = s3_with_transposition();
        let cycle = g.index_of("[1,2,0]").unwrap();
        let m = hecke_convolution(&g, &h, h[1], cycle).unwrap();
        assert_eq!(m, vec![Rational64::zero(), Rational64::from_integer(1)]);

        let z4 = FiniteGroup::cyclic(4);
        for a in 0..4 {
            for b in 0..4 {
                let m = hecke_convolution(&z4, &[0], a, b).unwrap();
                for (c, w) in m.iter().enumerate() {
                    assert_eq!(*w, Rational64::from_integer(i64::from(c == (a + b) % 4)));
                }
            }
        }
    }
}
