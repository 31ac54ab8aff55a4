//! Small schemes and group pairs used by tests, benches and the command
//! line `--fixture` option.

use crate::scheme::{scheme_from_distance_regular_graph, scheme_from_group_quotient, FiniteGroup, Scheme};

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Translation scheme of `ℤ_n`: `(x, y) ∈ R_i ⟺ y − x ≡ i (mod n)`.
pub fn cyclic_scheme(n: usize) -> Scheme {
    Scheme::from_fn(labels(n), labels(n), |x, y| (y + n - x) % n).expect("cyclic scheme")
}

pub fn cycle_graph(n: usize) -> Vec<Vec<bool>> {
    (0..n)
        .map(|x| (0..n).map(|y| (x + 1) % n == y || (y + 1) % n == x).collect())
        .collect()
}

pub fn complete_graph(n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|x| (0..n).map(|y| x != y).collect()).collect()
}

/// Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint.
pub fn petersen_graph() -> Vec<Vec<bool>> {
    let subsets: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    subsets
        .iter()
        .map(|&(a, b)| {
            subsets
                .iter()
                .map(|&(c, d)| a != c && a != d && b != c && b != d)
                .collect()
        })
        .collect()
}

/// Distance scheme of the 5-cycle.
pub fn pentagon() -> Scheme {
    scheme_from_distance_regular_graph(&cycle_graph(5)).expect("pentagon")
}

pub fn complete_graph_scheme(n: usize) -> Scheme {
    scheme_from_distance_regular_graph(&complete_graph(n)).expect("complete graph")
}

pub fn petersen() -> Scheme {
    scheme_from_distance_regular_graph(&petersen_graph()).expect("petersen")
}

/// `S_3` with the stabilizer of a point (a subgroup of order 2).
pub fn s3_pair() -> (FiniteGroup, Vec<usize>) {
    let g = FiniteGroup::symmetric(3);
    let h = g.point_stabilizer(2);
    (g, h)
}

/// `S_4` with the stabilizer of a point (a copy of `S_3`).
pub fn s4_pair() -> (FiniteGroup, Vec<usize>) {
    let g = FiniteGroup::symmetric(4);
    let h = g.point_stabilizer(3);
    (g, h)
}

pub fn s3_mod_transposition() -> Scheme {
    let (g, h) = s3_pair();
    scheme_from_group_quotient(&g, &h).expect("S3/H")
}

pub fn s4_mod_s3() -> Scheme {
    let (g, h) = s4_pair();
    scheme_from_group_quotient(&g, &h).expect("S4/S3")
}

/// The group scheme of `S_3` (trivial subgroup); not commutative.
pub fn s3_regular() -> Scheme {
    let g = FiniteGroup::symmetric(3);
    scheme_from_group_quotient(&g, &[g.identity()]).expect("S3/{e}")
}

/// Commutative fixtures: `ℤ_n` for `n ≤ 12`, pentagon, `K_4`, Petersen,
/// `S_3/H` and `S_4/S_3`.
pub fn commutative_schemes() -> Vec<(String, Scheme)> {
    let mut out: Vec<(String, Scheme)> = (1..=12).map(|n| (format!("Z{n}"), cyclic_scheme(n))).collect();
    out.push(("pentagon".into(), pentagon()));
    out.push(("K4".into(), complete_graph_scheme(4)));
    out.push(("petersen".into(), petersen()));
    out.push(("S3/H".into(), s3_mod_transposition()));
    out.push(("S4/S3".into(), s4_mod_s3()));
    out
}

/// The commutative fixtures plus the non-commutative `S_3` group scheme.
pub fn all_schemes() -> Vec<(String, Scheme)> {
    let mut out = commutative_schemes();
    out.push(("S3/{e}".into(), s3_regular()));
    out
}

/// Finite group/subgroup pairs exercised by the double coset checks.
pub fn group_pairs() -> Vec<(String, FiniteGroup, Vec<usize>)> {
    let mut out = Vec::new();
    let (g, h) = s3_pair();
    out.push(("S3/H".to_string(), g, h));
    let (g, h) = s4_pair();
    out.push(("S4/S3".to_string(), g, h));

    let s3 = FiniteGroup::symmetric(3);
    out.push(("S3/{e}".to_string(), s3.clone(), vec![s3.identity()]));
    out.push(("S3/S3".to_string(), s3.clone(), (0..s3.order()).collect()));

    let z4 = FiniteGroup::cyclic(4);
    out.push(("Z4/{0}".to_string(), z4, vec![0]));
    let z12 = FiniteGroup::cyclic(12);
    let h = z12.generated(&[6]);
    out.push(("Z12/{0,6}".to_string(), z12, h));

    let d4 = FiniteGroup::dihedral(4);
    let h = d4.point_stabilizer(0);
    out.push(("D4/<s>".to_string(), d4, h));
    let d5 = FiniteGroup::dihedral(5);
    let h = d5.point_stabilizer(0);
    out.push(("D5/<s>".to_string(), d5, h));

    let s4 = FiniteGroup::symmetric(4);
    let klein: Vec<usize> = ["[1,0,3,2]", "[2,3,0,1]"]
        .iter()
        .map(|l| s4.index_of(l).expect("klein generator"))
        .collect();
    let v = s4.generated(&klein);
    out.push(("S4/V4".to_string(), s4.clone(), v));
    let two_point: Vec<usize> = s4
        .point_stabilizer(3)
        .into_iter()
        .filter(|g| s4.point_stabilizer(2).contains(g))
        .collect();
    out.push(("S4/S2".to_string(), s4, two_point));
    out
}
