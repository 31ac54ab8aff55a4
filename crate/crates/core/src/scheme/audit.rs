use num_rational::Rational64;

use super::IntersectionNumbers;
use crate::report::{AuditReport, Check};

/// Checks the seven standard identities between intersection numbers and
/// valencies, in exact integer arithmetic. Report-only.
///
/// 1. `p_{e,i}^j = p_{i,e}^j = δ_{ij}` and `p_{i,j}^e = ω_i δ_{i,j̄}`
/// 2. `p_{i,j}^l = p_{j̄,ī}^{l̄}`
/// 3. `Σ_j p_{i,j}^l = ω_i`
/// 4. `ω_l p_{i,j}^l = ω_i p_{l,j̄}^i` and `ω_j̄ p_{ī,l}^j = ω_l̄ p_{i,j}^l`
/// 5. `Σ_l ω_l p_{i,j}^l = ω_i ω_j` and `Σ_l ω_l̄ p_{i,j}^l = ω_ī ω_j̄`
/// 6. `Σ_l p_{i,j}^l p_{l,k}^m = Σ_l p_{j,k}^l p_{i,l}^m`
/// 7. `p_{i,j}^k > 0 ⟹ ω_k/ω_k̄ = (ω_i/ω_ī)(ω_j/ω_j̄)`
pub fn audit_multass(numbers: &IntersectionNumbers) -> AuditReport {
    let d = numbers.num_classes();
    let e = numbers.identity;
    let inv = &numbers.involution;
    let w = &numbers.valencies;
    let p = |i: usize, j: usize, k: usize| numbers.get(i, j, k);
    let delta = |a: usize, b: usize| i64::from(a == b);

    let first = find3(d, |i, j, _| {
        if p(e, i, j) != delta(i, j) || p(i, e, j) != delta(i, j) {
            return Some(format!("p[e][{i}][{j}]={} p[{i}][e][{j}]={}", p(e, i, j), p(i, e, j)));
        }
        (p(i, j, e) != w[i] * delta(i, inv[j])).then(|| format!("p[{i}][{j}][e]={} but ω_{i}={}", p(i, j, e), w[i]))
    });

    let second = find3(d, |i, j, l| {
        (p(i, j, l) != p(inv[j], inv[i], inv[l])).then(|| {
            format!(
                "p[{i}][{j}][{l}]={} vs p[{}][{}][{}]={}",
                p(i, j, l),
                inv[j],
                inv[i],
                inv[l],
                p(inv[j], inv[i], inv[l])
            )
        })
    });

    let third = find3(d, |i, l, _| {
        let sum: i64 = (0..d).map(|j| p(i, j, l)).sum();
        (sum != w[i]).then(|| format!("sum_j p[{i}][j][{l}]={sum} but ω_{i}={}", w[i]))
    });

    let fourth = find3(d, |i, j, l| {
        if w[l] * p(i, j, l) != w[i] * p(l, inv[j], i) {
            return Some(format!("ω_{l} p[{i}][{j}][{l}] != ω_{i} p[{l}][{}][{i}]", inv[j]));
        }
        (w[inv[j]] * p(inv[i], l, j) != w[inv[l]] * p(i, j, l))
            .then(|| format!("ω_{} p[{}][{l}][{j}] != ω_{} p[{i}][{j}][{l}]", inv[j], inv[i], inv[l]))
    });

    let fifth = find3(d, |i, j, _| {
        let left: i64 = (0..d).map(|l| w[l] * p(i, j, l)).sum();
        if left != w[i] * w[j] {
            return Some(format!(
                "sum_l ω_l p[{i}][{j}][l]={left} but ω_{i} ω_{j}={}",
                w[i] * w[j]
            ));
        }
        let right: i64 = (0..d).map(|l| w[inv[l]] * p(i, j, l)).sum();
        (right != w[inv[i]] * w[inv[j]])
            .then(|| format!("sum_l ω_l̄ p[{i}][{j}][l]={right} but ω_ī ω_j̄={}", w[inv[i]] * w[inv[j]]))
    });

    let mut sixth = None;
    'outer: for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for m in 0..d {
                    let left: i64 = (0..d).map(|l| p(i, j, l) * p(l, k, m)).sum();
                    let right: i64 = (0..d).map(|l| p(j, k, l) * p(i, l, m)).sum();
                    if left != right {
                        sixth = Some(format!("(i,j,k,m)=({i},{j},{k},{m}): {left} != {right}"));
                        break 'outer;
                    }
                }
            }
        }
    }

    let modular = |i: usize| Rational64::new(w[i], w[inv[i]]);
    let seventh = find3(d, |i, j, k| {
        (p(i, j, k) > 0 && modular(k) != modular(i) * modular(j))
            .then(|| format!("p[{i}][{j}][{k}]>0 but Δ({k}) != Δ({i})Δ({j})"))
    });

    [first, second, third, fourth, fifth, sixth, seventh]
        .into_iter()
        .enumerate()
        .map(|(n, w)| Check::from_witness(format!("identity_{}", n + 1), w))
        .collect()
}

fn find3(d: usize, mut f: impl FnMut(usize, usize, usize) -> Option<String>) -> Option<String> {
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                if let Some(w) = f(a, b, c) {
                    return Some(w);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_pass_all_seven() {
        for (name, s) in fixtures::all_schemes() {
            let report = audit_multass(s.numbers());
            assert_eq!(report.checks.len(), 7);
            assert!(report.all_passed(), "{name}: {report:?}");
        }
    }

    #[test]
    fn pentagon_row_sum() {
        let s = fixtures::pentagon();
        let sum: i64 = (0..3).map(|j| s.intersection(1, j, 2)).sum();
        assert_eq!(sum, 2);
        assert_eq!(sum, s.valencies()[1]);
    }

    #[test]
    fn corrupted_tensor_fails_fifth_identity() {
        let s = fixtures::pentagon();
        let mut numbers = s.numbers().clone();
        let v = numbers.get(1, 1, 0);
        numbers.p.set(1, 1, 0, v + 1);
        let report = audit_multass(&numbers);
        let fifth = report.check("identity_5").unwrap();
        assert!(!fifth.passed);
        assert!(fifth.witness.is_some());
    }
}
