use super::{identity_candidates, FiniteHypergroup};
use crate::report::{AuditReport, Check};
use crate::scalar::Weight;
use crate::tolerance;

/// Checks the hypergroup axioms with the default float tolerance.
pub fn verify_hypergroup<T: Weight>(h: &FiniteHypergroup<T>) -> AuditReport {
    verify_hypergroup_with_tol(h, tolerance::HYPERGROUP)
}

/// Checks, in order: probability rows, identity, support of the identity,
/// associativity, the involution law, Haar weights and involutivity.
/// Rational tensors are compared exactly; `tol` applies to floats only.
pub fn verify_hypergroup_with_tol<T: Weight>(h: &FiniteHypergroup<T>, tol: f64) -> AuditReport {
    let d = h.num_classes();
    let e = h.identity();
    let inv = h.involution();
    let c = |i: usize, j: usize, k: usize| h.c(i, j, k);
    let label = |i: usize| h.classes()[i].as_str();
    let mut checks = Vec::new();

    let mut probability = None;
    'prob: for i in 0..d {
        for j in 0..d {
            let row = h.conv().row(i, j);
            if let Some(k) = row.iter().position(|v| v.is_negative(tol)) {
                probability = Some(format!(
                    "c[{}][{}][{}] = {:?} < 0",
                    label(i),
                    label(j),
                    label(k),
                    row[k]
                ));
                break 'prob;
            }
            let sum = row.iter().fold(T::zero(), |acc, v| acc + v.clone());
            if !sum.approx_eq(&T::one(), tol) {
                probability = Some(format!("c[{}][{}][·] sums to {:?}", label(i), label(j), sum));
                break 'prob;
            }
        }
    }
    checks.push(Check::from_witness("probability", probability));

    let candidates = identity_candidates(h.conv(), tol);
    let identity = match candidates.as_slice() {
        [x] if *x == e => None,
        [x] => Some(format!("identity acts at {} but {} is stored", label(*x), label(e))),
        [] => Some(format!("{} is not a two-sided identity", label(e))),
        many => Some(format!(
            "identity is not unique: {:?}",
            many.iter().map(|&x| label(x)).collect::<Vec<_>>()
        )),
    };
    checks.push(Check::from_witness("identity", identity));

    let mut support = None;
    'supp: for i in 0..d {
        for j in 0..d {
            let reaches = c(i, j, e).is_positive(tol);
            if reaches != (j == inv[i]) {
                support = Some(format!(
                    "c[{}][{}][e] = {:?} with involution({}) = {}",
                    label(i),
                    label(j),
                    c(i, j, e),
                    label(i),
                    label(inv[i])
                ));
                break 'supp;
            }
        }
    }
    checks.push(Check::from_witness("support", support));

    let mut assoc = None;
    'assoc: for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for m in 0..d {
                    let left = (0..d).fold(T::zero(), |acc, l| acc + c(i, j, l).clone() * c(l, k, m).clone());
                    let right = (0..d).fold(T::zero(), |acc, l| acc + c(j, k, l).clone() * c(i, l, m).clone());
                    if !left.approx_eq(&right, tol) {
                        assoc = Some(format!(
                            "(i,j,k,m) = ({},{},{},{}): {:?} != {:?}",
                            label(i),
                            label(j),
                            label(k),
                            label(m),
                            left,
                            right
                        ));
                        break 'assoc;
                    }
                }
            }
        }
    }
    checks.push(Check::from_witness("associativity", assoc));

    let mut involution_law = None;
    'inv: for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if !c(i, j, inv[k]).approx_eq(c(inv[j], inv[i], k), tol) {
                    involution_law = Some(format!(
                        "c[{}][{}][{}] != c[{}][{}][{}]",
                        label(i),
                        label(j),
                        label(inv[k]),
                        label(inv[j]),
                        label(inv[i]),
                        label(k)
                    ));
                    break 'inv;
                }
            }
        }
    }
    checks.push(Check::from_witness("involution_law", involution_law));

    let haar = (0..d).find_map(|i| {
        let w = &h.haar()[i];
        let back = c(inv[i], i, e);
        let ok = w.is_positive(tol) && (w.clone() * back.clone()).approx_eq(&T::one(), tol);
        (!ok).then(|| format!("ω_{} = {:?} but c[ī][i][e] = {:?}", label(i), w, back))
    });
    checks.push(Check::from_witness("haar", haar));

    let involutive = (0..d)
        .find(|&i| inv[inv[i]] != i)
        .map(|i| format!("involution of {} is not involutive", label(i)))
        .or_else(|| (inv[e] != e).then(|| "identity is not self-adjoint".to_string()));
    checks.push(Check::from_witness("involutive", involutive));

    AuditReport { checks }
}
