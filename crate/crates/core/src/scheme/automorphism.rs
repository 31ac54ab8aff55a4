use super::Scheme;
use crate::error::{Error, Result};

fn check_bijection(map: &[usize], size: usize, what: &str) -> Result<()> {
    if map.len() != size {
        return Err(Error::NotBijective(format!(
            "{what} has {} entries, expected {size}",
            map.len()
        )));
    }
    let mut hit = vec![false; size];
    for &v in map {
        if v >= size || hit[v] {
            return Err(Error::NotBijective(format!("{what} is not a permutation")));
        }
        hit[v] = true;
    }
    Ok(())
}

/// Whether `(x, y) ∈ R_i ⟹ (φ(x), φ(y)) ∈ R_{ψ(i)}` for all pairs.
pub fn check_automorphism(s: &Scheme, phi: &[usize], psi: &[usize]) -> Result<bool> {
    check_bijection(phi, s.num_points(), "phi")?;
    check_bijection(psi, s.num_classes(), "psi")?;
    let n = s.num_points();
    Ok((0..n).all(|x| (0..n).all(|y| s.relation_of(phi[x], phi[y]) == psi[s.relation_of(x, y)])))
}

/// Checks `phi` paired with the involution of `s`. An automorphism of this
/// form forces the scheme to be commutative; that is re-checked on success.
pub fn commutativity_by_involution_automorphism(s: &Scheme, phi: &[usize]) -> Result<bool> {
    let holds = check_automorphism(s, phi, s.involution())?;
    if holds && !s.is_commutative() {
        return Err(Error::AxiomViolation {
            axiom: "commutativity criterion".into(),
            witness: "involution automorphism exists but p is not symmetric in (i,j)".into(),
        });
    }
    Ok(holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn negation_on_cyclic_four() {
        let s = fixtures::cyclic_scheme(4);
        let neg: Vec<usize> = (0..4).map(|x| (4 - x) % 4).collect();
        assert!(check_automorphism(&s, &neg, &neg).unwrap());
        assert!(commutativity_by_involution_automorphism(&s, &neg).unwrap());
    }

    #[test]
    fn pentagon_rotation_and_bad_swap() {
        let s = fixtures::pentagon();
        let rot: Vec<usize> = (0..5).map(|x| (x + 1) % 5).collect();
        assert!(check_automorphism(&s, &rot, &[0, 1, 2]).unwrap());
        let swap = vec![1, 0, 2, 3, 4];
        assert!(!check_automorphism(&s, &swap, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn non_bijective_maps() {
        let s = fixtures::pentagon();
        let err = check_automorphism(&s, &[0, 0, 1, 2, 3], &[0, 1, 2]).unwrap_err();
        assert!(matches!(err, Error::NotBijective(_)));
        let err = check_automorphism(&s, &[0, 1, 2, 3, 4], &[0, 1]).unwrap_err();
        assert!(matches!(err, Error::NotBijective(_)));
    }
}
