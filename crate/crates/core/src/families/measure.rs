//! Orthogonality measure of the `Γ(a, b)` polynomials: a density on
//! `[−1, 1]` plus, when `b > a`, an atom at `s_0`.

use std::f64::consts::PI;

use serde::Serialize;

use super::GabFamily;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthogonalityMeasure {
    family: GabFamily,
    atom: Option<(f64, f64)>,
    tol: f64,
}

impl OrthogonalityMeasure {
    pub fn new(family: GabFamily) -> Self {
        let (a, b) = (family.a(), family.b());
        let atom = (b > a).then(|| (family.s0(), (b - a) / b));
        Self {
            family,
            atom,
            tol: 1e-13,
        }
    }

    /// `(location, mass)` of the point mass, if any.
    pub fn atom(&self) -> Option<(f64, f64)> {
        self.atom
    }

    /// Density in the variable `θ` with `x = cos θ`, the Jacobian included.
    /// Written through half-angles so it stays accurate where `s_0 = −1`
    /// or `s_1 = 1` cancels a zero of `sin θ`.
    pub fn angular_density(&self, theta: f64) -> f64 {
        let (s0, s1) = (self.family.s0(), self.family.s1());
        let (sh, ch) = (theta / 2.0).sin_cos();
        let (sh2, ch2) = (sh * sh, ch * ch);
        // s1 − cos θ = 2 sin²(θ/2) + (s1 − 1),  cos θ − s0 = 2 cos²(θ/2) − (1 + s0)
        let right = 2.0 * sh2 + (s1 - 1.0);
        let left = 2.0 * ch2 - (1.0 + s0);
        let a = self.family.a();
        a / (2.0 * PI) * (4.0 * sh2 * ch2) / (right * left)
    }

    /// `∫ f dρ`, adaptive Gauss–Kronrod on the continuous part plus the atom.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let g = |t: f64| f(t.cos()) * self.angular_density(t);
        let cont = adaptive_gk(&g, 0.0, PI, self.tol, 40);
        cont + self.atom.map_or(0.0, |(z, m)| m * f(z))
    }

    pub fn total_mass(&self) -> f64 {
        self.integrate(|_| 1.0)
    }

    /// `∫ P_m P_n dρ`.
    pub fn inner_product(&self, m: usize, n: usize) -> f64 {
        let top = m.max(n);
        self.integrate(|x| {
            let p = self.family.eval_all(top, x);
            p[m] * p[n]
        })
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let pair = f(c - h * XGK[j]) + f(c + h * XGK[j]);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod (7, 15) by recursive bisection.
pub(crate) fn adaptive_gk(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64, depth: usize) -> f64 {
    let (value, err) = gk15(f, lo, hi);
    if err <= tol.max(1e-15 * value.abs()) || depth == 0 {
        return value;
    }
    let mid = 0.5 * (lo + hi);
    adaptive_gk(f, lo, mid, tol / 2.0, depth - 1) + adaptive_gk(f, mid, hi, tol / 2.0, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, SymmetricEigen};

    /// Gauss rule from the Jacobi matrix of the recurrence, independent of
    /// the density formula.
    fn golub_welsch(f: &GabFamily, n: usize) -> (Vec<f64>, Vec<f64>) {
        let (a, b) = (f.a(), f.b());
        let (slope, shift) = f.p1_coefficients();
        let c = 1.0 / (a * (b - 1.0));
        let up = (a - 1.0) / a;
        let j = DMatrix::from_fn(n, n, |r, s| {
            if r == s {
                if r == 0 {
                    -shift / slope
                } else {
                    0.0
                }
            } else if r.abs_diff(s) == 1 {
                let k = r.min(s);
                let forward = if k == 0 { 1.0 / slope } else { up / slope };
                (forward * c / slope).sqrt()
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(j);
        let weights = (0..n).map(|i| eig.eigenvectors[(0, i)].powi(2)).collect();
        (eig.eigenvalues.iter().copied().collect(), weights)
    }

    #[test]
    fn total_mass_is_one() {
        for (a, b) in [(2.0, 2.0), (3.0, 3.0), (5.0, 3.0), (2.0, 4.0), (2.5, 5.0), (10.0, 2.0)] {
            let m = OrthogonalityMeasure::new(GabFamily::new(a, b).unwrap());
            assert!((m.total_mass() - 1.0).abs() < 1e-8, "{a} {b}: {}", m.total_mass());
        }
    }

    #[test]
    fn atom_only_when_b_exceeds_a() {
        assert!(OrthogonalityMeasure::new(GabFamily::new(3.0, 3.0).unwrap())
            .atom()
            .is_none());
        let (z, mass) = OrthogonalityMeasure::new(GabFamily::new(2.0, 4.0).unwrap())
            .atom()
            .unwrap();
        assert!((z + 4.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(mass, 0.5);
    }

    #[test]
    fn agrees_with_gauss_rule_oracle() {
        for (a, b) in [(3.0, 3.0), (2.0, 4.0), (5.0, 2.5)] {
            let fam = GabFamily::new(a, b).unwrap();
            let m = OrthogonalityMeasure::new(fam);
            let (nodes, weights) = golub_welsch(&fam, 40);
            for n in 0..=12 {
                let oracle: f64 = nodes
                    .iter()
                    .zip(&weights)
                    .map(|(&x, w)| w * fam.eval(n, x).powi(2))
                    .sum();
                let quad = m.inner_product(n, n);
                assert!(
                    (oracle - quad).abs() < 1e-9 * oracle.abs().max(1e-300) + 1e-14,
                    "{a} {b} {n}"
                );
                assert!(
                    (fam.haar(n) * oracle - 1.0).abs() < 1e-9,
                    "{a} {b} {n}: {}",
                    fam.haar(n) * oracle
                );
            }
        }
    }

    #[test]
    fn orthogonality() {
        let fam = GabFamily::new(3.0, 3.0).unwrap();
        let m = OrthogonalityMeasure::new(fam);
        assert!(m.inner_product(1, 0).abs() < 1e-12);
        for i in 0..=12 {
            for j in 0..i {
                assert!(m.inner_product(i, j).abs() < 1e-7);
            }
        }
    }
}
