//! The discrete cosh-hypergroup on `ℕ₀`, a deformation of the distance
//! structure of `ℤ` by a drift `p = e^r/(e^r + e^{−r})`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generalized::{GeneralizedScheme, Partition, Window};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoshFamily {
    r: f64,
}

/// Value of a character together with whether `λ` lies in the bounded set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoshCharacter {
    pub value: Complex64,
    pub bounded: bool,
}

impl CoshFamily {
    pub fn new(r: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::ParameterOutOfRange(format!("cosh family needs r > 0, got {r}")));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn p(&self) -> f64 {
        1.0 / (1.0 + (-2.0 * self.r).exp())
    }

    /// `δ_k * δ_l` as `[(k + l, w₊), (|k − l|, w₋)]`; a single entry when
    /// `k` or `l` vanishes.
    pub fn convolution(&self, k: usize, l: usize) -> Vec<(usize, f64)> {
        if k == 0 || l == 0 {
            return vec![(k + l, 1.0)];
        }
        let r = self.r;
        let (kf, lf) = (k as f64, l as f64);
        // cosh(a)/(2cosh(b)cosh(c)) with the common exponential factored out
        let ratio = |a: f64| {
            let num = (a - (kf + lf) * r).exp() + (-a - (kf + lf) * r).exp();
            let den = (1.0 + (-2.0 * kf * r).exp()) * (1.0 + (-2.0 * lf * r).exp());
            num / den
        };
        vec![(k + l, ratio((kf + lf) * r)), (k.abs_diff(l), ratio((kf - lf) * r))]
    }

    /// Dense coefficients of `δ_k * δ_l` over `0..=k+l`.
    pub fn convolution_dense(&self, k: usize, l: usize) -> Vec<f64> {
        let mut out = vec![0.0; k + l + 1];
        for (m, w) in self.convolution(k, l) {
            out[m] += w;
        }
        out
    }

    /// `ω_0 = 1`, `ω_k = 2 cosh²(kr)`.
    pub fn haar(&self, k: usize) -> f64 {
        if k == 0 {
            1.0
        } else {
            2.0 * (k as f64 * self.r).cosh().powi(2)
        }
    }

    /// Whether `λ ∈ [0, π] ∪ i[0, r] ∪ (π + i[0, r])`.
    pub fn in_dual(&self, lambda: Complex64) -> bool {
        let eps = 1e-12;
        let (re, im) = (lambda.re, lambda.im);
        let real_segment = im.abs() <= eps && (-eps..=PI + eps).contains(&re);
        let vertical = (-eps..=self.r + eps).contains(&im) && (re.abs() <= eps || (re - PI).abs() <= eps);
        real_segment || vertical
    }

    /// `α_λ(n) = cos(λn)/cosh(rn)`.
    pub fn character_value(&self, lambda: Complex64, n: usize) -> Complex64 {
        let nf = n as f64;
        (lambda * nf).cos() / (self.r * nf).cosh()
    }

    /// Same as [`Self::character_value`], rejecting `λ` outside the dual.
    pub fn character(&self, lambda: Complex64, n: usize) -> Result<CoshCharacter> {
        let value = self.character_value(lambda, n);
        if !self.in_dual(lambda) {
            return Err(Error::ParameterOutOfRange(format!(
                "λ = {lambda} gives an unbounded character (α({n}) = {value})"
            )));
        }
        Ok(CoshCharacter { value, bounded: true })
    }

    /// Largest `|α(k)α(l) − Σ_m c_m α(m)|` over `k, l ≤ n_max`.
    pub fn multiplicativity_residual(&self, lambda: Complex64, n_max: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..=n_max {
            for l in 0..=n_max {
                let lhs = self.character_value(lambda, k) * self.character_value(lambda, l);
                let rhs: Complex64 = self
                    .convolution(k, l)
                    .into_iter()
                    .map(|(m, w)| self.character_value(lambda, m) * w)
                    .sum();
                worst = worst.max((lhs - rhs).norm());
            }
        }
        worst
    }

    /// `S̃_k` on the window `{−m, …, m}`.
    pub fn window_matrix(&self, m: usize, k: usize) -> DMatrix<f64> {
        let n = 2 * m + 1;
        if k == 0 {
            return DMatrix::identity(n, n);
        }
        let p = self.p();
        let (fwd, bwd) = (p.powi(k as i32), (1.0 - p).powi(k as i32));
        let total = fwd + bwd;
        DMatrix::from_fn(n, n, |x, y| {
            if y == x + k {
                fwd / total
            } else if x == y + k {
                bwd / total
            } else {
                0.0
            }
        })
    }

    /// Generalized scheme on `X = {−m, …, m}` with classes `|x − y| = k`,
    /// `k = 0..=2m`, and vertex weight `e^{2rx}`.
    pub fn window_scheme(&self, m: usize) -> Result<GeneralizedScheme> {
        if m == 0 {
            return Err(Error::ParameterOutOfRange(
                "window half-width must be at least 1".into(),
            ));
        }
        let n = 2 * m + 1;
        let d = 2 * m + 1;
        let coord = |x: usize| x as i64 - m as i64;
        let points = (0..n).map(|x| coord(x).to_string()).collect();
        let classes = (0..d).map(|k| k.to_string()).collect();
        let relation = (0..n * n).map(|i| (i / n).abs_diff(i % n)).collect();
        let partition = Partition::new(points, classes, relation)?;
        let stoch = (0..d).map(|k| self.window_matrix(m, k)).collect();
        let vertex_weight = (0..n).map(|x| (2.0 * self.r * coord(x) as f64).exp()).collect();
        let window = Window {
            depth: (0..n).map(|x| m - coord(x).unsigned_abs() as usize).collect(),
            reach: (0..d).collect(),
        };
        GeneralizedScheme::build_windowed(partition, stoch, vertex_weight, m, window)?
            .with_haar((0..d).map(|k| self.haar(k)).collect())
    }

    /// `½ ∫ cos(trn) / cosh((t + λ/r)π/2) dt` by the trapezoid rule on
    /// `[−cutoff, cutoff]`, compared against the same rule on twice the cutoff.
    pub fn connection_quadrature(&self, lambda: f64, n: usize, step: f64, cutoff: f64) -> Result<f64> {
        if !(step > 0.0 && cutoff > 0.0 && step.is_finite() && cutoff.is_finite()) {
            return Err(Error::ParameterOutOfRange("step and cutoff must be positive".into()));
        }
        let value = self.trapezoid(lambda, n, step, cutoff);
        let doubled = self.trapezoid(lambda, n, step, 2.0 * cutoff);
        let change = (doubled - value).abs();
        if change > 1e-8 {
            return Err(Error::QuadratureNotConverged { change });
        }
        Ok(doubled)
    }

    fn trapezoid(&self, lambda: f64, n: usize, step: f64, cutoff: f64) -> f64 {
        let shift = lambda / self.r;
        let steps = (cutoff / step).ceil() as i64;
        let h = cutoff / steps as f64;
        let f = |t: f64| (t * self.r * n as f64).cos() * connection_weight(t, shift);
        let mut sum = 0.5 * (f(-cutoff) + f(cutoff));
        for i in (1 - steps)..steps {
            sum += f(i as f64 * h);
        }
        0.5 * sum * h
    }

    /// `1/cosh((t + λ/r)π/2)` at the trapezoid nodes; all must be positive.
    pub fn connection_weights(&self, lambda: f64, step: f64, cutoff: f64) -> Vec<f64> {
        let steps = (cutoff / step).ceil() as i64;
        let h = cutoff / steps as f64;
        (-steps..=steps)
            .map(|i| connection_weight(i as f64 * h, lambda / self.r))
            .collect()
    }
}

/// Largest residuals of a windowed cosh scheme against the closed forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoshWindowAudit {
    pub r: f64,
    pub window: usize,
    pub stochastic: f64,
    pub detailed_balance: f64,
    pub invariance: f64,
    pub closure: f64,
    pub interior_fraction: f64,
    /// Against `δ_k * δ_l` for `k + l ≤ window`.
    pub convolution: f64,
    pub multiplicativity: f64,
    pub quadrature: f64,
    pub passed: bool,
}

pub const AUDIT_LAMBDAS: [f64; 5] = [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI];

impl CoshFamily {
    /// Builds the window scheme and compares it with the closed forms:
    /// axioms to `1e-10`, deformed coefficients and multiplicativity to
    /// `1e-12`, the integral representation at `λ ∈ {0, π/2}`, `n ≤ 5` to `1e-8`.
    pub fn window_audit(&self, m: usize) -> Result<CoshWindowAudit> {
        let g = self.window_scheme(m)?;
        let audit = g.audit();
        let mut convolution: f64 = 0.0;
        for k in 0..=m {
            for l in 0..=m - k {
                let row = g
                    .deformed()
                    .row(k, l)
                    .ok_or_else(|| Error::IncompleteWindow(format!("coefficients of ({k}, {l})")))?;
                let want = self.convolution_dense(k, l);
                for (i, v) in row.iter().enumerate() {
                    convolution = convolution.max((v - want.get(i).copied().unwrap_or(0.0)).abs());
                }
            }
        }
        let multiplicativity = AUDIT_LAMBDAS
            .iter()
            .map(|&lam| self.multiplicativity_residual(Complex64::new(lam, 0.0), m))
            .fold(0.0, f64::max);
        let mut quadrature: f64 = 0.0;
        for lam in [0.0, PI / 2.0] {
            for n in 0..=5 {
                let q = self.connection_quadrature(lam, n, 0.01, 40.0)?;
                quadrature = quadrature.max((q - self.character_value(Complex64::new(lam, 0.0), n).re).abs());
            }
        }
        let axioms = [
            audit.stochastic,
            audit.detailed_balance,
            audit.invariance,
            audit.closure,
        ];
        let passed = axioms.iter().all(|&v| v <= 1e-10)
            && convolution <= 1e-12
            && multiplicativity <= 1e-12
            && quadrature <= 1e-8;
        Ok(CoshWindowAudit {
            r: self.r,
            window: m,
            stochastic: audit.stochastic,
            detailed_balance: audit.detailed_balance,
            invariance: audit.invariance,
            closure: audit.closure,
            interior_fraction: audit.interior_fraction,
            convolution,
            multiplicativity,
            quadrature,
            passed,
        })
    }
}

fn connection_weight(t: f64, shift: f64) -> f64 {
    let u = (t + shift) * PI / 2.0;
    // 1/cosh(u) = 2e^{−|u|}/(1 + e^{−2|u|}) without overflow
    let e = (-u.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generalized::window_characters;

    #[test]
    fn drift_and_range() {
        assert!(CoshFamily::new(0.0).is_err());
        for r in [0.1, 1.0, 5.0] {
            let p = CoshFamily::new(r).unwrap().p();
            assert!(p > 0.5 && p < 1.0);
        }
    }

    #[test]
    fn convolution_sums_to_one() {
        for r in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let f = CoshFamily::new(r).unwrap();
            for k in 0..10 {
                for l in 0..10 {
                    let s: f64 = f.convolution(k, l).iter().map(|p| p.1).sum();
                    assert!((s - 1.0).abs() < 1e-14);
                }
            }
            let c = f.convolution(1, 1);
            assert!(c[0].1 > 0.5 && c[0].1 < 1.0);
            assert!((c[1].1 - 1.0 / (2.0 * r.cosh().powi(2))).abs() < 1e-15);
            assert_eq!(f.convolution(3, 0), vec![(3, 1.0)]);
        }
    }

    #[test]
    fn haar_matches_convolution() {
        let f = CoshFamily::new(0.7).unwrap();
        for k in 1..8 {
            let back = f.convolution_dense(k, k)[0];
            assert!((f.haar(k) * back - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn characters() {
        let f = CoshFamily::new(1.0).unwrap();
        let one = f.character(Complex64::new(0.0, 1.0), 4).unwrap().value;
        assert!((one - 1.0).norm() < 1e-14);
        let zero = f.character(Complex64::new(0.0, 0.0), 3).unwrap().value;
        assert!((zero.re - 1.0 / 3f64.cosh()).abs() < 1e-15);
        assert!(matches!(
            f.character(Complex64::new(1.0, 0.5), 2),
            Err(Error::ParameterOutOfRange(_))
        ));
        for lam in [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI] {
            assert!(f.multiplicativity_residual(Complex64::new(lam, 0.0), 8) < 1e-12);
        }
        assert!(f.multiplicativity_residual(Complex64::new(PI, 0.6), 8) < 1e-12);
    }

    #[test]
    fn window_deformation_matches_closed_form() {
        for r in [0.5, 1.0, 2.0] {
            let f = CoshFamily::new(r).unwrap();
            let g = f.window_scheme(5).unwrap();
            assert!(g.audit().detailed_balance < 1e-12);
            for k in 0..=5 {
                for l in 0..=5 - k {
                    let row = g.deformed().row(k, l).expect("determined");
                    let want = f.convolution_dense(k, l);
                    for (i, v) in row.iter().enumerate() {
                        let w = want.get(i).copied().unwrap_or(0.0);
                        assert!((v - w).abs() < 1e-12, "r={r} {k} {l} {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn window_characters_are_cosine_characters() {
        let f = CoshFamily::new(1.0).unwrap();
        let m = 6;
        let g = f.window_scheme(m).unwrap();
        let wc = window_characters(&g, 1).unwrap();
        assert_eq!(wc.classes, m);
        for (j, values) in wc.values.iter().enumerate() {
            let lam = (2 * j + 1) as f64 * PI / (2 * m) as f64;
            for (n, v) in values.iter().enumerate() {
                assert!((v - f.character_value(Complex64::new(lam, 0.0), n).re).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn audits_pass() {
        for r in [0.5, 1.0, 2.0] {
            let a = CoshFamily::new(r).unwrap().window_audit(8).unwrap();
            assert!(a.passed, "{a:?}");
        }
    }

    #[test]
    fn quadrature() {
        let f = CoshFamily::new(1.0).unwrap();
        assert!((f.connection_quadrature(0.0, 0, 0.01, 30.0).unwrap() - 1.0).abs() < 1e-8);
        assert!(f.connection_quadrature(PI / 2.0, 3, 0.01, 30.0).unwrap().abs() < 1e-8);
        assert!(matches!(
            f.connection_quadrature(0.0, 0, 0.01, 1.0),
            Err(Error::QuadratureNotConverged { .. })
        ));
        assert!(f.connection_weights(2.0, 0.1, 20.0).iter().all(|&w| w > 0.0));
    }
}
