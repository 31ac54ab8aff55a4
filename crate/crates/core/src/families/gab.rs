//! The polynomial hypergroups `Γ(a, b)` on `ℕ₀`: distance structure of the
//! graph in which `a` copies of the complete graph `K_b` meet at every
//! vertex, tree-like. Formulas hold for real `a, b ≥ 2`.

use num_complex::Complex64;
use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GabFamily {
    a: f64,
    b: f64,
}

impl GabFamily {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a >= 2.0 && b >= 2.0) {
            return Err(Error::ParameterOutOfRange(format!(
                "Γ(a,b) needs a, b ≥ 2, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Integer parameters, if both are integral.
    pub fn integer_params(&self) -> Option<(usize, usize)> {
        (self.a.fract() == 0.0 && self.b.fract() == 0.0).then_some((self.a as usize, self.b as usize))
    }

    fn root(&self) -> f64 {
        ((self.a - 1.0) * (self.b - 1.0)).sqrt()
    }

    pub fn s0(&self) -> f64 {
        (2.0 - self.a - self.b) / (2.0 * self.root())
    }

    pub fn s1(&self) -> f64 {
        (self.a * self.b - self.a - self.b + 2.0) / (2.0 * self.root())
    }

    /// Coefficients of `δ_m * δ_n`, indexed `0..=m+n`.
    pub fn linearization(&self, m: usize, n: usize) -> Vec<f64> {
        let (a, b) = (self.a, self.b);
        let mut g = vec![0.0; m + n + 1];
        let min = m.min(n);
        if min == 0 {
            g[m + n] = 1.0;
            return g;
        }
        let low = m.abs_diff(n);
        let pow = |x: f64, e: usize| x.powi(e as i32);
        g[m + n] = (a - 1.0) / a;
        g[low] = 1.0 / (a * pow(a - 1.0, min - 1) * pow(b - 1.0, min));
        for k in 0..min {
            g[low + 2 * k + 1] += (b - 2.0) / (a * pow(a - 1.0, min - k - 1) * pow(b - 1.0, min - k));
        }
        for k in 0..min.saturating_sub(1) {
            g[low + 2 * k + 2] += (a - 2.0) / (a * pow(a - 1.0, min - k - 1) * pow(b - 1.0, min - k - 1));
        }
        g
    }

    /// `ω_0 = 1`, `ω_n = a (a−1)^{n−1} (b−1)^n`.
    pub fn haar(&self, n: usize) -> f64 {
        if n == 0 {
            1.0
        } else {
            self.a * (self.a - 1.0).powi(n as i32 - 1) * (self.b - 1.0).powi(n as i32)
        }
    }

    /// `P_1(x) = A x + B`.
    pub fn p1_coefficients(&self) -> (f64, f64) {
        let (a, b) = (self.a, self.b);
        (2.0 / a * ((a - 1.0) / (b - 1.0)).sqrt(), (b - 2.0) / (a * (b - 1.0)))
    }

    /// `P_0(x), …, P_{n_max}(x)` by the three-term recurrence.
    pub fn eval_all_complex(&self, n_max: usize, x: Complex64) -> Vec<Complex64> {
        let (a, b) = (self.a, self.b);
        let (slope, shift) = self.p1_coefficients();
        let p1 = x * slope + shift;
        let down = 1.0 / (a * (b - 1.0));
        let up = (a - 1.0) / a;
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(Complex64::new(1.0, 0.0));
        if n_max >= 1 {
            out.push(p1);
        }
        for n in 1..n_max {
            let next = (p1 * out[n] - out[n - 1] * down - out[n] * shift) / up;
            out.push(next);
        }
        out
    }

    pub fn eval_all(&self, n_max: usize, x: f64) -> Vec<f64> {
        let (a, b) = (self.a, self.b);
        let (slope, shift) = self.p1_coefficients();
        let p1 = slope * x + shift;
        let down = 1.0 / (a * (b - 1.0));
        let up = (a - 1.0) / a;
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(1.0);
        if n_max >= 1 {
            out.push(p1);
        }
        for n in 1..n_max {
            out.push((p1 * out[n] - down * out[n - 1] - shift * out[n]) / up);
        }
        out
    }

    /// `(P_k(x), P_k'(x))` for `k = 0..=n_max`.
    pub fn eval_all_with_derivative(&self, n_max: usize, x: f64) -> Vec<(f64, f64)> {
        let (a, b) = (self.a, self.b);
        let (slope, shift) = self.p1_coefficients();
        let p1 = slope * x + shift;
        let down = 1.0 / (a * (b - 1.0));
        let up = (a - 1.0) / a;
        let mut out = Vec::with_capacity(n_max + 1);
        out.push((1.0, 0.0));
        if n_max >= 1 {
            out.push((p1, slope));
        }
        for n in 1..n_max {
            let (p, dp) = out[n];
            let (q, dq) = out[n - 1];
            let next = (p1 * p - down * q - shift * p) / up;
            let dnext = (slope * p + p1 * dp - down * dq - shift * dp) / up;
            out.push((next, dnext));
        }
        out
    }

    pub fn eval(&self, n: usize, x: f64) -> f64 {
        self.eval_all(n, x)[n]
    }

    pub fn eval_complex(&self, n: usize, x: Complex64) -> Complex64 {
        self.eval_all_complex(n, x)[n]
    }

    /// `P_n((z + 1/z)/2) = (c(z) z^n + c(1/z) z^{−n}) / ((a−1)(b−1))^{n/2}`,
    /// undefined where `z ∈ {0, ±1}`, i.e. at `x = ±1`.
    pub fn closed_form(&self, n: usize, x: f64) -> Result<f64> {
        if (x * x - 1.0).abs() < 1e-12 {
            return Err(Error::ClosedFormSingular { x });
        }
        let xc = Complex64::new(x, 0.0);
        let z = xc + (xc * xc - 1.0).sqrt();
        let (a, b) = (self.a, self.b);
        let shift = (b - 2.0) * ((a - 1.0) / (b - 1.0)).sqrt();
        let c = |z: Complex64| ((a - 1.0) * z - z.inv() + shift) / (a * (z - z.inv()));
        let k = n as i32;
        let value = (c(z) * z.powi(k) + c(z.inv()) * z.powi(-k)) / self.root().powi(k);
        Ok(value.re)
    }

    fn root_precise(&self) -> TwoFloat {
        (TwoFloat::from(self.a - 1.0) * (self.b - 1.0)).sqrt()
    }

    /// `s_0` in double-double precision.
    pub fn s0_precise(&self) -> TwoFloat {
        div(TwoFloat::from(2.0 - self.a - self.b), self.root_precise() * 2.0)
    }

    /// `s_1` in double-double precision.
    pub fn s1_precise(&self) -> TwoFloat {
        div(
            TwoFloat::from(self.a * self.b) - self.a - self.b + 2.0,
            self.root_precise() * 2.0,
        )
    }

    /// Recurrence in double-double arithmetic. Forward evaluation loses
    /// accuracy where `P_n(x)` is the decaying solution (near `s_0` for
    /// `b > a`); the extra precision keeps it for moderate `n`.
    pub fn eval_precise(&self, n: usize, x: TwoFloat) -> TwoFloat {
        let (a, b) = (TwoFloat::from(self.a), TwoFloat::from(self.b));
        let one = TwoFloat::from(1.0);
        let slope = div(div(a - 1.0, b - 1.0).sqrt() * 2.0, a);
        let shift = div(b - 2.0, a * (b - 1.0));
        let down = div(one, a * (b - 1.0));
        let up = div(a - 1.0, a);
        let p1 = slope * x + shift;
        let (mut prev, mut cur) = (one, p1);
        if n == 0 {
            return one;
        }
        for _ in 1..n {
            let next = div(p1 * cur - down * prev - shift * cur, up);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `[−s_1, s_1]`, the set where `(P_n(x))_n` stays bounded.
    pub fn dual_interval(&self) -> (f64, f64) {
        (-self.s1(), self.s1())
    }
}

/// Double-double quotient with one correction step; plain `TwoFloat`
/// division is only accurate to about `f64` precision.
fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q = a / b;
    q + (a - q * b) / b.hi()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_range() {
        assert!(matches!(GabFamily::new(1.5, 3.0), Err(Error::ParameterOutOfRange(_))));
        assert!(GabFamily::new(2.0, 2.0).is_ok());
    }

    /// a = b = 3: s0 = −4/4 = −1, s1 = 5/4.
    #[test]
    fn endpoints() {
        let f = GabFamily::new(3.0, 3.0).unwrap();
        assert!((f.s0() + 1.0).abs() < 1e-15);
        assert!((f.s1() - 1.25).abs() < 1e-15);
        let f = GabFamily::new(2.0, 4.0).unwrap();
        assert!((f.s0() + 4.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn small_linearizations() {
        let f = GabFamily::new(3.0, 3.0).unwrap();
        let g = f.linearization(1, 1);
        let want = [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0];
        for (x, y) in g.iter().zip(want) {
            assert!((x - y).abs() < 1e-15);
        }
        let tree_like = GabFamily::new(2.0, 2.0).unwrap();
        for m in 1..6 {
            for n in 1..6 {
                let g = tree_like.linearization(m, n);
                for (k, v) in g.iter().enumerate() {
                    let want = if k == m + n || k == m.abs_diff(n) { 0.5 } else { 0.0 };
                    assert!((v - want).abs() < 1e-15, "{m} {n} {k}");
                }
            }
        }
        assert_eq!(f.linearization(0, 4), vec![0.0, 0.0, 0.0, 0.0, 1.0]);
        // direct path count on the graph: 1/24, 1/24, 1/12, 1/6, 2/3
        let g = f.linearization(2, 2);
        let want = [1.0 / 24.0, 1.0 / 24.0, 1.0 / 12.0, 1.0 / 6.0, 2.0 / 3.0];
        for (x, y) in g.iter().zip(want) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn haar_values() {
        let f = GabFamily::new(3.0, 3.0).unwrap();
        assert_eq!(f.haar(0), 1.0);
        assert_eq!(f.haar(2), 24.0);
        let f = GabFamily::new(2.0, 2.0).unwrap();
        assert!((1..10).all(|n| f.haar(n) == 2.0));
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let f = GabFamily::new(3.0, 5.0).unwrap();
        let h = 1e-6;
        for (k, (_, d)) in f.eval_all_with_derivative(8, 0.3).into_iter().enumerate() {
            let fd = (f.eval(k, 0.3 + h) - f.eval(k, 0.3 - h)) / (2.0 * h);
            assert!((d - fd).abs() < 1e-7);
        }
    }

    #[test]
    fn decaying_endpoint_solution() {
        let f = GabFamily::new(2.0, 10.0).unwrap();
        for n in 0..=20 {
            let want = 9f64.powi(-(n as i32)) * if n % 2 == 0 { 1.0 } else { -1.0 };
            let got: f64 = f.eval_precise(n, f.s0_precise()).into();
            assert!((got - want).abs() <= 1e-12 * want.abs(), "{n}: {got} vs {want}");
        }
    }

    #[test]
    fn closed_form_singularity() {
        let f = GabFamily::new(3.0, 3.0).unwrap();
        assert!(matches!(f.closed_form(3, 1.0), Err(Error::ClosedFormSingular { .. })));
        assert!((f.closed_form(3, 0.3).unwrap() - f.eval(3, 0.3)).abs() < 1e-12);
    }
}
