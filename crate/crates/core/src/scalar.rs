//! Numeric types usable as convolution weights.
//!
//! Hypergroups built from association schemes carry exact rationals; those
//! coming from parameter families or from duals carry `f64`. Both go through
//! the same axiom checks via [`Weight`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

pub trait Weight:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    /// Whether values of this type compare exactly.
    const EXACT: bool;

    fn to_f64(&self) -> f64;

    fn from_f64(x: f64) -> Option<Self>;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// `|self| <= tol`, or `self == 0` for exact types.
    fn is_negligible(&self, tol: f64) -> bool;

    /// `self > tol`, or `self > 0` for exact types.
    fn is_positive(&self, tol: f64) -> bool;

    /// `self < -tol`, or `self < 0` for exact types.
    fn is_negative(&self, tol: f64) -> bool;

    /// JSON rendering: `"p/q"` strings for rationals, numbers for floats.
    fn to_json(&self) -> Value;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_negligible(tol)
    }
}

impl Weight for Rational64 {
    const EXACT: bool = true;

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn from_f64(x: f64) -> Option<Self> {
        Rational64::approximate_float(x)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational64::new(num, den)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn is_positive(&self, _tol: f64) -> bool {
        Signed::is_positive(self)
    }

    fn is_negative(&self, _tol: f64) -> bool {
        Signed::is_negative(self)
    }

    fn to_json(&self) -> Value {
        Value::String(format_ratio(self))
    }
}

impl Weight for f64 {
    const EXACT: bool = false;

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn is_positive(&self, tol: f64) -> bool {
        *self > tol
    }

    fn is_negative(&self, tol: f64) -> bool {
        *self < -tol
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
}

pub fn format_ratio(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"`, `"p"` or a decimal into a rational. Decimals are accepted
/// only when they are exactly representable with a small denominator.
pub fn parse_ratio(s: &str) -> Option<Rational64> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Rational64::new(p, q));
    }
    if let Ok(p) = s.parse::<i64>() {
        return Some(Rational64::from_integer(p));
    }
    let x: f64 = s.parse().ok()?;
    Rational64::approximate_float(x)
}

/// Formats a float with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trip() {
        for s in ["1/2", "-3/7", "5"] {
            let r = parse_ratio(s).unwrap();
            assert_eq!(format_ratio(&r), s);
        }
        assert_eq!(parse_ratio("0.25"), Some(Rational64::new(1, 4)));
        assert_eq!(parse_ratio("1/0"), None);
    }

    #[test]
    fn exact_and_float_comparisons() {
        let half = Rational64::new(1, 2);
        assert!(Weight::is_positive(&half, 1.0));
        assert!(!Weight::is_positive(&1e-13f64, 1e-12));
        assert!((1e-13f64).is_negligible(1e-12));
        assert!(!Rational64::new(1, 1_000_000_000_000).is_negligible(1.0));
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt17(-0.0), "0.0000000000000000e0");
    }
}
