use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mixed relative/absolute tolerance.
///
/// Two reals `a`, `b` are considered equal when
/// `|a - b| <= abs + rel * max(1, |a|, |b|)`; every numeric comparison in the
/// crate goes through this one rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if rel.is_finite() && abs.is_finite() && rel >= 0.0 && abs >= 0.0 {
            Ok(Tolerance { rel, abs })
        } else {
            Err(Error::BadTolerance { rel, abs })
        }
    }

    /// Allowed slack when comparing `a` against `b`.
    pub fn slack(&self, a: f64, b: f64) -> f64 {
        self.abs + self.rel * 1f64.max(a.abs()).max(b.abs())
    }

    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.slack(a, b)
    }

    /// `a <= b` up to tolerance.
    pub fn le(&self, a: f64, b: f64) -> bool {
        a <= b + self.slack(a, b)
    }

    /// `|a| <= tol`, i.e. `a` equals zero up to tolerance.
    pub fn is_zero(&self, a: f64) -> bool {
        self.eq(a, 0.0)
    }

    /// Same rule with every bound multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Tolerance {
        Tolerance {
            rel: self.rel * factor,
            abs: self.abs * factor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_values() {
        let t = Tolerance::default();
        assert_eq!(t.rel, 1e-9);
        assert_eq!(t.abs, 1e-12);
    }

    #[test]
    fn comparisons_scale_with_magnitude() {
        let t = Tolerance::default();
        assert!(t.eq(1e6, 1e6 + 1e-4));
        assert!(!t.eq(1.0, 1.0 + 1e-8));
        assert!(t.le(2.0, 1.0 + 1.0 + 1e-10));
        assert!(!t.le(2.0, 1.9));
        assert!(t.is_zero(5e-10));
        assert!(!t.is_zero(f64::NAN));
    }

    #[test]
    fn rejects_negative_or_nan() {
        assert!(Tolerance::new(-1.0, 0.0).is_err());
        assert!(Tolerance::new(0.0, f64::NAN).is_err());
        assert!(Tolerance::new(0.0, f64::INFINITY).is_err());
        assert!(Tolerance::new(0.0, 0.0).is_ok());
    }
}
