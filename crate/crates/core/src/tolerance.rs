//! Numerical tolerance policy.

use serde::{Deserialize, Serialize};

/// Default absolute equality tolerance (scaled by `max(1, magnitude)`).
pub const EPS: f64 = 1e-8;
/// Distance from an integer beyond which a value is not considered integral.
pub const INT_TOL: f64 = 1e-6;
/// Relative threshold on eigenvalues below which a direction is in the null space.
pub const NULL_REL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps: f64,
    pub int_tol: f64,
    pub null_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps: EPS,
            int_tol: INT_TOL,
            null_rel: NULL_REL,
        }
    }
}

impl Tolerance {
    pub fn with_eps(eps: f64) -> Self {
        Tolerance {
            eps,
            ..Tolerance::default()
        }
    }

    /// Tolerance for comparing quantities of the given magnitude.
    pub fn scaled(&self, magnitude: f64) -> f64 {
        self.eps * magnitude.abs().max(1.0)
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.scaled(a.abs().max(b.abs()))
    }

    /// Rounds `x` to the nearest integer if it lies within `int_tol` of it.
    pub fn snap(&self, x: f64) -> Option<i64> {
        let r = x.round();
        if (x - r).abs() <= self.int_tol {
            Some(r as i64)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapping() {
        let t = Tolerance::default();
        assert_eq!(t.snap(2.0000000001), Some(2));
        assert_eq!(t.snap(-0.9999999), Some(-1));
        assert_eq!(t.snap(0.5), None);
        assert_eq!(t.snap(1.00001), None);
    }

    #[test]
    fn scaled_comparison() {
        let t = Tolerance::default();
        assert!(t.close(1e6, 1e6 + 1e-3));
        assert!(!t.close(1.0, 1.0 + 1e-7));
    }
}
