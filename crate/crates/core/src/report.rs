//! Outcome of checking one inequality `lhs >= rhs`.

use alloc::string::String;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub inequality_id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`.
    pub slack: f64,
    /// `slack >= -tolerance`.
    pub pass: bool,
    /// `rhs <= 0`, so the check holds for any nonnegative `lhs`.
    pub trivially_satisfied: bool,
    /// The `lhs` rests on best-found suprema.
    pub heuristic: bool,
    pub witness: String,
}

impl BoundReport {
    pub fn new(id: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = lhs - rhs;
        Self {
            inequality_id: id.into(),
            lhs,
            rhs,
            slack,
            pass: slack >= -tolerance,
            trivially_satisfied: rhs <= 0.0,
            heuristic: false,
            witness: String::new(),
        }
    }

    /// Identity check `|observed error| <= tolerance`, encoded as `tolerance >= error`.
    pub fn identity(id: impl Into<String>, error: f64, tolerance: f64) -> Self {
        let mut r = Self::new(id, tolerance, error, 0.0);
        r.trivially_satisfied = false;
        r
    }

    pub fn heuristic(mut self, heuristic: bool) -> Self {
        self.heuristic = heuristic;
        self
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = witness.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_and_trivial_flags() {
        let r = BoundReport::new("lemma1", 0.5, 0.5 + 1e-7, 1e-6);
        assert!(r.pass && !r.trivially_satisfied);
        let r = BoundReport::new("lemma2", 0.1, -0.3, 1e-10);
        assert!(r.pass && r.trivially_satisfied);
        assert!((r.slack - 0.4).abs() < 1e-15);
        assert!(!BoundReport::new("x", 0.0, 1.0, 1e-6).pass);
        let id = BoundReport::identity("johansen", 3e-11, 1e-10);
        assert!(id.pass);
        assert!(!BoundReport::identity("johansen", 3e-10, 1e-10).pass);
        assert!(!BoundReport::identity("johansen", f64::NAN, 1e-10).pass);
    }
}
