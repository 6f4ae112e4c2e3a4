//! Vertex marks: pairs (w, d) of a positive weight and a dot count.
//!
//! The set of marks carries the *dot-sum* semigroup operation
//! `(w, d) ∔ (w', d') = (w + w', d + d' + 1)`, which is how marks combine
//! when an edge between two marked vertices is contracted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex mark `(w, d)` with `w >= d + 1`.
///
/// Plain weighted vertices are the `d = 0` case and unweighted vertices are
/// `(1, 0)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mark {
    w: u32,
    d: u32,
}

impl Mark {
    pub fn new(w: u32, d: u32) -> Result<Mark> {
        if w == 0 || w < d + 1 {
            return Err(Error::InvalidMark { w, d });
        }
        Ok(Mark { w, d })
    }

    /// A weight-only mark `(w, 0)`.
    pub fn weight(w: u32) -> Result<Mark> {
        Mark::new(w, 0)
    }

    /// The unweighted mark `(1, 0)`.
    pub const UNIT: Mark = Mark { w: 1, d: 0 };

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Dot-sum: `(w, d) ∔ (w', d') = (w + w', d + d' + 1)`.
    ///
    /// The result is always a valid mark.
    pub fn dot_sum(self, other: Mark) -> Mark {
        Mark {
            w: self.w + other.w,
            d: self.d + other.d + 1,
        }
    }

    /// Strict marks satisfy `w >= d + 2`; in particular `(1, 0)` is not strict.
    pub fn is_strict(&self) -> bool {
        self.w >= self.d + 2
    }

    /// Mark after absorbing one unweighted leaf: `(w + 1, d)`.
    pub fn absorb_leaf(self) -> Mark {
        Mark {
            w: self.w + 1,
            d: self.d,
        }
    }
}

impl fmt::Debug for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.w, self.d)
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.w, self.d)
    }
}

/// Convenience constructor used pervasively in tests.
pub fn mk(w: u32, d: u32) -> Mark {
    Mark::new(w, d).expect("valid mark")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_marks() {
        assert!(Mark::new(0, 0).is_err());
        assert!(Mark::new(1, 1).is_err());
        assert!(Mark::new(3, 3).is_err());
        assert!(Mark::new(1, 0).is_ok());
        assert!(Mark::new(4, 3).is_ok());
    }

    #[test]
    fn dot_sum_matches_definition() {
        assert_eq!(mk(4, 1).dot_sum(mk(2, 0)), mk(6, 2));
        assert_eq!(mk(1, 0).dot_sum(mk(1, 0)), mk(2, 1));
    }

    #[test]
    fn strictness() {
        assert!(!mk(1, 0).is_strict());
        assert!(mk(2, 0).is_strict());
        assert!(!mk(3, 2).is_strict());
        assert!(mk(4, 1).is_strict());
        // Dot-summing with a strict mark stays strict.
        assert!(mk(2, 0).dot_sum(mk(1, 0)).is_strict());
    }
}
