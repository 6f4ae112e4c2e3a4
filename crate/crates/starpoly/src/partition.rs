//! Integer partitions: weakly decreasing lists of positive parts.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntPartition(Vec<u32>);

impl IntPartition {
    pub fn new(mut parts: Vec<u32>) -> IntPartition {
        debug_assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition(parts)
    }

    pub fn empty() -> IntPartition {
        IntPartition(Vec::new())
    }

    pub fn single(part: u32) -> IntPartition {
        IntPartition(vec![part])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |λ| = Σ λ_i.
    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Concatenate-and-sort, the index product for multiplicative bases.
    pub fn concat(&self, other: &IntPartition) -> IntPartition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        IntPartition::new(parts)
    }

    /// The hook-shaped partition (a, 1^b).
    pub fn hook(a: u32, b: usize) -> IntPartition {
        let mut parts = vec![1u32; b + 1];
        parts[0] = a;
        IntPartition::new(parts)
    }

    /// Canonical term order for display: degree descending, then
    /// lexicographically descending on the part lists.
    pub fn display_cmp(&self, other: &IntPartition) -> std::cmp::Ordering {
        other
            .sum()
            .cmp(&self.sum())
            .then_with(|| other.0.cmp(&self.0))
    }

    /// Parse the bracket form used in the text format, e.g. `[3,1,1]`.
    pub fn parse_bracketed(s: &str) -> Result<IntPartition> {
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [..] partition, got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(IntPartition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad part {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        Ok(IntPartition::new(parts))
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n`, in no particular order.
pub fn partitions_of(n: u32) -> Vec<IntPartition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<IntPartition>) {
        if remaining == 0 {
            out.push(IntPartition::new(cur.clone()));
            return;
        }
        let mut p = max.min(remaining);
        while p >= 1 {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
            p -= 1;
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Partitions of `n` with exactly `len` parts, all parts >= `min_part`.
pub fn partitions_with(n: u32, len: usize, min_part: u32) -> Vec<IntPartition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: u32, max: u32, left: usize, min_part: u32, cur: &mut Vec<u32>, out: &mut Vec<IntPartition>) {
        if left == 0 {
            if remaining == 0 {
                out.push(IntPartition::new(cur.clone()));
            }
            return;
        }
        let mut p = max.min(remaining);
        while p >= min_part {
            if remaining >= p && (remaining - p) >= min_part.saturating_mul((left - 1) as u32) {
                cur.push(p);
                rec(remaining - p, p, left - 1, min_part, cur, out);
                cur.pop();
            }
            p -= 1;
        }
    }
    rec(n, n, len, min_part, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_descending() {
        let p = IntPartition::new(vec![1, 3, 2]);
        assert_eq!(p.parts(), &[3, 2, 1]);
        assert_eq!(p.sum(), 6);
    }

    #[test]
    fn partition_counts() {
        // p(n) for n = 0..10.
        let expect = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(partitions_of(n as u32).len(), e, "p({n})");
        }
    }

    #[test]
    fn restricted_partitions() {
        // Partitions of 10 into exactly 3 parts, all >= 2.
        let ps = partitions_with(10, 3, 2);
        assert_eq!(ps.len(), 4); // 6+2+2, 5+3+2, 4+4+2, 4+3+3
    }

    #[test]
    fn display_roundtrip() {
        let p = IntPartition::new(vec![4, 1, 1]);
        assert_eq!(p.to_string(), "[4,1,1]");
        assert_eq!(IntPartition::parse_bracketed("[4,1,1]").unwrap(), p);
        assert_eq!(IntPartition::hook(4, 2), p);
    }
}
