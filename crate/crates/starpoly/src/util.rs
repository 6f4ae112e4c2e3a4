//! Small shared helpers: exact binomials, subset iteration guards, seeded RNG.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Guard for 2^m subset enumerations.
pub fn subsets_budget(m: usize, limit: usize) -> Result<()> {
    if m > limit {
        return Err(Error::BudgetExceeded {
            what: "edges",
            actual: m,
            limit,
        });
    }
    Ok(())
}

/// Iterate all subsets of `items` (as index masks), calling `f` with the
/// chosen elements. `items` must fit the budget checked by the caller.
pub fn for_each_subset<T: Copy>(items: &[T], mut f: impl FnMut(&[T])) {
    let mut chosen = Vec::with_capacity(items.len());
    for mask in 0u64..(1u64 << items.len()) {
        chosen.clear();
        for (i, &x) in items.iter().enumerate() {
            if mask >> i & 1 == 1 {
                chosen.push(x);
            }
        }
        f(&chosen);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::from(0));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn subset_iteration() {
        let mut count = 0;
        for_each_subset(&[1, 2, 3], |_| count += 1);
        assert_eq!(count, 8);
    }
}
