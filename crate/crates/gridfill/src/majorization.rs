//! Integer-vector orderings: partition conjugates, (weak) majorization
//! predicates, positive parts, and the valley-filling transform.
//!
//! All predicates treat their inputs as multisets: vectors are zero-padded to
//! a common length and compared through their non-increasing rearrangements,
//! so callers never need to sort first.

use crate::Error;

/// Positive part `[a]⁺ = max(a, 0)` as an unsigned value.
#[inline]
pub fn positive_part(a: i64) -> u64 {
    a.max(0) as u64
}

/// Conjugate partition of `x`: entry `j` (1-based) counts the elements of `x`
/// that are at least `j`. The result has length `max(max(x), min_len)` and is
/// always non-increasing; `x` may be unsorted.
pub fn conjugate(x: &[u32], min_len: usize) -> Vec<u32> {
    let max = x.iter().copied().max().unwrap_or(0) as usize;
    let len = max.max(min_len);
    // count[v] = how many elements equal v, then sweep a suffix sum so that
    // out[j-1] = #{elements ≥ j}
    let mut count = vec![0u32; len + 1];
    for &v in x {
        if v > 0 {
            count[v as usize] += 1;
        }
    }
    let mut out = vec![0u32; len];
    let mut at_least = 0u32;
    for j in (1..=len).rev() {
        at_least += count[j];
        out[j - 1] = at_least;
    }
    out
}

fn sorted_desc_padded(x: &[u32], len: usize) -> Vec<u32> {
    let mut v = x.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v.resize(len, 0);
    v
}

/// `x ≺_w y`: every prefix sum of the non-increasing rearrangement of `x` is
/// at most the matching prefix sum for `y`.
pub fn is_weakly_submajorized(x: &[u32], y: &[u32]) -> bool {
    let len = x.len().max(y.len());
    let xs = sorted_desc_padded(x, len);
    let ys = sorted_desc_padded(y, len);
    let (mut px, mut py) = (0u64, 0u64);
    for i in 0..len {
        px += xs[i] as u64;
        py += ys[i] as u64;
        if px > py {
            return false;
        }
    }
    true
}

/// `x ≺^w y`: every suffix sum of the non-increasing rearrangement of `x`
/// (the total of its smallest elements) is at least the matching one for `y`.
pub fn is_weakly_supermajorized(x: &[u32], y: &[u32]) -> bool {
    let len = x.len().max(y.len());
    let xs = sorted_desc_padded(x, len);
    let ys = sorted_desc_padded(y, len);
    let (mut sx, mut sy) = (0u64, 0u64);
    for i in (0..len).rev() {
        sx += xs[i] as u64;
        sy += ys[i] as u64;
        if sx < sy {
            return false;
        }
    }
    true
}

/// `x ≺ y`: weak submajorization together with equal totals.
pub fn is_majorized(x: &[u32], y: &[u32]) -> bool {
    let sx: u64 = x.iter().map(|&v| v as u64).sum();
    let sy: u64 = y.iter().map(|&v| v as u64).sum();
    sx == sy && is_weakly_submajorized(x, y)
}

/// Pours `amount` units into the valleys of a non-increasing vector: entries
/// are raised to the lowest common level that absorbs the whole amount, and
/// the leftover (when the level overshoots) is taken back from the last raised
/// entries, one unit each. Among all ways of adding `amount` in entrywise
/// increments, the result is majorized by every other one.
///
/// Rejects input that is not non-increasing, and a positive `amount` on an
/// empty vector.
pub fn valley_fill(input: &[u32], amount: u64) -> Result<Vec<u32>, Error> {
    if input.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::UnsortedInput);
    }
    if amount == 0 {
        return Ok(input.to_vec());
    }
    if input.is_empty() {
        return Err(Error::EmptyFill);
    }
    // capacity(v) = Σ [v − input_j]⁺ is non-decreasing in v; find the lowest
    // level v whose capacity reaches `amount`.
    let capacity = |v: u64| -> u64 {
        input
            .iter()
            .map(|&x| v.saturating_sub(x as u64))
            .sum::<u64>()
    };
    let (mut lo, mut hi) = (input[input.len() - 1] as u64, input[0] as u64 + amount);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if capacity(mid) >= amount {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let level = lo;
    let excess = capacity(level) - amount;
    let mut out: Vec<u64> = input
        .iter()
        .map(|&x| (x as u64).max(level))
        .collect();
    // `excess` is strictly smaller than the number of raised entries, so each
    // correction takes exactly one unit and the result stays non-increasing.
    let mut left = excess;
    for (i, &orig) in input.iter().enumerate().rev() {
        if left == 0 {
            break;
        }
        if (orig as u64) < level {
            out[i] -= 1;
            left -= 1;
        }
    }
    debug_assert_eq!(left, 0);
    out.into_iter()
        .map(|v| u32::try_from(v).map_err(|_| Error::Overflow("valley_fill")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&[5, 4, 2, 1], 5), vec![4, 3, 2, 2, 1]);
        assert_eq!(conjugate(&[3, 1, 1], 3), vec![3, 1, 1]);
        assert_eq!(conjugate(&[], 4), vec![0, 0, 0, 0]);
        // length is max(max(x), min_len)
        assert_eq!(conjugate(&[3], 1), vec![1, 1, 1]);
        assert_eq!(conjugate(&[3, 1, 1], 5), vec![3, 1, 1, 0, 0]);
        // order of the input never matters
        assert_eq!(conjugate(&[1, 4, 2, 5], 5), vec![4, 3, 2, 2, 1]);
    }

    #[test]
    fn submajorization_examples() {
        assert!(!is_weakly_submajorized(&[3, 1, 1], &[2, 2, 1]));
        assert!(is_weakly_submajorized(&[2, 2, 1], &[3, 1, 1]));
        assert!(is_weakly_submajorized(&[1, 1], &[3]));
        assert!(is_weakly_submajorized(&[], &[]));
    }

    #[test]
    fn supermajorization_examples() {
        assert!(is_weakly_supermajorized(&[2, 2, 1], &[3, 1, 1]));
        assert!(!is_weakly_supermajorized(&[1, 0], &[2, 0]));
        assert!(is_weakly_supermajorized(&[2, 2], &[3, 1]));
    }

    #[test]
    fn majorization_examples() {
        assert!(is_majorized(&[2, 2, 1], &[3, 1, 1]));
        assert!(!is_majorized(&[2, 2, 1], &[3, 1, 1, 1]));
        assert!(is_majorized(&[1, 2, 3], &[3, 2, 1]));
        assert!(!is_majorized(&[3, 1, 1], &[2, 2, 1]));
    }

    #[test]
    fn valley_fill_examples() {
        assert_eq!(valley_fill(&[3, 1, 0], 2).unwrap(), vec![3, 2, 1]);
        assert_eq!(valley_fill(&[2, 2, 2], 3).unwrap(), vec![3, 3, 3]);
        assert_eq!(valley_fill(&[5], 3).unwrap(), vec![8]);
        assert_eq!(valley_fill(&[4, 2], 0).unwrap(), vec![4, 2]);
        assert_eq!(valley_fill(&[], 0).unwrap(), Vec::<u32>::new());
    }

    #[test]
    fn valley_fill_rejects_bad_input() {
        assert_eq!(valley_fill(&[1, 2], 1), Err(Error::UnsortedInput));
        assert_eq!(valley_fill(&[], 1), Err(Error::EmptyFill));
    }

    /// Subset form of the positive-part identity: the maximum of Σ (aᵢ − bᵢ)
    /// over all subsets equals Σ [aᵢ − bᵢ]⁺.
    #[test]
    fn subset_maximum_equals_positive_part_sum() {
        let vals = [-3i64, -1, 0, 1, 2, 4];
        for a0 in vals {
            for a1 in vals {
                for a2 in vals {
                    let diffs = [a0, a1, a2];
                    let mut best = 0i64; // empty subset
                    for mask in 0u32..8 {
                        let s: i64 = (0..3)
                            .filter(|i| mask & (1 << i) != 0)
                            .map(|i| diffs[i])
                            .sum();
                        best = best.max(s);
                    }
                    let pos: i64 = diffs.iter().map(|&d| positive_part(d) as i64).sum();
                    assert_eq!(best, pos, "diffs {diffs:?}");
                }
            }
        }
    }

    fn exhaustive_vectors(len: usize, max: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=max).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Valley filling is majorization-minimal among all entrywise additions of
    /// the same total (exhaustive over small shapes).
    #[test]
    fn valley_fill_is_majorization_minimal_small() {
        for len in 1..=3usize {
            for base in exhaustive_vectors(len, 3) {
                let mut sorted = base.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                for amount in 0..=4u64 {
                    let filled = valley_fill(&sorted, amount).unwrap();
                    let total: u64 = filled.iter().map(|&v| v as u64).sum();
                    let base_total: u64 = sorted.iter().map(|&v| v as u64).sum();
                    assert_eq!(total, base_total + amount);
                    assert!(filled.windows(2).all(|w| w[0] >= w[1]));
                    assert!(filled.iter().zip(&sorted).all(|(f, s)| f >= s));
                    // compare against every other distribution of `amount`
                    for add in exhaustive_vectors(len, amount as u32) {
                        if add.iter().map(|&v| v as u64).sum::<u64>() != amount {
                            continue;
                        }
                        let other: Vec<u32> =
                            sorted.iter().zip(&add).map(|(s, a)| s + a).collect();
                        assert!(
                            is_majorized(&filled, &other),
                            "fill {filled:?} not below {other:?} (base {sorted:?}, amount {amount})"
                        );
                    }
                }
            }
        }
    }

    proptest! {
        /// Conjugating twice restores the non-increasing rearrangement.
        #[test]
        fn conjugate_involution(x in proptest::collection::vec(0u32..12, 0..10)) {
            let conj = conjugate(&x, 0);
            let double = conjugate(&conj, x.len());
            let mut sorted = x.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            prop_assert_eq!(&double[..x.len()], &sorted[..]);
            prop_assert!(double[x.len()..].iter().all(|&v| v == 0));
        }

        /// Conjugates are non-increasing and preserve totals.
        #[test]
        fn conjugate_shape(x in proptest::collection::vec(0u32..12, 0..10), min_len in 0usize..12) {
            let conj = conjugate(&x, min_len);
            prop_assert!(conj.len() >= min_len);
            prop_assert!(conj.windows(2).all(|w| w[0] >= w[1]));
            let sx: u64 = x.iter().map(|&v| v as u64).sum();
            let sc: u64 = conj.iter().map(|&v| v as u64).sum();
            prop_assert_eq!(sx, sc);
        }

        /// Conjugation swaps the two weak orders: x ≺_w y ⟺ y* ≺^w x*.
        #[test]
        fn conjugate_bridges_weak_orders(
            x in proptest::collection::vec(0u32..8, 1..7),
            y in proptest::collection::vec(0u32..8, 1..7),
        ) {
            let xc = conjugate(&x, 0);
            let yc = conjugate(&y, 0);
            prop_assert_eq!(
                is_weakly_submajorized(&x, &y),
                is_weakly_supermajorized(&yc, &xc)
            );
        }

        /// x ≺ y implies both weak orders at once.
        #[test]
        fn majorization_implies_both_weak_orders(
            x in proptest::collection::vec(0u32..8, 1..7),
            y in proptest::collection::vec(0u32..8, 1..7),
        ) {
            if is_majorized(&x, &y) {
                prop_assert!(is_weakly_submajorized(&x, &y));
                prop_assert!(is_weakly_supermajorized(&x, &y));
            }
        }
    }
}
