//! Admissible monomials and Adem rewriting on words in the squares.

use std::collections::BTreeSet;

/// `C(n, k) mod 2`, zero outside `0 ≤ k ≤ n`.
pub fn binomial_odd(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (k & !n) == 0
}

pub fn is_admissible(word: &[u32]) -> bool {
    word.iter().all(|&i| i > 0) && word.windows(2).all(|w| w[0] >= 2 * w[1])
}

/// Admissible sequences of the given degree, largest leading exponent first.
pub fn admissible_of_degree(degree: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if degree == 0 {
        out.push(Vec::new());
        return out;
    }
    // Build from the right: the last exponent is the smallest.
    fn extend(prefix_rev: &mut Vec<u32>, remaining: usize, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix_rev.iter().rev().copied().collect());
            return;
        }
        let min = prefix_rev.last().map_or(1, |&last| 2 * last as usize);
        for next in min..=remaining {
            prefix_rev.push(next as u32);
            extend(prefix_rev, remaining - next, out);
            prefix_rev.pop();
        }
    }
    extend(&mut Vec::new(), degree, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Expands `Sq^a Sq^b` for `a < 2b` into admissible two-letter words.
///
/// `Sq^a Sq^b = Σ_j C(b − 1 − j, a − 2j) Sq^{a+b−j} Sq^j`; the `j = 0` term
/// is the single square `Sq^{a+b}`.
pub fn adem_relation(a: u32, b: u32) -> Vec<Vec<u32>> {
    debug_assert!(a > 0 && a < 2 * b);
    let (a, b) = (a as i64, b as i64);
    (0..=a / 2)
        .filter(|&j| binomial_odd(b - 1 - j, a - 2 * j))
        .map(|j| {
            if j == 0 {
                vec![(a + b) as u32]
            } else {
                vec![(a + b - j) as u32, j as u32]
            }
        })
        .collect()
}

/// Where to apply the next Adem relation in a non-admissible word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionStrategy {
    LeftmostFirst,
    RightmostFirst,
}

fn strip_zeros(word: &[u32]) -> Vec<u32> {
    word.iter().copied().filter(|&i| i != 0).collect()
}

/// Rewrites a word to a sum of admissible words with the given strategy,
/// without memoization. Coefficients are mod 2.
pub fn reduce_with_strategy(word: &[u32], strategy: ReductionStrategy) -> Vec<Vec<u32>> {
    let mut pending = BTreeSet::new();
    let mut done = BTreeSet::new();
    toggle(&mut pending, strip_zeros(word));
    while let Some(w) = pending.pop_last() {
        let bad = match strategy {
            ReductionStrategy::LeftmostFirst => (0..w.len().saturating_sub(1)).find(|&i| w[i] < 2 * w[i + 1]),
            ReductionStrategy::RightmostFirst => (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] < 2 * w[i + 1]),
        };
        match bad {
            None => toggle(&mut done, w),
            Some(i) => {
                for pair in adem_relation(w[i], w[i + 1]) {
                    let mut next = w[..i].to_vec();
                    next.extend_from_slice(&pair);
                    next.extend_from_slice(&w[i + 2..]);
                    toggle(&mut pending, next);
                }
            }
        }
    }
    done.into_iter().collect()
}

fn toggle(set: &mut BTreeSet<Vec<u32>>, w: Vec<u32>) {
    if !set.remove(&w) {
        set.insert(w);
    }
}
