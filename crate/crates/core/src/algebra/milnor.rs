//! Milnor basis combinatorics at the prime 2.

use std::collections::BTreeSet;

/// Degree of `Sq(r₁, r₂, …)`, namely `Σ rᵢ (2ⁱ − 1)`.
pub fn profile_degree(profile: &[u32]) -> usize {
    profile
        .iter()
        .enumerate()
        .map(|(i, &r)| r as usize * ((1usize << (i + 1)) - 1))
        .sum()
}

/// All profiles of the given degree, trailing zeros trimmed.
pub fn profiles_of_degree(degree: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut max_index = 0;
    while (1usize << (max_index + 1)) - 1 <= degree {
        max_index += 1;
    }
    let mut current = vec![0u32; max_index];
    fill(&mut current, max_index, degree, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill(current: &mut Vec<u32>, slots: usize, remaining: usize, out: &mut Vec<Vec<u32>>) {
    if slots == 0 {
        if remaining == 0 {
            let mut p = current.clone();
            while p.last() == Some(&0) {
                p.pop();
            }
            out.push(p);
        }
        return;
    }
    let i = slots - 1;
    let weight = (1usize << (i + 1)) - 1;
    for r in 0..=remaining / weight {
        current[i] = r as u32;
        fill(current, i, remaining - r * weight, out);
    }
    current[i] = 0;
}

/// The Milnor product `Sq(R) · Sq(S)` as a set of profiles (coefficients mod 2).
///
/// Sums over matrices `X = (x_ij)` with `Σ_j 2ʲ x_ij = r_i` for `i ≥ 1` and
/// `Σ_i x_ij = s_j` for `j ≥ 1`; each contributes `Sq(T)` with
/// `t_n = Σ_{i+j=n} x_ij`, weighted by the multinomial coefficient of the
/// anti-diagonals, which is odd exactly when the entries have disjoint bits.
pub fn multiply(r: &[u32], s: &[u32]) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    let mut x = vec![vec![0u32; s.len() + 1]; r.len() + 1];
    enumerate(r, s, 0, &mut x, &mut out);
    out
}

fn enumerate(r: &[u32], s: &[u32], cell: usize, x: &mut [Vec<u32>], out: &mut BTreeSet<Vec<u32>>) {
    let rows = r.len();
    let cols = s.len();
    if cell == rows * cols {
        emit(r, s, x, out);
        return;
    }
    let i = cell / cols + 1;
    let j = cell % cols + 1;
    let row_used: u32 = (1..j).map(|jj| x[i][jj] << jj).sum();
    let col_used: u32 = (1..i).map(|ii| x[ii][j]).sum();
    let row_left = r[i - 1] - row_used;
    let col_left = s[j - 1] - col_used;
    let bound = (row_left >> j).min(col_left);
    for v in 0..=bound {
        x[i][j] = v;
        enumerate(r, s, cell + 1, x, out);
    }
    x[i][j] = 0;
}

fn emit(r: &[u32], s: &[u32], x: &mut [Vec<u32>], out: &mut BTreeSet<Vec<u32>>) {
    let rows = r.len();
    let cols = s.len();
    for i in 1..=rows {
        let used: u32 = (1..=cols).map(|j| x[i][j] << j).sum();
        x[i][0] = r[i - 1] - used;
    }
    for j in 1..=cols {
        let used: u32 = (1..=rows).map(|i| x[i][j]).sum();
        x[0][j] = s[j - 1] - used;
    }
    let mut t = Vec::with_capacity(rows + cols);
    for n in 1..=rows + cols {
        let mut acc = 0u32;
        let mut sum = 0u32;
        for i in 0..=n.min(rows) {
            let j = n - i;
            if j > cols {
                continue;
            }
            let v = x[i][j];
            if acc & v != 0 {
                return;
            }
            acc |= v;
            sum += v;
        }
        t.push(sum);
    }
    while t.last() == Some(&0) {
        t.pop();
    }
    if !out.remove(&t) {
        out.insert(t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_counts_match_partition_oracle() {
        // Independent count: partitions of d into parts 1, 3, 7, 15, ...
        fn count(d: usize) -> usize {
            let parts: Vec<usize> = (1..8).map(|i| (1usize << i) - 1).filter(|&p| p <= d.max(1)).collect();
            let mut ways = vec![0usize; d + 1];
            ways[0] = 1;
            for p in parts {
                for v in p..=d {
                    ways[v] += ways[v - p];
                }
            }
            ways[d]
        }
        for d in 0..40 {
            assert_eq!(profiles_of_degree(d).len(), count(d), "degree {d}");
        }
        assert_eq!(profiles_of_degree(3), vec![vec![3], vec![0, 1]]);
        assert_eq!(profiles_of_degree(7).len(), 4);
    }

    #[test]
    fn small_products() {
        assert!(multiply(&[1], &[1]).is_empty());
        let p = multiply(&[2], &[1]);
        assert_eq!(p, [vec![3], vec![0, 1]].into_iter().collect());
        assert_eq!(multiply(&[1], &[2]), [vec![3]].into_iter().collect());
        assert_eq!(multiply(&[5], &[]), [vec![5]].into_iter().collect());
    }
}
