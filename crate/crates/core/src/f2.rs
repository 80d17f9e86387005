//! Dense linear algebra over the two-element field.
//!
//! Vectors and matrices are bit-packed into `u64` words, row-major, with the
//! padding bits past the last column kept at zero. Linear maps elsewhere in the
//! crate use the row convention: the matrix of `f: V -> W` has `dim V` rows and
//! `dim W` columns, and row `i` is the image of the `i`-th basis vector of `V`.

use std::fmt;
use std::str::FromStr;

const BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(BITS)
}

/// A vector over F₂.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The standard basis vector `e_index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    fn from_words(len: usize, words: &[u64]) -> Self {
        Self {
            len,
            words: words.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / BITS] >> (i % BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % BITS);
        if value {
            self.words[i / BITS] |= mask;
        } else {
            self.words[i / BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / BITS] ^= 1u64 << (i % BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * BITS + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * BITS + tz)
                }
            })
        })
    }

    /// `self += other` over F₂.
    #[inline]
    pub fn add_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in vector addition");
        xor_words(&mut self.words, &other.words);
    }

    /// Adds `other` into the bits `[offset, offset + other.len())` of `self`.
    pub fn add_at(&mut self, offset: usize, other: &BitVec) {
        assert!(offset + other.len <= self.len);
        if offset.is_multiple_of(BITS) {
            xor_words(&mut self.words[offset / BITS..], &other.words);
        } else {
            for i in other.iter_ones() {
                self.flip(offset + i);
            }
        }
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Copies bits `[start, start + len)` into a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        let mut out = BitVec::zeros(len);
        for i in self.iter_ones().filter(|&i| i >= start && i < start + len) {
            out.set(i - start, true);
        }
        out
    }

    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        out.add_at(0, self);
        out.add_at(self.len, other);
        out
    }

    /// Row vector times matrix.
    pub fn mul_matrix(&self, m: &BitMatrix) -> BitVec {
        assert_eq!(self.len, m.rows, "vector length must equal matrix rows");
        let mut out = BitVec::zeros(m.cols);
        for i in self.iter_ones() {
            xor_words(&mut out.words, m.row_words(i));
        }
        out
    }
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Error parsing a `0`/`1` string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit character {0:?}")]
pub struct ParseBitsError(pub char);

impl FromStr for BitVec {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ParseBitsError(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitVec::from_bools(&bits))
    }
}

/// A dense matrix over F₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.set_row(i, r);
        }
        m
    }

    /// Builds a matrix from strings of `0`/`1`, one per row.
    ///
    /// Panics on malformed input; intended for literals.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<BitVec> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.parse().expect("matrix literal")
            })
            .collect();
        Self::from_rows(&vecs, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / BITS] >> (c % BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        let mask = 1u64 << (c % BITS);
        let w = &mut self.data[r * self.stride + c / BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r))
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert_eq!(v.len(), self.cols, "row length must equal column count");
        let s = self.stride;
        self.data[r * s..(r + 1) * s].copy_from_slice(&v.words);
    }

    pub fn row_iter(&self) -> impl Iterator<Item = BitVec> + '_ {
        (0..self.rows).map(|r| self.row(r))
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let s = self.stride;
        if src == dst {
            self.data[dst * s..(dst + 1) * s].fill(0);
            return;
        }
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        xor_words(b, a);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for k in 0..s {
            self.data.swap(a * s + k, b * s + k);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let s = out.stride;
            let dst = &mut out.data[r * s..(r + 1) * s];
            for k in BitVec::from_words(self.cols, self.row_words(r)).iter_ones() {
                xor_words(dst, other.row_words(k));
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        xor_words(&mut out.data, &other.data);
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend_from_slice(&other.data);
        out
    }

    /// Matrix-vector product `self · x` (column convention).
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(self.cols, x.len());
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let dot = self
                .row_words(r)
                .iter()
                .zip(x.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if dot % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        RowSolver::new(self).rank()
    }

    /// Reduced row-echelon form.
    ///
    /// Columns are scanned left to right; the pivot for a column is the
    /// topmost remaining row with a one there.
    pub fn row_reduce(&self) -> EchelonForm {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(p) = (next..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(p, next);
            for r in 0..m.rows {
                if r != next && m.get(r, c) {
                    m.xor_row_into(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        EchelonForm { matrix: m, pivots }
    }

    /// Basis of the right null space `{x : self · x = 0}`, one vector per row.
    ///
    /// One basis vector per non-pivot column, in increasing column order.
    pub fn kernel_basis(&self) -> BitMatrix {
        let ech = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = BitMatrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (i, &p) in ech.pivots.iter().enumerate() {
                if ech.matrix.get(i, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }

    /// Basis of the left null space `{x : x · self = 0}`.
    ///
    /// This is the kernel of the linear map the matrix represents under the
    /// row convention.
    pub fn left_kernel(&self) -> BitMatrix {
        self.transpose().kernel_basis()
    }

    /// Echelon basis of the row space.
    pub fn row_space(&self) -> BitMatrix {
        let ech = self.row_reduce();
        let rank = ech.pivots.len();
        let mut out = BitMatrix::zeros(rank, self.cols);
        for r in 0..rank {
            out.set_row(r, &ech.matrix.row(r));
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        Ok(())
    }
}

/// A matrix in reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonForm {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl EchelonForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Solves `m · x = b`. Free coordinates of the solution are set to zero.
pub fn solve(m: &BitMatrix, b: &BitVec) -> Option<BitVec> {
    assert_eq!(b.len(), m.rows(), "right-hand side must have one entry per row");
    let mut aug = BitMatrix::zeros(m.rows(), m.cols() + 1);
    for r in 0..m.rows() {
        let mut row = m.row(r).concat(&BitVec::zeros(1));
        if b.get(r) {
            row.set(m.cols(), true);
        }
        aug.set_row(r, &row);
    }
    let ech = aug.row_reduce();
    if ech.pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = BitVec::zeros(m.cols());
    for (i, &p) in ech.pivots.iter().enumerate() {
        if ech.matrix.get(i, m.cols()) {
            x.set(p, true);
        }
    }
    Some(x)
}

/// Complement of a subspace and the projection onto the quotient.
///
/// Returns `(representatives, projection)`: the rows of `representatives` are
/// standard basis vectors completing `sub` to a basis of the ambient space,
/// and `projection` (`ambient_dim` rows) sends ambient coordinates to
/// coordinates in the quotient with respect to those representatives.
pub fn quotient_basis(sub: &BitMatrix, ambient_dim: usize) -> (BitMatrix, BitMatrix) {
    assert_eq!(sub.cols(), ambient_dim, "subspace rows must live in the ambient space");
    let ech = sub.row_reduce();
    let mut is_pivot = vec![false; ambient_dim];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|&c| !is_pivot[c]).collect();
    let mut index_of = vec![usize::MAX; ambient_dim];
    for (k, &f) in free.iter().enumerate() {
        index_of[f] = k;
    }
    let mut reps = BitMatrix::zeros(free.len(), ambient_dim);
    let mut proj = BitMatrix::zeros(ambient_dim, free.len());
    for (k, &f) in free.iter().enumerate() {
        reps.set(k, f, true);
        proj.set(f, k, true);
    }
    // e_p is congruent to the non-pivot part of its echelon row.
    for (i, &p) in ech.pivots.iter().enumerate() {
        for c in ech.matrix.row(i).iter_ones() {
            if c != p {
                proj.set(p, index_of[c], true);
            }
        }
    }
    (reps, proj)
}

/// Incremental echelon basis with recorded row combinations.
///
/// Built from the rows of a matrix `M`; answers `x · M = y` queries. Rows that
/// are dependent on earlier rows never appear in a returned solution.
#[derive(Clone, Debug)]
pub struct RowSolver {
    cols: usize,
    sources: usize,
    rows: Vec<BitVec>,
    combos: Vec<BitVec>,
    pivot_row: Vec<Option<usize>>,
}

impl RowSolver {
    pub fn new(m: &BitMatrix) -> Self {
        let mut solver = Self::empty(m.rows(), m.cols());
        for r in 0..m.rows() {
            solver.insert(m.row(r), BitVec::unit(m.rows(), r));
        }
        solver
    }

    /// A solver with no rows over a space of dimension `cols`, whose
    /// combinations are recorded over `sources` coordinates.
    pub fn empty(sources: usize, cols: usize) -> Self {
        Self {
            cols,
            sources,
            rows: Vec::new(),
            combos: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    /// Inserts `row` with combination label `combo`; returns `true` if it was
    /// independent of the rows already present.
    pub fn insert(&mut self, mut row: BitVec, mut combo: BitVec) -> bool {
        assert_eq!(row.len(), self.cols);
        assert_eq!(combo.len(), self.sources);
        while let Some(c) = row.first_one() {
            match self.pivot_row[c] {
                Some(k) => {
                    row.add_assign(&self.rows[k]);
                    combo.add_assign(&self.combos[k]);
                }
                None => {
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(row);
                    self.combos.push(combo);
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `y` against the basis; returns the residue and the combination used.
    pub fn reduce(&self, y: &BitVec) -> (BitVec, BitVec) {
        assert_eq!(y.len(), self.cols);
        let mut rest = y.clone();
        let mut x = BitVec::zeros(self.sources);
        let mut start = 0;
        loop {
            let next = rest.iter_ones().find(|&c| c >= start && self.pivot_row[c].is_some());
            let Some(c) = next else { break };
            let k = self.pivot_row[c].unwrap();
            rest.add_assign(&self.rows[k]);
            x.add_assign(&self.combos[k]);
            start = c + 1;
        }
        (rest, x)
    }

    pub fn contains(&self, y: &BitVec) -> bool {
        self.reduce(y).0.is_zero()
    }

    /// Some `x` with `x · M = y`, if one exists.
    pub fn solve(&self, y: &BitVec) -> Option<BitVec> {
        let (rest, x) = self.reduce(y);
        rest.is_zero().then_some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn row_reduce_examples() {
        let id = BitMatrix::identity(3);
        let e = id.row_reduce();
        assert_eq!(e.matrix, id);
        assert_eq!(e.pivots, vec![0, 1, 2]);

        let m = BitMatrix::from_strs(&["11"]);
        let e = m.row_reduce();
        assert_eq!(e.matrix, m);
        assert_eq!(e.pivots, vec![0]);

        let m = BitMatrix::from_strs(&["11", "11"]);
        let e = m.row_reduce();
        assert_eq!(e.matrix, BitMatrix::from_strs(&["11", "00"]));
        assert_eq!(e.pivots, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let k = BitMatrix::from_strs(&["11"]).kernel_basis();
        assert_eq!(k, BitMatrix::from_strs(&["11"]));
        assert_eq!(BitMatrix::identity(2).kernel_basis().rows(), 0);
        let k = BitMatrix::zeros(2, 3).kernel_basis();
        assert_eq!(k.rows(), 3);
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn solve_examples() {
        let m = BitMatrix::from_strs(&["11", "01"]);
        assert_eq!(solve(&m, &bv("10")), Some(bv("10")));
        let id = BitMatrix::identity(4);
        assert_eq!(solve(&id, &bv("1011")), Some(bv("1011")));
        assert_eq!(solve(&BitMatrix::zeros(1, 1), &bv("1")), None);
    }

    #[test]
    fn solve_sets_free_coordinates_to_zero() {
        // x0 + x1 = 1 has solutions (1,0) and (0,1); x1 is free.
        let m = BitMatrix::from_strs(&["11"]);
        assert_eq!(solve(&m, &bv("1")), Some(bv("10")));
    }

    #[test]
    fn quotient_examples() {
        let (reps, proj) = quotient_basis(&BitMatrix::from_strs(&["10"]), 2);
        assert_eq!(reps, BitMatrix::from_strs(&["01"]));
        assert_eq!(proj, BitMatrix::from_strs(&["0", "1"]));

        let (reps, _) = quotient_basis(&BitMatrix::identity(2), 2);
        assert_eq!(reps.rows(), 0);

        let (reps, proj) = quotient_basis(&BitMatrix::zeros(0, 3), 3);
        assert_eq!(reps, BitMatrix::identity(3));
        assert_eq!(proj, BitMatrix::identity(3));
    }

    #[test]
    fn add_at_unaligned() {
        let mut v = BitVec::zeros(130);
        v.add_at(63, &bv("111"));
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![63, 64, 65]);
        v.add_at(64, &bv("1"));
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![63, 65]);
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let mut m = BitMatrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, bits[i * c + j]);
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(12, 80)) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.rows(), m.cols());
            for r in 0..k.rows() {
                prop_assert!(m.mul_vec(&k.row(r)).is_zero());
            }
        }

        #[test]
        fn row_reduce_idempotent(m in arb_matrix(10, 70)) {
            let e = m.row_reduce();
            let again = e.matrix.row_reduce();
            prop_assert_eq!(&again.matrix, &e.matrix);
            prop_assert_eq!(&again.pivots, &e.pivots);
            prop_assert!(e.pivots.windows(2).all(|w| w[0] < w[1]));
            for &p in &e.pivots {
                let ones = (0..m.rows()).filter(|&r| e.matrix.get(r, p)).count();
                prop_assert_eq!(ones, 1);
            }
        }

        #[test]
        fn solve_is_exact(m in arb_matrix(10, 12), seed in any::<u64>()) {
            let mut b = BitVec::zeros(m.rows());
            for r in 0..m.rows() {
                if (seed >> (r % 64)) & 1 == 1 { b.set(r, true); }
            }
            if let Some(x) = solve(&m, &b) {
                prop_assert_eq!(m.mul_vec(&x), b.clone());
            }
            // A right-hand side in the column space is always solvable.
            let x0 = BitVec::from_ones(m.cols(), (0..m.cols()).filter(|c| (seed >> (c % 64)) & 1 == 0));
            let b0 = m.mul_vec(&x0);
            let x = solve(&m, &b0);
            prop_assert!(x.is_some());
            prop_assert_eq!(m.mul_vec(&x.unwrap()), b0);
        }

        #[test]
        fn quotient_projection_laws(sub in arb_matrix(8, 20)) {
            let n = sub.cols();
            let (reps, proj) = quotient_basis(&sub, n);
            prop_assert!(sub.mul(&proj).is_zero());
            prop_assert_eq!(reps.mul(&proj), BitMatrix::identity(reps.rows()));
            prop_assert_eq!(reps.rows() + sub.rank(), n);
        }

        #[test]
        fn row_solver_agrees_with_left_kernel(m in arb_matrix(15, 20)) {
            let solver = RowSolver::new(&m);
            prop_assert_eq!(solver.rank(), m.rank());
            prop_assert_eq!(m.left_kernel().rows(), m.rows() - solver.rank());
            for r in 0..m.rows() {
                let y = m.row(r);
                let x = solver.solve(&y).unwrap();
                prop_assert_eq!(x.mul_matrix(&m), y);
            }
        }
    }
}
