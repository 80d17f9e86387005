//! The mod-2 Steenrod algebra, degree by degree up to a fixed bound.
//!
//! Elements are stored in the admissible basis by default. The Milnor basis is
//! carried alongside with conversion matrices in each degree. Products in the
//! admissible basis come from memoized Adem rewriting; products in the Milnor
//! basis come from the Milnor matrix formula. The two routes never share code
//! beyond the basis tables, so agreement between them is a real check.

pub mod adem;
pub mod milnor;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

pub use adem::ReductionStrategy;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, RowSolver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Admissible,
    Milnor,
}

/// A homogeneous element, as coordinates over the chosen basis of its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    degree: usize,
    basis: Basis,
    coords: BitVec,
}

impl AlgebraElement {
    pub fn new(degree: usize, basis: Basis, coords: BitVec) -> Self {
        Self { degree, basis, coords }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coords(&self) -> &BitVec {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!((self.degree, self.basis), (other.degree, other.basis));
        let mut coords = self.coords.clone();
        coords.add_assign(&other.coords);
        AlgebraElement { coords, ..*self }
    }
}

/// A sum of products of two positive-degree elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: Vec<(AlgebraElement, AlgebraElement)>,
}

impl Decomposition {
    /// The element this decomposition sums to, in the admissible basis.
    pub fn evaluate(&self, algebra: &SteenrodAlgebra) -> Result<AlgebraElement> {
        let mut iter = self.terms.iter();
        let (a, b) = iter.next().expect("empty decomposition");
        let mut acc = algebra.convert(&algebra.multiply(a, b)?, Basis::Admissible)?;
        for (a, b) in iter {
            let p = algebra.convert(&algebra.multiply(a, b)?, Basis::Admissible)?;
            acc = acc.add(&p);
        }
        Ok(acc)
    }

    pub fn format(&self, algebra: &SteenrodAlgebra) -> String {
        self.terms
            .iter()
            .map(|(a, b)| format!("({})·({})", algebra.format(a), algebra.format(b)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// One row of the indecomposables table.
#[derive(Debug, Clone)]
pub struct IndecomposableDegree {
    pub degree: usize,
    pub dim: usize,
    /// For `Sq^degree` with `degree` not a power of two, an explicit
    /// decomposition into products of lower squares.
    pub witness: Option<Decomposition>,
}

struct Conversion {
    admissible_to_milnor: BitMatrix,
    milnor_to_admissible: BitMatrix,
}

struct DecomposableSpan {
    solver: RowSolver,
    /// `(j, r)`: the spanning product `Sq^j · Sq(R_r)` with `R_r` a Milnor
    /// basis element of degree `d − j`.
    labels: Vec<(usize, usize)>,
}

/// Basis tables, conversion matrices and product caches for `A^0 … A^max_degree`.
pub struct SteenrodAlgebra {
    max_degree: usize,
    admissible: Vec<Vec<Vec<u32>>>,
    admissible_index: Vec<HashMap<Vec<u32>, usize>>,
    milnor: Vec<Vec<Vec<u32>>>,
    milnor_index: Vec<HashMap<Vec<u32>, usize>>,
    conversions: Vec<OnceLock<Conversion>>,
    products: Vec<OnceLock<Vec<BitVec>>>,
    reduced_words: Mutex<HashMap<Vec<u32>, BitVec>>,
    antipode_squares: Vec<OnceLock<BitVec>>,
    antipode_rows: Vec<OnceLock<Vec<BitVec>>>,
    decomposables: Vec<OnceLock<DecomposableSpan>>,
}

impl std::fmt::Debug for SteenrodAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SteenrodAlgebra").field("max_degree", &self.max_degree).finish()
    }
}

impl SteenrodAlgebra {
    pub fn new(max_degree: usize) -> Self {
        let admissible: Vec<_> = (0..=max_degree).map(adem::admissible_of_degree).collect();
        let milnor: Vec<_> = (0..=max_degree).map(milnor::profiles_of_degree).collect();
        let index = |lists: &Vec<Vec<Vec<u32>>>| {
            lists
                .iter()
                .map(|l| l.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
                .collect::<Vec<HashMap<_, _>>>()
        };
        let admissible_index = index(&admissible);
        let milnor_index = index(&milnor);
        let n = max_degree + 1;
        Self {
            max_degree,
            admissible,
            admissible_index,
            milnor,
            milnor_index,
            conversions: (0..n).map(|_| OnceLock::new()).collect(),
            products: (0..n * n).map(|_| OnceLock::new()).collect(),
            reduced_words: Mutex::new(HashMap::new()),
            antipode_squares: (0..n).map(|_| OnceLock::new()).collect(),
            antipode_rows: (0..n).map(|_| OnceLock::new()).collect(),
            decomposables: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            Err(Error::DegreeOverflow {
                degree,
                bound: self.max_degree,
            })
        } else {
            Ok(())
        }
    }

    pub fn basis_dim(&self, degree: usize) -> Result<usize> {
        self.check(degree)?;
        Ok(self.dim(degree))
    }

    /// `dim A^degree`; panics past the table bound.
    #[inline]
    pub fn dim(&self, degree: usize) -> usize {
        self.admissible[degree].len()
    }

    pub fn admissible_basis(&self, degree: usize) -> &[Vec<u32>] {
        &self.admissible[degree]
    }

    pub fn milnor_basis(&self, degree: usize) -> &[Vec<u32>] {
        &self.milnor[degree]
    }

    pub fn admissible_index(&self, word: &[u32]) -> Option<usize> {
        let d = word.iter().map(|&i| i as usize).sum::<usize>();
        self.admissible_index.get(d)?.get(word).copied()
    }

    pub fn milnor_index(&self, profile: &[u32]) -> Option<usize> {
        let d = milnor::profile_degree(profile);
        self.milnor_index.get(d)?.get(profile).copied()
    }

    pub fn zero(&self, degree: usize, basis: Basis) -> AlgebraElement {
        AlgebraElement::new(degree, basis, BitVec::zeros(self.dim(degree)))
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement::new(0, Basis::Admissible, BitVec::unit(1, 0))
    }

    /// `Sq^n` in the admissible basis.
    pub fn sq(&self, n: usize) -> Result<AlgebraElement> {
        self.check(n)?;
        let index = if n == 0 { 0 } else { self.admissible_index[n][&vec![n as u32]] };
        Ok(AlgebraElement::new(n, Basis::Admissible, BitVec::unit(self.dim(n), index)))
    }

    /// The Milnor basis element `Sq(profile)`.
    pub fn milnor_element(&self, profile: &[u32]) -> Result<AlgebraElement> {
        let mut p = profile.to_vec();
        while p.last() == Some(&0) {
            p.pop();
        }
        let d = milnor::profile_degree(&p);
        self.check(d)?;
        let i = self.milnor_index[d][&p];
        Ok(AlgebraElement::new(d, Basis::Milnor, BitVec::unit(self.dim(d), i)))
    }

    /// The basis element with the given admissible sequence.
    pub fn admissible_element(&self, word: &[u32]) -> Result<AlgebraElement> {
        if !adem::is_admissible(word) {
            return Err(Error::InvalidWord(word.to_vec()));
        }
        let d = word.iter().map(|&i| i as usize).sum();
        self.check(d)?;
        let i = self.admissible_index[d][word];
        Ok(AlgebraElement::new(d, Basis::Admissible, BitVec::unit(self.dim(d), i)))
    }

    /// Rewrites the product `Sq^{w₁} ⋯ Sq^{w_k}` in the admissible basis.
    pub fn adem_reduce(&self, word: &[u32]) -> Result<AlgebraElement> {
        let d = self.word_degree(word)?;
        Ok(AlgebraElement::new(d, Basis::Admissible, self.reduce_word(word)))
    }

    /// As [`adem_reduce`](Self::adem_reduce), but unmemoized and with an
    /// explicit choice of which non-admissible pair to rewrite first.
    pub fn adem_reduce_with(&self, word: &[u32], strategy: ReductionStrategy) -> Result<AlgebraElement> {
        let d = self.word_degree(word)?;
        let mut coords = BitVec::zeros(self.dim(d));
        for w in adem::reduce_with_strategy(word, strategy) {
            coords.flip(self.admissible_index[d][&w]);
        }
        Ok(AlgebraElement::new(d, Basis::Admissible, coords))
    }

    fn word_degree(&self, word: &[u32]) -> Result<usize> {
        if word.contains(&0) {
            return Err(Error::InvalidWord(word.to_vec()));
        }
        let d = word.iter().map(|&i| i as usize).sum();
        self.check(d)?;
        Ok(d)
    }

    fn reduce_word(&self, word: &[u32]) -> BitVec {
        let degree: usize = word.iter().map(|&i| i as usize).sum();
        if adem::is_admissible(word) {
            return BitVec::unit(self.dim(degree), self.admissible_index[degree][word]);
        }
        if let Some(v) = self.reduced_words.lock().unwrap().get(word) {
            return v.clone();
        }
        let first = word[0];
        let tail_degree = degree - first as usize;
        let tail = self.reduce_word(&word[1..]);
        let mut out = BitVec::zeros(self.dim(degree));
        for m in tail.iter_ones() {
            let mono = &self.admissible[tail_degree][m];
            if mono.is_empty() || first >= 2 * mono[0] {
                let mut w = Vec::with_capacity(mono.len() + 1);
                w.push(first);
                w.extend_from_slice(mono);
                out.flip(self.admissible_index[degree][&w]);
            } else {
                for mut w in adem::adem_relation(first, mono[0]) {
                    w.extend_from_slice(&mono[1..]);
                    out.add_assign(&self.reduce_word(&w));
                }
            }
        }
        self.reduced_words
            .lock()
            .unwrap()
            .entry(word.to_vec())
            .or_insert_with(|| out.clone());
        out
    }

    /// Product of admissible basis elements `a ∈ A^i` and `b ∈ A^j`, in
    /// admissible coordinates of `A^{i+j}`.
    pub fn product(&self, i: usize, a: usize, j: usize, b: usize) -> &BitVec {
        assert!(i + j <= self.max_degree, "product degree {} past bound", i + j);
        let table = self.products[i * (self.max_degree + 1) + j].get_or_init(|| {
            let mut out = Vec::with_capacity(self.dim(i) * self.dim(j));
            for left in &self.admissible[i] {
                for right in &self.admissible[j] {
                    let mut w = left.clone();
                    w.extend_from_slice(right);
                    out.push(self.reduce_word(&w));
                }
            }
            out
        });
        &table[a * self.dim(j) + b]
    }

    fn multiply_admissible(&self, i: usize, x: &BitVec, j: usize, y: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.dim(i + j));
        for a in x.iter_ones() {
            for b in y.iter_ones() {
                out.add_assign(self.product(i, a, j, b));
            }
        }
        out
    }

    fn multiply_milnor(&self, i: usize, x: &BitVec, j: usize, y: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.dim(i + j));
        for a in x.iter_ones() {
            for b in y.iter_ones() {
                for t in milnor::multiply(&self.milnor[i][a], &self.milnor[j][b]) {
                    out.flip(self.milnor_index[i + j][&t]);
                }
            }
        }
        out
    }

    /// `Sq(r) · Sq(s)` in the Milnor basis.
    pub fn milnor_product(&self, r: &[u32], s: &[u32]) -> Result<AlgebraElement> {
        let a = self.milnor_element(r)?;
        let b = self.milnor_element(s)?;
        self.multiply(&a, &b)
    }

    /// Product of two elements, expressed in the basis of the left factor.
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let d = a.degree + b.degree;
        self.check(d)?;
        let b = self.convert(b, a.basis)?;
        let coords = match a.basis {
            Basis::Admissible => self.multiply_admissible(a.degree, &a.coords, b.degree, &b.coords),
            Basis::Milnor => self.multiply_milnor(a.degree, &a.coords, b.degree, &b.coords),
        };
        Ok(AlgebraElement::new(d, a.basis, coords))
    }

    fn conversion(&self, d: usize) -> &Conversion {
        self.conversions[d].get_or_init(|| {
            let dim = self.dim(d);
            let mut rows = Vec::with_capacity(dim);
            for word in &self.admissible[d] {
                let mut deg = 0;
                let mut v = BitVec::unit(1, 0);
                for &i in word {
                    let i = i as usize;
                    let sq = BitVec::unit(self.dim(i), self.milnor_index[i][&vec![i as u32]]);
                    v = self.multiply_milnor(deg, &v, i, &sq);
                    deg += i;
                }
                rows.push(v);
            }
            let forward = BitMatrix::from_rows(&rows, dim);
            let solver = RowSolver::new(&forward);
            assert_eq!(solver.rank(), dim, "admissible monomials must form a basis in degree {d}");
            let inverse_rows: Vec<BitVec> = (0..dim)
                .map(|k| solver.solve(&BitVec::unit(dim, k)).unwrap())
                .collect();
            Conversion {
                admissible_to_milnor: forward,
                milnor_to_admissible: BitMatrix::from_rows(&inverse_rows, dim),
            }
        })
    }

    /// The matrix taking admissible coordinates to Milnor coordinates in degree `d`.
    pub fn admissible_to_milnor(&self, d: usize) -> Result<&BitMatrix> {
        self.check(d)?;
        Ok(&self.conversion(d).admissible_to_milnor)
    }

    pub fn milnor_to_admissible(&self, d: usize) -> Result<&BitMatrix> {
        self.check(d)?;
        Ok(&self.conversion(d).milnor_to_admissible)
    }

    pub fn convert(&self, e: &AlgebraElement, target: Basis) -> Result<AlgebraElement> {
        self.check(e.degree)?;
        if e.basis == target {
            return Ok(e.clone());
        }
        let c = self.conversion(e.degree);
        let m = match target {
            Basis::Milnor => &c.admissible_to_milnor,
            Basis::Admissible => &c.milnor_to_admissible,
        };
        Ok(AlgebraElement::new(e.degree, target, e.coords.mul_matrix(m)))
    }

    /// `χ(Sq^n)` in admissible coordinates, from `Σ_{i=0}^{n} Sq^i χ(Sq^{n−i}) = 0`.
    fn antipode_square(&self, n: usize) -> &BitVec {
        self.antipode_squares[n].get_or_init(|| {
            if n == 0 {
                return BitVec::unit(1, 0);
            }
            let mut acc = BitVec::zeros(self.dim(n));
            for i in 1..=n {
                let rest = self.antipode_square(n - i);
                for b in rest.iter_ones() {
                    acc.add_assign(self.product(i, 0, n - i, b));
                }
            }
            acc
        })
    }

    fn antipode_basis(&self, d: usize) -> &[BitVec] {
        self.antipode_rows[d].get_or_init(|| {
            self.admissible[d]
                .iter()
                .map(|word| {
                    let mut deg = 0;
                    let mut v = BitVec::unit(1, 0);
                    for &i in word {
                        let i = i as usize;
                        v = self.multiply_admissible(i, self.antipode_square(i), deg, &v);
                        deg += i;
                    }
                    v
                })
                .collect()
        })
    }

    /// The antipode, extended from the squares as an anti-homomorphism.
    pub fn antipode(&self, e: &AlgebraElement) -> Result<AlgebraElement> {
        let adm = self.convert(e, Basis::Admissible)?;
        let rows = self.antipode_basis(e.degree);
        let mut out = BitVec::zeros(self.dim(e.degree));
        for i in adm.coords.iter_ones() {
            out.add_assign(&rows[i]);
        }
        self.convert(&AlgebraElement::new(e.degree, Basis::Admissible, out), e.basis)
    }

    // A_{>0}·A_{>0} in degree d is spanned by Sq^j · A^{d−j} for 0 < j < d,
    // since every admissible monomial of positive degree starts with a square.
    fn decomposable_span(&self, d: usize) -> &DecomposableSpan {
        self.decomposables[d].get_or_init(|| {
            let mut labels = Vec::new();
            let mut rows = Vec::new();
            for j in 1..d {
                for (r, profile) in self.milnor[d - j].iter().enumerate() {
                    let mut v = BitVec::zeros(self.dim(d));
                    for t in milnor::multiply(&[j as u32], profile) {
                        v.flip(self.milnor_index[d][&t]);
                    }
                    labels.push((j, r));
                    rows.push(v);
                }
            }
            let mut solver = RowSolver::empty(rows.len(), self.dim(d));
            let n = rows.len();
            for (k, row) in rows.into_iter().enumerate() {
                solver.insert(row, BitVec::unit(n, k));
            }
            DecomposableSpan { solver, labels }
        })
    }

    /// Dimension of `A_{>0} / A_{>0}²` in degree `d > 0`.
    pub fn indecomposable_dim(&self, d: usize) -> Result<usize> {
        self.check(d)?;
        if d == 0 {
            return Ok(0);
        }
        Ok(self.dim(d) - self.decomposable_span(d).solver.rank())
    }

    /// `Sq^n` for `n` not a power of two as a sum of products of lower squares.
    ///
    /// With `n = 2^k + m`, `0 < m < 2^k`, the Adem relation for `Sq^m Sq^{2^k}`
    /// has leading term `Sq^n`; the remaining terms are `Sq^{n−j} Sq^j`.
    pub fn square_decomposition(&self, n: usize) -> Result<Option<Decomposition>> {
        self.check(n)?;
        if n == 0 || n.is_power_of_two() {
            return Ok(None);
        }
        let top = 1usize << (usize::BITS - 1 - n.leading_zeros());
        let m = n - top;
        let mut terms = vec![(self.sq(m)?, self.sq(top)?)];
        for pair in adem::adem_relation(m as u32, top as u32).into_iter().skip(1) {
            terms.push((self.sq(pair[0] as usize)?, self.sq(pair[1] as usize)?));
        }
        Ok(Some(Decomposition { terms }))
    }

    pub fn indecomposables(&self, d_max: usize) -> Result<Vec<IndecomposableDegree>> {
        self.check(d_max)?;
        (1..=d_max)
            .map(|d| {
                Ok(IndecomposableDegree {
                    degree: d,
                    dim: self.indecomposable_dim(d)?,
                    witness: self.square_decomposition(d)?,
                })
            })
            .collect()
    }

    /// A decomposition of `e` if it lies in `A_{>0}²`.
    pub fn decompose(&self, e: &AlgebraElement) -> Result<Option<Decomposition>> {
        if e.degree == 0 {
            return Err(Error::ZeroDegree);
        }
        self.check(e.degree)?;
        let d = e.degree;
        let target = self.convert(e, Basis::Milnor)?;
        let span = self.decomposable_span(d);
        let Some(combo) = span.solver.solve(&target.coords) else {
            return Ok(None);
        };
        let terms = combo
            .iter_ones()
            .map(|k| {
                let (j, r) = span.labels[k];
                let right = AlgebraElement::new(d - j, Basis::Milnor, BitVec::unit(self.dim(d - j), r));
                Ok((self.sq(j)?, right))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(Decomposition { terms }))
    }

    pub fn is_decomposable(&self, e: &AlgebraElement) -> Result<bool> {
        Ok(self.decompose(e)?.is_some())
    }

    /// Human-readable form, e.g. `Sq6 + Sq5 Sq1` or `Sq(0,1)`.
    pub fn format(&self, e: &AlgebraElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for i in e.coords.iter_ones() {
            let mut s = String::new();
            match e.basis {
                Basis::Admissible => {
                    let w = &self.admissible[e.degree][i];
                    if w.is_empty() {
                        s.push('1');
                    }
                    for (k, x) in w.iter().enumerate() {
                        if k > 0 {
                            s.push(' ');
                        }
                        let _ = write!(s, "Sq{x}");
                    }
                }
                Basis::Milnor => {
                    let p = &self.milnor[e.degree][i];
                    let inner = p.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
                    let _ = write!(s, "Sq({inner})");
                }
            }
            terms.push(s);
        }
        terms.join(" + ")
    }

    /// Basis lists and generator actions through degree `d_max`.
    pub fn table_dump(&self, d_max: usize) -> Result<TableDump> {
        self.check(d_max)?;
        let degrees = (0..=d_max)
            .map(|d| {
                let mut actions = Vec::new();
                let mut k = 0;
                while d + (1 << k) <= d_max {
                    let g = 1usize << k;
                    let rows = (0..self.dim(d)).map(|b| self.product(g, 0, d, b).to_string()).collect();
                    actions.push(GeneratorAction { square: g, rows });
                    k += 1;
                }
                DegreeDump {
                    degree: d,
                    admissible: self.admissible[d].clone(),
                    milnor: self.milnor[d].clone(),
                    generator_actions: actions,
                }
            })
            .collect();
        Ok(TableDump { max_degree: d_max, degrees })
    }
}

/// Machine-readable snapshot of the degree tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDump {
    pub max_degree: usize,
    pub degrees: Vec<DegreeDump>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDump {
    pub degree: usize,
    pub admissible: Vec<Vec<u32>>,
    pub milnor: Vec<Vec<u32>>,
    /// Left multiplication by `Sq^square` from this degree, one bit string per
    /// admissible basis element, in admissible coordinates of the target degree.
    pub generator_actions: Vec<GeneratorAction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorAction {
    pub square: usize,
    pub rows: Vec<String>,
}

#[cfg(test)]
mod tests;
