use std::ops::Range;
use std::sync::Arc;

use super::{GradedModule, Module};
use crate::algebra::SteenrodAlgebra;
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec};

/// A free module on generators of nondecreasing degree, truncated at `t_max`.
///
/// In degree `t` the basis is the concatenation, over generators `g` with
/// `|g| ≤ t` in order, of the admissible basis of `A^{t−|g|}` applied to `g`.
#[derive(Clone, Debug)]
pub struct FreeModule {
    algebra: Arc<SteenrodAlgebra>,
    t_max: usize,
    gen_degrees: Vec<usize>,
    dims: Vec<usize>,
    offsets: Vec<Vec<usize>>,
}

impl FreeModule {
    pub fn new(algebra: Arc<SteenrodAlgebra>, t_max: usize) -> Self {
        assert!(t_max <= algebra.max_degree(), "free module bound past the algebra table");
        Self {
            algebra,
            t_max,
            gen_degrees: Vec::new(),
            dims: vec![0; t_max + 1],
            offsets: vec![Vec::new(); t_max + 1],
        }
    }

    pub fn with_generators(algebra: Arc<SteenrodAlgebra>, t_max: usize, degrees: &[usize]) -> Result<Self> {
        let mut m = Self::new(algebra, t_max);
        for &d in degrees {
            m.add_generator(d)?;
        }
        Ok(m)
    }

    /// Appends a generator; degrees must be added in nondecreasing order.
    pub fn add_generator(&mut self, degree: usize) -> Result<usize> {
        if degree > self.t_max {
            return Err(Error::Bounds(format!("generator degree {degree} above {}", self.t_max)));
        }
        if self.gen_degrees.last().is_some_and(|&last| last > degree) {
            return Err(Error::InvalidModule("generator degrees must be nondecreasing".into()));
        }
        for t in degree..=self.t_max {
            self.offsets[t].push(self.dims[t]);
            self.dims[t] += self.algebra.dim(t - degree);
        }
        self.gen_degrees.push(degree);
        Ok(self.gen_degrees.len() - 1)
    }

    pub fn gen_degrees(&self) -> &[usize] {
        &self.gen_degrees
    }

    pub fn num_gens(&self) -> usize {
        self.gen_degrees.len()
    }

    /// Generators of exactly degree `t`.
    pub fn gens_in_degree(&self, t: usize) -> Range<usize> {
        let start = self.gen_degrees.partition_point(|&d| d < t);
        let end = self.gen_degrees.partition_point(|&d| d <= t);
        start..end
    }

    /// Position of `op · g` in the degree `|g| + |op|` basis.
    pub fn basis_index(&self, g: usize, op: usize, t: usize) -> usize {
        self.offsets[t][g] + op
    }

    /// The generator and operation index of basis element `i` of degree `t`.
    pub fn decompose(&self, t: usize, i: usize) -> (usize, usize) {
        let offsets = &self.offsets[t];
        let g = offsets.partition_point(|&o| o <= i) - 1;
        (g, i - offsets[g])
    }

    /// The basis vector for generator `g` itself.
    pub fn generator(&self, g: usize) -> BitVec {
        let d = self.gen_degrees[g];
        BitVec::unit(self.dims[d], self.offsets[d][g])
    }

    /// Coefficient of the generator `g` (with unit operation) in `x ∈ F^t`.
    pub fn unit_coefficient(&self, g: usize, x: &BitVec) -> bool {
        x.get(self.offsets[self.gen_degrees[g]][g])
    }

    /// The same generators, regarded as a module given by generator actions.
    pub fn to_module(&self) -> GradedModule {
        GradedModule::from_fn(self.algebra.clone(), self.dims.clone(), |g, d| {
            let rows: Vec<BitVec> = (0..self.dims[d]).map(|i| self.act(g, 0, d, &BitVec::unit(self.dims[d], i))).collect();
            BitMatrix::from_rows(&rows, self.dims[d + g])
        })
    }

    /// Sends each generator to the given element of `target`, degree by degree.
    ///
    /// Row `i` of the degree-`t` matrix is the image of basis element `i`.
    pub fn map_matrix(&self, t: usize, images: &[BitVec], target: &dyn Module) -> BitMatrix {
        let rows: Vec<BitVec> = (0..self.dims[t])
            .map(|i| {
                let (g, op) = self.decompose(t, i);
                let e = self.gen_degrees[g];
                target.act(t - e, op, e, &images[g])
            })
            .collect();
        BitMatrix::from_rows(&rows, target.dim(t))
    }

    /// Applies the homomorphism determined by generator images to `x ∈ F^t`.
    pub fn apply(&self, t: usize, x: &BitVec, images: &[BitVec], target: &dyn Module) -> BitVec {
        let mut out = BitVec::zeros(target.dim(t));
        for i in x.iter_ones() {
            let (g, op) = self.decompose(t, i);
            let e = self.gen_degrees[g];
            out.add_assign(&target.act(t - e, op, e, &images[g]));
        }
        out
    }
}

impl Module for FreeModule {
    fn algebra(&self) -> &Arc<SteenrodAlgebra> {
        &self.algebra
    }

    fn t_max(&self) -> usize {
        self.t_max
    }

    fn dim(&self, t: usize) -> usize {
        self.dims[t]
    }

    fn act(&self, op_degree: usize, op: usize, t: usize, x: &BitVec) -> BitVec {
        let target = t + op_degree;
        let mut out = BitVec::zeros(self.dims[target]);
        for i in x.iter_ones() {
            let (g, a) = self.decompose(t, i);
            let e = self.gen_degrees[g];
            let product = self.algebra.product(op_degree, op, t - e, a);
            out.add_at(self.offsets[target][g], product);
        }
        out
    }
}
