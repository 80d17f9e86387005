//! Degreewise-finite graded left modules over the Steenrod algebra.

mod builtins;
mod free;
mod hom;
pub mod spec;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{adem, AlgebraElement, Basis, SteenrodAlgebra};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, RowSolver};

pub use builtins::{build_a, build_a_mod_sq1, sq_map, sqz_map, trivial_module, u_map};
pub use free::FreeModule;
pub use hom::{min_generator_degrees, ModuleHom, SesFactorization, ShortExact};

/// Anything the algebra acts on degreewise through a bound.
pub trait Module: Send + Sync {
    fn algebra(&self) -> &Arc<SteenrodAlgebra>;
    fn t_max(&self) -> usize;
    fn dim(&self, t: usize) -> usize;
    /// Applies the admissible basis element `op` of `A^op_degree` to `x ∈ M^t`.
    fn act(&self, op_degree: usize, op: usize, t: usize, x: &BitVec) -> BitVec;
}

/// A module given by its dimensions and the action of each `Sq^{2^k}`.
///
/// `actions[k][d]` is the matrix of `Sq^{2^k}: M^d → M^{d+2^k}` in row
/// convention and exists for `d + 2^k ≤ t_max`. Other operations are derived
/// from these and cached.
pub struct GradedModule {
    algebra: Arc<SteenrodAlgebra>,
    dims: Vec<usize>,
    actions: Vec<Vec<BitMatrix>>,
    squares: Mutex<HashMap<(usize, usize), Arc<BitMatrix>>>,
    monomials: Mutex<HashMap<(usize, usize, usize), Arc<BitMatrix>>>,
}

impl Clone for GradedModule {
    fn clone(&self) -> Self {
        Self::from_parts(self.algebra.clone(), self.dims.clone(), self.actions.clone())
    }
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedModule").field("dims", &self.dims).finish()
    }
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.actions == other.actions
    }
}

fn generator_count(t_max: usize) -> usize {
    let mut k = 0;
    while t_max > 0 && (1usize << k) <= t_max {
        k += 1;
    }
    k
}

impl GradedModule {
    fn from_parts(algebra: Arc<SteenrodAlgebra>, dims: Vec<usize>, actions: Vec<Vec<BitMatrix>>) -> Self {
        Self {
            algebra,
            dims,
            actions,
            squares: Mutex::new(HashMap::new()),
            monomials: Mutex::new(HashMap::new()),
        }
    }

    /// Builds a module from `dims[0..=t_max]` and generator actions, checking shapes.
    pub fn new(algebra: Arc<SteenrodAlgebra>, dims: Vec<usize>, actions: Vec<Vec<BitMatrix>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidModule("no degrees".into()));
        }
        let t_max = dims.len() - 1;
        if t_max > algebra.max_degree() {
            return Err(Error::DegreeOverflow {
                degree: t_max,
                bound: algebra.max_degree(),
            });
        }
        if actions.len() != generator_count(t_max) {
            return Err(Error::InvalidModule(format!(
                "expected {} generator actions, got {}",
                generator_count(t_max),
                actions.len()
            )));
        }
        for (k, per_degree) in actions.iter().enumerate() {
            let g = 1 << k;
            if per_degree.len() != t_max + 1 - g {
                return Err(Error::InvalidModule(format!("Sq{g} has {} degrees", per_degree.len())));
            }
            for (d, m) in per_degree.iter().enumerate() {
                if m.rows() != dims[d] || m.cols() != dims[d + g] {
                    return Err(Error::InvalidModule(format!("Sq{g} from degree {d} has the wrong shape")));
                }
            }
        }
        Ok(Self::from_parts(algebra, dims, actions))
    }

    /// The zero module through `t_max`.
    pub fn zero(algebra: Arc<SteenrodAlgebra>, t_max: usize) -> Self {
        Self::from_fn(algebra, vec![0; t_max + 1], |_, _| BitMatrix::zeros(0, 0))
    }

    fn from_fn(algebra: Arc<SteenrodAlgebra>, dims: Vec<usize>, mut f: impl FnMut(usize, usize) -> BitMatrix) -> Self {
        let t_max = dims.len() - 1;
        let actions = (0..generator_count(t_max))
            .map(|k| {
                let g = 1 << k;
                (0..=t_max - g)
                    .map(|d| {
                        if dims[d] == 0 || dims[d + g] == 0 {
                            BitMatrix::zeros(dims[d], dims[d + g])
                        } else {
                            f(g, d)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_parts(algebra, dims, actions)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn generator_action(&self, k: usize, d: usize) -> &BitMatrix {
        &self.actions[k][d]
    }

    /// Matrix of `Sq^n: M^d → M^{d+n}`.
    pub fn square(&self, n: usize, d: usize) -> Arc<BitMatrix> {
        assert!(d + n <= self.t_max(), "Sq{n} from degree {d} leaves the bound");
        if n == 0 {
            return Arc::new(BitMatrix::identity(self.dims[d]));
        }
        if n.is_power_of_two() {
            return Arc::new(self.actions[n.trailing_zeros() as usize][d].clone());
        }
        if let Some(m) = self.squares.lock().unwrap().get(&(n, d)) {
            return m.clone();
        }
        // Sq^n = Sq^m Sq^{2^k} + Σ_{j≥1} Sq^{n−j} Sq^j with n = 2^k + m.
        let top = 1usize << (usize::BITS - 1 - n.leading_zeros());
        let m = n - top;
        let mut acc = self.actions[top.trailing_zeros() as usize][d].mul(&self.square(m, d + top));
        for pair in adem::adem_relation(m as u32, top as u32).into_iter().skip(1) {
            let (c, j) = (pair[0] as usize, pair[1] as usize);
            acc = acc.add(&self.square(j, d).mul(&self.square(c, d + j)));
        }
        let acc = Arc::new(acc);
        self.squares.lock().unwrap().insert((n, d), acc.clone());
        acc
    }

    /// Matrix of the admissible basis element `op ∈ A^op_degree` acting from degree `d`.
    pub fn monomial(&self, op_degree: usize, op: usize, d: usize) -> Arc<BitMatrix> {
        if op_degree == 0 {
            return Arc::new(BitMatrix::identity(self.dims[d]));
        }
        if let Some(m) = self.monomials.lock().unwrap().get(&(op_degree, op, d)) {
            return m.clone();
        }
        let word = &self.algebra.admissible_basis(op_degree)[op];
        let first = word[0] as usize;
        let tail = &word[1..];
        let tail_degree = op_degree - first;
        let tail_index = self.algebra.admissible_index(tail).expect("tail of an admissible word");
        let m = Arc::new(self.monomial(tail_degree, tail_index, d).mul(&self.square(first, d + tail_degree)));
        self.monomials.lock().unwrap().insert((op_degree, op, d), m.clone());
        m
    }

    /// Applies an algebra element to `x ∈ M^t`.
    pub fn act_element(&self, e: &AlgebraElement, t: usize, x: &BitVec) -> Result<BitVec> {
        let e = self.algebra.convert(e, Basis::Admissible)?;
        let target = t + e.degree();
        if target > self.t_max() {
            return Err(Error::DegreeOverflow {
                degree: target,
                bound: self.t_max(),
            });
        }
        let mut out = BitVec::zeros(self.dims[target]);
        for op in e.coords().iter_ones() {
            out.add_assign(&self.act(e.degree(), op, t, x));
        }
        Ok(out)
    }

    /// Checks every Adem relation `Sq^a Sq^b` with `a < 2b` on every degree in range.
    pub fn validate(&self) -> Result<()> {
        let t_max = self.t_max();
        for d in 0..=t_max {
            if self.dims[d] == 0 {
                continue;
            }
            for b in 1..=t_max - d {
                for a in 1..(2 * b).min(t_max - d - b + 1) {
                    let lhs = self.square(b, d).mul(&self.square(a, d + b));
                    let mut rhs = BitMatrix::zeros(self.dims[d], self.dims[d + a + b]);
                    for w in adem::adem_relation(a as u32, b as u32) {
                        let term = match w[..] {
                            [n] => (*self.square(n as usize, d)).clone(),
                            [c, j] => self.square(j as usize, d).mul(&self.square(c as usize, d + j as usize)),
                            _ => unreachable!(),
                        };
                        rhs = rhs.add(&term);
                    }
                    if lhs != rhs {
                        return Err(Error::InvalidModule(format!(
                            "Adem relation for Sq{a} Sq{b} fails from degree {d}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ^n M`, keeping degrees up to `t_max`.
    pub fn suspend(&self, n: usize, t_max: usize) -> Result<Self> {
        if t_max > self.t_max() + n {
            return Err(Error::Bounds(format!(
                "suspension by {n} only determines degrees up to {}",
                self.t_max() + n
            )));
        }
        let dims: Vec<usize> = (0..=t_max).map(|d| if d < n { 0 } else { self.dims[d - n] }).collect();
        let result = Self::from_fn(self.algebra.clone(), dims.clone(), |g, d| {
            if d < n {
                BitMatrix::zeros(dims[d], dims[d + g])
            } else {
                self.actions[g.trailing_zeros() as usize][d - n].clone()
            }
        });
        Ok(result)
    }

    /// The same module with degrees above `t_max` forgotten.
    pub fn truncate(&self, t_max: usize) -> Self {
        let t_max = t_max.min(self.t_max());
        Self::from_fn(self.algebra.clone(), self.dims[..=t_max].to_vec(), |g, d| {
            self.actions[g.trailing_zeros() as usize][d].clone()
        })
    }

    /// Degreewise direct sum, truncated at the smallest bound among the summands.
    pub fn direct_sum(summands: &[&GradedModule]) -> Result<Self> {
        let first = summands
            .first()
            .ok_or_else(|| Error::InvalidModule("empty direct sum".into()))?;
        let t_max = summands.iter().map(|m| m.t_max()).min().unwrap();
        let dims: Vec<usize> = (0..=t_max).map(|d| summands.iter().map(|m| m.dims[d]).sum()).collect();
        Ok(Self::from_fn(first.algebra.clone(), dims.clone(), |g, d| {
            let k = g.trailing_zeros() as usize;
            let mut out = BitMatrix::zeros(dims[d], dims[d + g]);
            let (mut r0, mut c0) = (0, 0);
            for m in summands {
                let block = &m.actions[k][d];
                for r in 0..block.rows() {
                    for c in block.row(r).iter_ones() {
                        out.set(r0 + r, c0 + c, true);
                    }
                }
                r0 += m.dims[d];
                c0 += m.dims[d + g];
            }
            out
        }))
    }

    /// The submodule spanned degreewise by the rows of `bases[d]`, with its inclusion.
    pub fn submodule(self: &Arc<Self>, bases: Vec<BitMatrix>) -> Result<(Arc<GradedModule>, ModuleHom)> {
        let t_max = self.t_max();
        assert_eq!(bases.len(), t_max + 1);
        let solvers: Vec<RowSolver> = bases.iter().map(RowSolver::new).collect();
        for (d, s) in solvers.iter().enumerate() {
            if s.rank() != bases[d].rows() {
                return Err(Error::InvalidModule(format!("dependent spanning rows in degree {d}")));
            }
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.rows()).collect();
        let mut failure = None;
        let sub = GradedModule::from_fn(self.algebra.clone(), dims.clone(), |g, d| {
            let act = &self.actions[g.trailing_zeros() as usize][d];
            let rows: Vec<BitVec> = (0..dims[d])
                .map(|i| {
                    let image = bases[d].row(i).mul_matrix(act);
                    solvers[d + g].solve(&image).unwrap_or_else(|| {
                        failure.get_or_insert((g, d));
                        BitVec::zeros(dims[d + g])
                    })
                })
                .collect();
            BitMatrix::from_rows(&rows, dims[d + g])
        });
        if let Some((g, d)) = failure {
            return Err(Error::InvalidModule(format!("subspace not closed under Sq{g} from degree {d}")));
        }
        let sub = Arc::new(sub);
        let inclusion = ModuleHom::new(sub.clone(), self.clone(), bases)?;
        Ok((sub, inclusion))
    }

    /// `M / S` for a submodule spanned degreewise by the rows of `bases[d]`,
    /// with the projection.
    pub fn quotient(self: &Arc<Self>, bases: &[BitMatrix]) -> Result<(Arc<GradedModule>, ModuleHom)> {
        let t_max = self.t_max();
        assert_eq!(bases.len(), t_max + 1);
        let split: Vec<(BitMatrix, BitMatrix)> = bases
            .iter()
            .enumerate()
            .map(|(d, b)| crate::f2::quotient_basis(b, self.dims[d]))
            .collect();
        let dims: Vec<usize> = split.iter().map(|(reps, _)| reps.rows()).collect();
        let q = GradedModule::from_fn(self.algebra.clone(), dims, |g, d| {
            let act = &self.actions[g.trailing_zeros() as usize][d];
            split[d].0.mul(act).mul(&split[d + g].1)
        });
        let q = Arc::new(q);
        let projection = ModuleHom::new(self.clone(), q.clone(), split.into_iter().map(|(_, p)| p).collect())?;
        // The spanning set must be a submodule for the quotient action to be
        // well defined; the projection commuting with the actions checks this.
        projection.check_commutes()?;
        Ok((q, projection))
    }

    /// The submodule generated by the given elements `(degree, vector)`.
    pub fn generated_submodule(self: &Arc<Self>, elements: &[(usize, BitVec)]) -> Result<Vec<BitMatrix>> {
        let t_max = self.t_max();
        let mut solvers: Vec<RowSolver> = (0..=t_max).map(|d| RowSolver::empty(0, self.dims[d])).collect();
        let mut bases: Vec<Vec<BitVec>> = vec![Vec::new(); t_max + 1];
        for d in 0..=t_max {
            for (e, x) in elements {
                if *e > d {
                    continue;
                }
                for op in 0..self.algebra.dim(d - e) {
                    let y = self.act(d - e, op, *e, x);
                    if solvers[d].insert(y.clone(), BitVec::zeros(0)) {
                        bases[d].push(y);
                    }
                }
            }
        }
        Ok(bases
            .into_iter()
            .enumerate()
            .map(|(d, rows)| BitMatrix::from_rows(&rows, self.dims[d]))
            .collect())
    }
}

impl Module for GradedModule {
    fn algebra(&self) -> &Arc<SteenrodAlgebra> {
        &self.algebra
    }

    fn t_max(&self) -> usize {
        self.dims.len() - 1
    }

    fn dim(&self, t: usize) -> usize {
        self.dims[t]
    }

    fn act(&self, op_degree: usize, op: usize, t: usize, x: &BitVec) -> BitVec {
        if x.is_zero() {
            return BitVec::zeros(self.dims[t + op_degree]);
        }
        x.mul_matrix(&self.monomial(op_degree, op, t))
    }
}

#[cfg(test)]
mod tests;
