//! Minimal free resolutions, Ext charts and chain maps.

mod chain;
mod chart;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, RowSolver};
use crate::module::{FreeModule, GradedModule, Module};

pub use chain::{lift_cocycle, lift_hom, ChainMap};
pub use chart::Chart;

/// One free stage `P_s` with its differential into the previous stage.
#[derive(Debug)]
pub struct Stage {
    free: FreeModule,
    /// `d(g)` for each generator, in the target's degree `|g|`.
    images: Vec<BitVec>,
    /// The differential in degree `t`, row convention.
    matrices: Vec<BitMatrix>,
    solvers: Vec<OnceLock<RowSolver>>,
}

impl Clone for Stage {
    fn clone(&self) -> Self {
        Stage::new(self.free.clone(), self.images.clone(), self.matrices.clone())
    }
}

impl Stage {
    fn new(free: FreeModule, images: Vec<BitVec>, matrices: Vec<BitMatrix>) -> Self {
        let solvers = (0..matrices.len()).map(|_| OnceLock::new()).collect();
        Self {
            free,
            images,
            matrices,
            solvers,
        }
    }

    pub fn free(&self) -> &FreeModule {
        &self.free
    }

    pub fn images(&self) -> &[BitVec] {
        &self.images
    }

    pub fn matrix(&self, t: usize) -> &BitMatrix {
        &self.matrices[t]
    }

    /// Solves `d(x) = y` in degree `t`, with `x` supported on independent rows.
    pub fn solve(&self, t: usize, y: &BitVec) -> Option<BitVec> {
        self.solvers[t].get_or_init(|| RowSolver::new(&self.matrices[t])).solve(y)
    }
}

/// A minimal free resolution `⋯ → P_1 → P_0 → M` through `(s_max, t_max)`.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: Arc<GradedModule>,
    s_max: usize,
    t_max: usize,
    stages: Vec<Stage>,
}

/// Outcome of a verifier, with the first failing bidegree in `(s, t)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub first_failure: Option<(usize, usize)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Resolves `module` through homological degree `s_max` and internal degree `t_max`.
pub fn minimal_resolution(module: Arc<GradedModule>, s_max: usize, t_max: usize) -> Result<Resolution> {
    if t_max > module.t_max() {
        return Err(Error::DegreeOverflow {
            degree: t_max,
            bound: module.t_max(),
        });
    }
    let module = if t_max < module.t_max() { Arc::new(module.truncate(t_max)) } else { module };
    let mut r = Resolution {
        module,
        s_max,
        t_max,
        stages: Vec::with_capacity(s_max + 1),
    };
    for s in 0..=s_max {
        let stage = r.build_stage(s);
        r.stages.push(stage);
    }
    Ok(r)
}

impl Resolution {
    fn build_stage(&self, s: usize) -> Stage {
        let algebra = self.module.algebra().clone();
        let mut free = FreeModule::new(algebra, self.t_max);
        let mut images = Vec::new();
        let mut matrices = Vec::with_capacity(self.t_max + 1);
        for t in 0..=self.t_max {
            let target = self.target(s);
            let cycles = self.cycles(s, t);
            let existing = free.map_matrix(t, &images, target);
            let mut solver = RowSolver::empty(0, target.dim(t));
            for row in existing.row_iter() {
                solver.insert(row, BitVec::zeros(0));
            }
            let mut rows: Vec<BitVec> = existing.row_iter().collect();
            for k in cycles.row_iter() {
                if solver.insert(k.clone(), BitVec::zeros(0)) {
                    free.add_generator(t).expect("degree within bound");
                    images.push(k.clone());
                    rows.push(k);
                }
            }
            matrices.push(BitMatrix::from_rows(&rows, target.dim(t)));
        }
        Stage::new(free, images, matrices)
    }

    /// What `P_s` must cover in degree `t`: all of `M^t` for `s = 0`, otherwise
    /// the kernel of `d_{s−1}`.
    fn cycles(&self, s: usize, t: usize) -> BitMatrix {
        if s == 0 {
            BitMatrix::identity(self.module.dim(t))
        } else {
            self.stages[s - 1].matrices[t].left_kernel()
        }
    }

    /// The codomain of `d_s`: the module for `s = 0`, else `P_{s−1}`.
    pub fn target(&self, s: usize) -> &dyn Module {
        if s == 0 {
            self.module.as_ref()
        } else {
            &self.stages[s - 1].free
        }
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn stage(&self, s: usize) -> &Stage {
        &self.stages[s]
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// Generators of `P_s` in degree exactly `t`, as indices into the stage.
    pub fn generators(&self, s: usize, t: usize) -> std::ops::Range<usize> {
        self.stages[s].free.gens_in_degree(t)
    }

    pub fn num_generators(&self, s: usize, t: usize) -> usize {
        if s > self.s_max || t > self.t_max {
            return 0;
        }
        self.generators(s, t).len()
    }

    /// Ext dimensions read from generator counts. Rejects non-minimal input.
    pub fn ext_chart(&self) -> Result<Chart> {
        if let Some((s, t)) = self.verify_minimal().first_failure {
            return Err(Error::NotMinimal { s, t });
        }
        Ok(self.generator_chart())
    }

    /// Generator counts without the minimality check.
    pub fn generator_chart(&self) -> Chart {
        let mut chart = Chart::new(self.s_max, self.t_max);
        for s in 0..=self.s_max {
            for t in 0..=self.t_max {
                chart.set(s, t, self.num_generators(s, t));
            }
        }
        chart
    }

    /// Checks that no differential has a unit coefficient and that each
    /// degree adds exactly as many generators as the cycles need.
    pub fn verify_minimal(&self) -> VerifyReport {
        let mut checked = 0;
        for (s, stage) in self.stages.iter().enumerate() {
            for t in 0..=self.t_max {
                checked += 1;
                let new = stage.free.gens_in_degree(t);
                if s > 0 {
                    let prev = &self.stages[s - 1].free;
                    let units = new
                        .clone()
                        .any(|g| prev.gens_in_degree(t).any(|h| prev.unit_coefficient(h, &stage.images[g])));
                    if units {
                        return VerifyReport {
                            checked,
                            first_failure: Some((s, t)),
                        };
                    }
                }
                // New generators come last in each degree, so the leading rows
                // are the decomposable part of the image.
                let m = &stage.matrices[t];
                let lower: Vec<BitVec> = (0..m.rows() - new.len()).map(|r| m.row(r)).collect();
                let decomposable = BitMatrix::from_rows(&lower, m.cols()).rank();
                let cycles = self.cycles(s, t).rows();
                if new.len() + decomposable != cycles {
                    return VerifyReport {
                        checked,
                        first_failure: Some((s, t)),
                    };
                }
            }
        }
        VerifyReport {
            checked,
            first_failure: None,
        }
    }

    /// Checks `d_{s−1} d_s = 0` and that `d_s` hits every cycle, degree by degree.
    pub fn verify_exact(&self) -> VerifyReport {
        let mut checked = 0;
        for (s, stage) in self.stages.iter().enumerate() {
            for t in 0..=self.t_max {
                checked += 1;
                let m = &stage.matrices[t];
                let composite_zero = s == 0 || m.mul(&self.stages[s - 1].matrices[t]).is_zero();
                if !composite_zero || m.rank() != self.cycles(s, t).rows() {
                    return VerifyReport {
                        checked,
                        first_failure: Some((s, t)),
                    };
                }
            }
        }
        VerifyReport {
            checked,
            first_failure: None,
        }
    }

    /// A copy with one extra coefficient flipped in `d(g)` for generator `g`
    /// of stage `s`: the coefficient of basis element `index` of the target.
    pub fn with_flipped_entry(&self, s: usize, g: usize, index: usize) -> Resolution {
        let mut out = self.clone();
        let stage = &self.stages[s];
        let mut images = stage.images.clone();
        images[g].flip(index);
        out.stages[s] = self.rebuild_stage(s, stage.free.clone(), images);
        out
    }

    /// A copy keeping stages up to `s`, with stage `s` cut below degree `t0`.
    pub fn truncated(&self, s: usize, t0: usize) -> Resolution {
        let mut out = self.clone();
        out.stages.truncate(s + 1);
        out.s_max = s;
        let stage = &self.stages[s];
        let keep = stage.free.gen_degrees().partition_point(|&d| d < t0);
        let free = FreeModule::with_generators(self.module.algebra().clone(), self.t_max, &stage.free.gen_degrees()[..keep])
            .expect("prefix of valid degrees");
        out.stages[s] = self.rebuild_stage(s, free, stage.images[..keep].to_vec());
        out
    }

    fn rebuild_stage(&self, s: usize, free: FreeModule, images: Vec<BitVec>) -> Stage {
        let target = self.target(s);
        let matrices = (0..=self.t_max).map(|t| free.map_matrix(t, &images, target)).collect();
        Stage::new(free, images, matrices)
    }

    /// Serializable generator lists and differentials.
    pub fn to_stored(&self) -> StoredResolution {
        StoredResolution {
            s_max: self.s_max,
            t_max: self.t_max,
            stages: self
                .stages
                .iter()
                .map(|st| StoredStage {
                    generator_degrees: st.free.gen_degrees().to_vec(),
                    differentials: st.images.iter().map(|v| v.to_string()).collect(),
                })
                .collect(),
        }
    }

    /// Rebuilds a resolution of `module` from stored data. The result is not
    /// verified; callers decide whether to run the verifiers.
    pub fn from_stored(module: Arc<GradedModule>, stored: &StoredResolution) -> Result<Resolution> {
        if stored.t_max > module.t_max() || stored.stages.len() != stored.s_max + 1 {
            return Err(Error::Bounds("stored resolution does not fit the module".into()));
        }
        let module = if stored.t_max < module.t_max() { Arc::new(module.truncate(stored.t_max)) } else { module };
        let mut r = Resolution {
            module,
            s_max: stored.s_max,
            t_max: stored.t_max,
            stages: Vec::new(),
        };
        for (s, st) in stored.stages.iter().enumerate() {
            let free = FreeModule::with_generators(r.module.algebra().clone(), r.t_max, &st.generator_degrees)?;
            if st.differentials.len() != free.num_gens() {
                return Err(Error::Bounds(format!("stage {s} has mismatched generator data")));
            }
            let target = r.target(s);
            let mut images = Vec::with_capacity(st.differentials.len());
            for (g, text) in st.differentials.iter().enumerate() {
                let v: BitVec = text
                    .parse()
                    .map_err(|_| Error::Bounds(format!("stage {s} generator {g}: bad bit string")))?;
                if v.len() != target.dim(free.gen_degrees()[g]) {
                    return Err(Error::Bounds(format!("stage {s} generator {g}: wrong length")));
                }
                images.push(v);
            }
            let stage = r.rebuild_stage(s, free, images);
            r.stages.push(stage);
        }
        Ok(r)
    }
}

/// On-disk form of a resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredResolution {
    pub s_max: usize,
    pub t_max: usize,
    pub stages: Vec<StoredStage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredStage {
    pub generator_degrees: Vec<usize>,
    /// Differential of each generator as a bit string over the target basis.
    pub differentials: Vec<String>,
}

#[cfg(test)]
mod tests;
