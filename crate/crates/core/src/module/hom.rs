use std::sync::Arc;

use super::{GradedModule, Module};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, RowSolver};

/// A degree-preserving module map, one matrix per degree (row convention).
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: Arc<GradedModule>,
    target: Arc<GradedModule>,
    matrices: Vec<BitMatrix>,
}

impl ModuleHom {
    pub fn new(source: Arc<GradedModule>, target: Arc<GradedModule>, matrices: Vec<BitMatrix>) -> Result<Self> {
        if source.t_max() != target.t_max() {
            return Err(Error::InvalidMap(format!(
                "source bound {} differs from target bound {}",
                source.t_max(),
                target.t_max()
            )));
        }
        if matrices.len() != source.t_max() + 1 {
            return Err(Error::InvalidMap("one matrix per degree is required".into()));
        }
        for (d, m) in matrices.iter().enumerate() {
            if m.rows() != source.dim(d) || m.cols() != target.dim(d) {
                return Err(Error::InvalidMap(format!("matrix in degree {d} has the wrong shape")));
            }
        }
        Ok(Self { source, target, matrices })
    }

    pub fn identity(m: Arc<GradedModule>) -> Self {
        let matrices = m.dims().iter().map(|&n| BitMatrix::identity(n)).collect();
        Self {
            source: m.clone(),
            target: m,
            matrices,
        }
    }

    pub fn zero(source: Arc<GradedModule>, target: Arc<GradedModule>) -> Result<Self> {
        let matrices = (0..=source.t_max()).map(|d| BitMatrix::zeros(source.dim(d), target.dim(d))).collect();
        Self::new(source, target, matrices)
    }

    pub fn source(&self) -> &Arc<GradedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        &self.target
    }

    pub fn t_max(&self) -> usize {
        self.source.t_max()
    }

    pub fn matrix(&self, d: usize) -> &BitMatrix {
        &self.matrices[d]
    }

    pub fn matrices(&self) -> &[BitMatrix] {
        &self.matrices
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &ModuleHom) -> Result<ModuleHom> {
        if !Arc::ptr_eq(&self.target, &then.source) && *self.target != *then.source {
            return Err(Error::InvalidMap("composable maps must share the middle module".into()));
        }
        let matrices = self.matrices.iter().zip(&then.matrices).map(|(a, b)| a.mul(b)).collect();
        ModuleHom::new(self.source.clone(), then.target.clone(), matrices)
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(|m| m.is_zero())
    }

    /// Checks that the map commutes with every `Sq^{2^k}` in every degree.
    pub fn check_commutes(&self) -> Result<()> {
        let t_max = self.t_max();
        let mut k = 0;
        while (1usize << k) <= t_max {
            let g = 1 << k;
            for d in 0..=t_max - g {
                let left = self.source.generator_action(k, d).mul(&self.matrices[d + g]);
                let right = self.matrices[d].mul(self.target.generator_action(k, d));
                if left != right {
                    return Err(Error::InvalidMap(format!("does not commute with Sq{g} from degree {d}")));
                }
            }
            k += 1;
        }
        Ok(())
    }

    /// The kernel with its inclusion into the source.
    pub fn kernel(&self) -> Result<(Arc<GradedModule>, ModuleHom)> {
        let bases = self.matrices.iter().map(|m| m.left_kernel()).collect();
        self.source.submodule(bases)
    }

    /// The image, with the corestriction `source → I` and the inclusion `I → target`.
    pub fn image(&self) -> Result<(Arc<GradedModule>, ModuleHom, ModuleHom)> {
        let bases: Vec<BitMatrix> = self.matrices.iter().map(|m| m.row_space()).collect();
        let (image, inclusion) = self.target.submodule(bases.clone())?;
        let onto = self
            .matrices
            .iter()
            .zip(&bases)
            .map(|(m, b)| {
                let solver = RowSolver::new(b);
                let rows: Vec<_> = m.row_iter().map(|r| solver.solve(&r).expect("row in its own row space")).collect();
                BitMatrix::from_rows(&rows, b.rows())
            })
            .collect();
        let onto = ModuleHom::new(self.source.clone(), image.clone(), onto)?;
        Ok((image, onto, inclusion))
    }

    /// The cokernel with the projection from the target.
    pub fn cokernel(&self) -> Result<(Arc<GradedModule>, ModuleHom)> {
        let bases: Vec<BitMatrix> = self.matrices.iter().map(|m| m.row_space()).collect();
        self.target.quotient(&bases)
    }

    /// Factors `f: N → M` as `0 → K → N → I → 0` and `0 → I → M → C → 0`.
    pub fn factor_les(&self) -> Result<SesFactorization> {
        self.check_commutes()?;
        let (k, k_to_n) = self.kernel()?;
        let (i, n_to_i, i_to_m) = self.image()?;
        let (c, m_to_c) = self.cokernel()?;
        let fac = SesFactorization {
            map: self.clone(),
            k,
            i,
            c,
            k_to_n,
            n_to_i,
            i_to_m,
            m_to_c,
        };
        fac.first().check()?;
        fac.second().check()?;
        Ok(fac)
    }
}

/// `0 → sub → middle → quotient → 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub inclusion: ModuleHom,
    pub projection: ModuleHom,
}

impl ShortExact {
    pub fn new(inclusion: ModuleHom, projection: ModuleHom) -> Result<Self> {
        let ses = Self { inclusion, projection };
        ses.check()?;
        Ok(ses)
    }

    pub fn sub(&self) -> &Arc<GradedModule> {
        self.inclusion.source()
    }

    pub fn middle(&self) -> &Arc<GradedModule> {
        self.inclusion.target()
    }

    pub fn quotient(&self) -> &Arc<GradedModule> {
        self.projection.target()
    }

    /// Degreewise exactness plus compatibility with the actions.
    pub fn check(&self) -> Result<()> {
        self.inclusion.check_commutes()?;
        self.projection.check_commutes()?;
        for d in 0..=self.inclusion.t_max() {
            let i = self.inclusion.matrix(d);
            let p = self.projection.matrix(d);
            let (a, b, c) = (self.sub().dim(d), self.middle().dim(d), self.quotient().dim(d));
            if i.rank() != a || p.rank() != c || a + c != b || !i.mul(p).is_zero() {
                return Err(Error::NotExact(format!("short sequence fails in degree {d}")));
            }
        }
        Ok(())
    }
}

/// The kernel, image and cokernel of a map `f: N → M` with their structure maps.
#[derive(Clone, Debug)]
pub struct SesFactorization {
    pub map: ModuleHom,
    pub k: Arc<GradedModule>,
    pub i: Arc<GradedModule>,
    pub c: Arc<GradedModule>,
    pub k_to_n: ModuleHom,
    pub n_to_i: ModuleHom,
    pub i_to_m: ModuleHom,
    pub m_to_c: ModuleHom,
}

impl SesFactorization {
    /// `0 → K → N → I → 0`.
    pub fn first(&self) -> ShortExact {
        ShortExact {
            inclusion: self.k_to_n.clone(),
            projection: self.n_to_i.clone(),
        }
    }

    /// `0 → I → M → C → 0`.
    pub fn second(&self) -> ShortExact {
        ShortExact {
            inclusion: self.i_to_m.clone(),
            projection: self.m_to_c.clone(),
        }
    }
}

/// Degrees of a minimal generating set, with multiplicity.
pub fn min_generator_degrees(m: &GradedModule) -> Vec<usize> {
    let mut out = Vec::new();
    for d in 0..=m.t_max() {
        let mut solver = RowSolver::empty(0, m.dim(d));
        let mut k = 0;
        while (1usize << k) <= d {
            let g = 1 << k;
            for row in m.generator_action(k, d - g).row_iter() {
                solver.insert(row, crate::f2::BitVec::zeros(0));
            }
            k += 1;
        }
        out.extend(std::iter::repeat_n(d, m.dim(d) - solver.rank()));
    }
    out
}
