//! Connecting homomorphisms on Ext, the composite `D`, and its Yoneda form.
//!
//! For `f: N → M` with kernel `K`, image `I` and cokernel `C`, the two short
//! exact sequences `0 → K → N → I → 0` and `0 → I → M → C → 0` give
//! connecting maps `∂_IK: Ext^{s,t}(K) → Ext^{s+1,t}(I)` and
//! `∂_CI: Ext^{s,t}(I) → Ext^{s+1,t}(C)`. Their composite, reindexed by
//! `Ext^{s,t}(Σ⁻¹K) = Ext^{s,t+1}(K)`, is `D: Ext^{s,t}(Σ⁻¹K) → Ext^{s+2,t+1}(C)`.

mod exact;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, RowSolver};
use crate::module::{GradedModule, Module, ModuleHom, SesFactorization, ShortExact};
use crate::resolution::{lift_cocycle, minimal_resolution, Chart, Resolution};

pub use exact::{long_exact_check, ExtLes, LesReport, LesSlot};

/// Matrices of `∂: Ext^{s,t}(sub) → Ext^{s+1,t}(quotient)`, rows indexing
/// the generators of the sub resolution at `(s, t)` and columns those of the
/// quotient resolution at `(s+1, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingMap {
    pub s_max: usize,
    pub t_max: usize,
    pub matrices: BTreeMap<(usize, usize), BitMatrix>,
}

impl ConnectingMap {
    pub fn matrix(&self, s: usize, t: usize) -> &BitMatrix {
        &self.matrices[&(s, t)]
    }

    /// Whether `∂` is injective at `(s, t)`.
    pub fn injective_at(&self, s: usize, t: usize) -> bool {
        let m = self.matrix(s, t);
        m.rank() == m.rows()
    }

    /// Whether `∂` is an isomorphism at `(s, t)`.
    pub fn iso_at(&self, s: usize, t: usize) -> bool {
        let m = self.matrix(s, t);
        m.rows() == m.cols() && m.rank() == m.rows()
    }
}

fn preimage(solver: &RowSolver, y: &BitVec, what: &str, t: usize) -> Result<BitVec> {
    solver
        .solve(y)
        .ok_or_else(|| Error::NotExact(format!("{what} has no preimage in degree {t}")))
}

/// Per-degree solvers for `x · f = y`.
fn solvers(f: &ModuleHom) -> Vec<RowSolver> {
    f.matrices().iter().map(RowSolver::new).collect()
}

/// The connecting map of `0 → X' → X → X'' → 0` for `(s, t)` with
/// `s < stages`, from resolutions of `X'` and `X''`.
///
/// The extension cocycle `θ: P''_1 → X'` is the off-diagonal block of a
/// horseshoe resolution: lift `ε''` through `X → X''` on `P''_0`, push the
/// differential of `P''_1` through the lift and pull it back along `X' → X`.
/// Lifting `θ` to a chain map `P''_{•+1} → P'_•` gives `∂` on the minimal
/// generators.
pub fn connecting_with(ses: &ShortExact, sub: &Resolution, quotient: &Resolution, stages: usize) -> Result<ConnectingMap> {
    if quotient.s_max() < 1 {
        return Err(Error::Bounds("the quotient resolution needs at least two stages".into()));
    }
    let middle: &GradedModule = ses.middle();
    let lift_p = solvers(&ses.projection);
    let lift_i = solvers(&ses.inclusion);
    let p0 = quotient.stage(0);
    let lambda = p0
        .images()
        .iter()
        .zip(p0.free().gen_degrees())
        .map(|(e, &t)| preimage(&lift_p[t], e, "augmentation", t))
        .collect::<Result<Vec<_>>>()?;
    let p1 = quotient.stage(1);
    let t_lim = sub.t_max().min(quotient.t_max());
    let count = p1.free().gen_degrees().partition_point(|&d| d <= t_lim);
    let theta = (0..count)
        .map(|g| {
            let t = p1.free().gen_degrees()[g];
            let z = p0.free().apply(t, &p1.images()[g], &lambda, middle);
            preimage(&lift_i[t], &z, "extension cocycle", t)
        })
        .collect::<Result<Vec<_>>>()?;
    let tau = lift_cocycle(quotient, 1, sub, &theta, stages)?;
    let mut matrices = BTreeMap::new();
    for s in 0..stages {
        for t in 0..=t_lim {
            matrices.insert((s, t), tau.ext_matrix(quotient, sub, s, t));
        }
    }
    Ok(ConnectingMap {
        s_max: stages - 1,
        t_max: t_lim,
        matrices,
    })
}

/// The connecting map for `s ≤ s_max`, `t ≤ t_max`, resolving both ends.
pub fn connecting(ses: &ShortExact, s_max: usize, t_max: usize) -> Result<ConnectingMap> {
    ses.check()?;
    let sub = minimal_resolution(ses.sub().clone(), s_max, t_max)?;
    let quotient = minimal_resolution(ses.quotient().clone(), s_max + 1, t_max)?;
    connecting_with(ses, &sub, &quotient, s_max + 1)
}

/// Minimal resolutions of `K`, `I`, `C` sized for a window `s ≤ s_max`,
/// `t ≤ t_max` in the E₃ chart.
///
/// `D` reads `Ext^{s,t+1}(K)`, `Ext^{s+1,t+1}(I)` and `Ext^{s+2,t+1}(C)`, so
/// the three resolutions extend one degree and up to two stages past the
/// window.
#[derive(Clone, Debug)]
pub struct LesResolutions {
    pub fac: SesFactorization,
    pub s_max: usize,
    pub t_max: usize,
    pub k: Resolution,
    pub i: Resolution,
    pub c: Resolution,
}

impl LesResolutions {
    pub fn new(fac: &SesFactorization, s_max: usize, t_max: usize) -> Result<Self> {
        let inner = t_max + 1;
        if inner > fac.k.t_max() {
            return Err(Error::Bounds(format!(
                "the window needs modules through degree {inner}, got {}",
                fac.k.t_max()
            )));
        }
        Ok(Self {
            fac: fac.clone(),
            s_max,
            t_max,
            k: minimal_resolution(fac.k.clone(), s_max, inner)?,
            i: minimal_resolution(fac.i.clone(), s_max + 1, inner)?,
            c: minimal_resolution(fac.c.clone(), s_max + 2, inner)?,
        })
    }

    /// `∂_IK` for `s ≤ s_max`.
    pub fn boundary_ik(&self) -> Result<ConnectingMap> {
        connecting_with(&self.fac.first(), &self.k, &self.i, self.s_max + 1)
    }

    /// `∂_CI` for `s ≤ s_max + 1`.
    pub fn boundary_ci(&self) -> Result<ConnectingMap> {
        connecting_with(&self.fac.second(), &self.i, &self.c, self.s_max + 2)
    }
}

/// `D: Ext^{s,t}(Σ⁻¹K) → Ext^{s+2,t+1}(C)` for `s ≤ s_max`, `t ≤ t_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMap {
    pub s_max: usize,
    pub t_max: usize,
    /// Keyed by the source bidegree in `Σ⁻¹K` coordinates.
    pub matrices: BTreeMap<(usize, usize), BitMatrix>,
    /// `dim Ext^{s,t}(Σ⁻¹K)` in the window.
    pub source: Chart,
    /// `dim Ext^{s,t}(C)` in the window.
    pub target: Chart,
}

fn charts(k: &Resolution, c: &Resolution, s_max: usize, t_max: usize) -> (Chart, Chart) {
    let mut source = Chart::new(s_max, t_max);
    let mut target = Chart::new(s_max, t_max);
    for s in 0..=s_max {
        for t in 0..=t_max {
            source.set(s, t, k.num_generators(s, t + 1));
            target.set(s, t, c.num_generators(s, t));
        }
    }
    (source, target)
}

/// `D` as the composite `∂_CI ∘ ∂_IK` on the window `s ≤ s_max`, `t ≤ t_max`.
pub fn d_map(fac: &SesFactorization, s_max: usize, t_max: usize) -> Result<DMap> {
    d_map_with(&LesResolutions::new(fac, s_max, t_max)?)
}

pub fn d_map_with(res: &LesResolutions) -> Result<DMap> {
    let ik = res.boundary_ik()?;
    let ci = res.boundary_ci()?;
    d_map_from(res, &ik, &ci)
}

/// `D` from already computed connecting maps.
pub fn d_map_from(res: &LesResolutions, ik: &ConnectingMap, ci: &ConnectingMap) -> Result<DMap> {
    let mut matrices = BTreeMap::new();
    for s in 0..=res.s_max {
        for t in 0..=res.t_max {
            matrices.insert((s, t), ik.matrix(s, t + 1).mul(ci.matrix(s + 1, t + 1)));
        }
    }
    let (source, target) = charts(&res.k, &res.c, res.s_max, res.t_max);
    Ok(DMap {
        s_max: res.s_max,
        t_max: res.t_max,
        matrices,
        source,
        target,
    })
}

/// The four-term sequence `K → N → M → C` spliced from the factorization.
#[derive(Clone, Debug)]
pub struct TwoExtension {
    pub k_to_n: ModuleHom,
    pub n_to_m: ModuleHom,
    pub m_to_c: ModuleHom,
}

impl TwoExtension {
    pub fn from_factorization(fac: &SesFactorization) -> Self {
        Self {
            k_to_n: fac.k_to_n.clone(),
            n_to_m: fac.map.clone(),
            m_to_c: fac.m_to_c.clone(),
        }
    }

    /// Exactness at `N` and `M`, injectivity on the left, surjectivity on the right.
    pub fn check(&self) -> Result<()> {
        for d in 0..=self.n_to_m.t_max() {
            let (a, f, q) = (self.k_to_n.matrix(d), self.n_to_m.matrix(d), self.m_to_c.matrix(d));
            let exact_n = a.mul(f).is_zero() && a.rank() + f.rank() == f.rows();
            let exact_m = f.mul(q).is_zero() && f.rank() + q.rank() == q.rows();
            let ends = a.rank() == a.rows() && q.rank() == q.cols();
            if !(exact_n && exact_m && ends) {
                return Err(Error::NotExact(format!("two-extension fails in degree {d}")));
            }
        }
        Ok(())
    }
}

/// `D` as Yoneda composition with the two-extension.
///
/// Lifts the augmentation of `C` back through `M`, then `N`, then `K`, one
/// free stage of the resolution of `C` at a time, and extends the resulting
/// cocycle `P^C_2 → K` to a chain map into the resolution of `K`.
pub fn yoneda_compose(te: &TwoExtension, s_max: usize, t_max: usize) -> Result<DMap> {
    let k = minimal_resolution(te.k_to_n.source().clone(), s_max, t_max + 1)?;
    let c = minimal_resolution(te.m_to_c.target().clone(), s_max + 2, t_max + 1)?;
    yoneda_with(te, &k, &c, s_max, t_max)
}

/// `D` by splicing, over resolutions of `K` through `(s_max, t_max + 1)` and
/// of `C` through `(s_max + 2, t_max + 1)`.
pub fn yoneda_with(te: &TwoExtension, k: &Resolution, c: &Resolution, s_max: usize, t_max: usize) -> Result<DMap> {
    te.check()?;
    if k.s_max() < s_max || c.s_max() < s_max + 2 || k.t_max() <= t_max || c.t_max() <= t_max {
        return Err(Error::Bounds("resolutions too short for the window".into()));
    }
    let rc = c;
    let m: &GradedModule = te.m_to_c.source();
    let n: &GradedModule = te.n_to_m.source();
    let lift_q = solvers(&te.m_to_c);
    let lift_f = solvers(&te.n_to_m);
    let lift_k = solvers(&te.k_to_n);
    let t_lim = k.t_max().min(c.t_max());

    let gens = |s: usize| {
        let free = rc.stage(s).free();
        free.gen_degrees().partition_point(|&d| d <= t_lim)
    };
    let p0 = rc.stage(0);
    let alpha0 = (0..gens(0))
        .map(|g| {
            let t = p0.free().gen_degrees()[g];
            preimage(&lift_q[t], &p0.images()[g], "augmentation of C", t)
        })
        .collect::<Result<Vec<_>>>()?;
    let p1 = rc.stage(1);
    let alpha1 = (0..gens(1))
        .map(|g| {
            let t = p1.free().gen_degrees()[g];
            let z = p0.free().apply(t, &p1.images()[g], &alpha0, m);
            preimage(&lift_f[t], &z, "splice through N", t)
        })
        .collect::<Result<Vec<_>>>()?;
    let p2 = rc.stage(2);
    let alpha2 = (0..gens(2))
        .map(|g| {
            let t = p2.free().gen_degrees()[g];
            let z = p1.free().apply(t, &p2.images()[g], &alpha1, n);
            preimage(&lift_k[t], &z, "splice through K", t)
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = lift_cocycle(rc, 2, k, &alpha2, s_max + 1)?;
    let mut matrices = BTreeMap::new();
    for s in 0..=s_max {
        for t in 0..=t_max {
            matrices.insert((s, t), theta.ext_matrix(rc, k, s, t + 1));
        }
    }
    let (source, target) = charts(k, c, s_max, t_max);
    Ok(DMap {
        s_max,
        t_max,
        matrices,
        source,
        target,
    })
}

impl DMap {
    pub fn matrix(&self, s: usize, t: usize) -> &BitMatrix {
        &self.matrices[&(s, t)]
    }

    /// Kernel dimensions in `Σ⁻¹K` coordinates and cokernel dimensions in `C`
    /// coordinates, both within the window.
    pub fn kernel_cokernel(&self) -> (Chart, Chart) {
        let mut kernel = Chart::new(self.s_max, self.t_max);
        let mut cokernel = self.target.clone();
        for (&(s, t), m) in &self.matrices {
            let r = m.rank();
            kernel.set(s, t, m.rows() - r);
            if s + 2 <= self.s_max && t < self.t_max {
                cokernel.set(s + 2, t + 1, cokernel.get(s + 2, t + 1) - r);
            }
        }
        (kernel, cokernel)
    }

    /// `ker D ⊕ coker D`, each class at its own chart position.
    pub fn e3_chart(&self) -> Chart {
        let (kernel, cokernel) = self.kernel_cokernel();
        let mut out = cokernel;
        for ((s, t), d) in kernel.iter() {
            out.add(s, t, d);
        }
        out
    }

    /// Bidegrees where the two maps differ.
    pub fn diff(&self, other: &DMap) -> Vec<(usize, usize)> {
        self.matrices
            .iter()
            .filter(|(k, m)| other.matrices.get(k) != Some(m))
            .map(|(&k, _)| k)
            .collect()
    }

    /// Text dump: a header, then every nonempty block as bit-string rows.
    pub fn dump(&self, label: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dmap {label} s_max={} t_max={}", self.s_max, self.t_max);
        for (&(s, t), m) in &self.matrices {
            if m.rows() == 0 && m.cols() == 0 {
                continue;
            }
            let _ = writeln!(out, "({s},{t}) -> ({},{}) {}x{}", s + 2, t + 1, m.rows(), m.cols());
            for r in m.row_iter() {
                let _ = writeln!(out, "  {}", if r.is_empty() { "-".to_string() } else { r.to_string() });
            }
        }
        out
    }
}

/// Resolutions, both computations of `D`, and their connecting maps.
#[derive(Clone, Debug)]
pub struct DualPath {
    pub resolutions: LesResolutions,
    pub boundary_ik: ConnectingMap,
    pub boundary_ci: ConnectingMap,
    pub composite: DMap,
    pub yoneda: DMap,
}

/// Computes `D` both ways over one set of resolutions.
pub fn dual_path(fac: &SesFactorization, s_max: usize, t_max: usize) -> Result<DualPath> {
    let resolutions = LesResolutions::new(fac, s_max, t_max)?;
    let boundary_ik = resolutions.boundary_ik()?;
    let boundary_ci = resolutions.boundary_ci()?;
    let composite = d_map_from(&resolutions, &boundary_ik, &boundary_ci)?;
    let te = TwoExtension::from_factorization(fac);
    let yoneda = yoneda_with(&te, &resolutions.k, &resolutions.c, s_max, t_max)?;
    Ok(DualPath {
        resolutions,
        boundary_ik,
        boundary_ci,
        composite,
        yoneda,
    })
}

#[cfg(test)]
mod tests;
