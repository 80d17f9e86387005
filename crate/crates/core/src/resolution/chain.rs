use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec};
use crate::module::ModuleHom;

use super::Resolution;

/// Maps `Θ_j: P_{shift+j} → Q_j` commuting with the differentials, given on generators.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub shift: usize,
    /// `images[j][g]` is `Θ_j(g)` in `Q_j` of degree `|g|`, for the generators
    /// of `P_{shift+j}` up to the common degree bound.
    pub images: Vec<Vec<BitVec>>,
}

/// Lifts a cocycle `φ: P_shift → N` (given by its values on generators, in the
/// module resolved by `target`) to a chain map `P_{shift+•} → Q_•`.
///
/// Stage `j` solves `ε(Θ_0 g) = φ(g)` or `d(Θ_j g) = Θ_{j−1}(d g)` over the
/// free target stage, which picks the solution supported on independent rows.
pub fn lift_cocycle(source: &Resolution, shift: usize, target: &Resolution, base: &[BitVec], stages: usize) -> Result<ChainMap> {
    if shift + stages > source.s_max() + 1 || stages > target.s_max() + 1 {
        return Err(Error::Bounds(format!(
            "lifting {stages} stages from stage {shift} needs resolutions of length {} and {}",
            shift + stages,
            stages
        )));
    }
    let t_max = source.t_max().min(target.t_max());
    let mut images: Vec<Vec<BitVec>> = Vec::with_capacity(stages);
    for j in 0..stages {
        let p = source.stage(shift + j);
        let q = target.stage(j);
        let count = p.free().gen_degrees().partition_point(|&d| d <= t_max);
        let mut level = Vec::with_capacity(count);
        for g in 0..count {
            let t = p.free().gen_degrees()[g];
            let y = if j == 0 {
                base[g].clone()
            } else {
                let below = source.stage(shift + j - 1).free();
                below.apply(t, &p.images()[g], &images[j - 1], target.stage(j - 1).free())
            };
            let x = q
                .solve(t, &y)
                .ok_or_else(|| Error::NotExact(format!("no lift for stage {} generator {g} in degree {t}", shift + j)))?;
            level.push(x);
        }
        images.push(level);
    }
    Ok(ChainMap { shift, images })
}

/// Lifts a module map `M → N` to resolutions of `M` and `N`.
pub fn lift_hom(f: &ModuleHom, source: &Resolution, target: &Resolution, stages: usize) -> Result<ChainMap> {
    let p0 = source.stage(0);
    let base: Vec<BitVec> = p0
        .images()
        .iter()
        .zip(p0.free().gen_degrees())
        .map(|(x, &t)| x.mul_matrix(f.matrix(t)))
        .collect();
    lift_cocycle(source, 0, target, &base, stages)
}

impl ChainMap {
    pub fn stages(&self) -> usize {
        self.images.len()
    }

    /// The induced map `Ext^{s,t}(target) → Ext^{s+shift,t}(source)`: rows
    /// index generators of `Q_s` in degree `t`, columns generators of
    /// `P_{s+shift}` in degree `t`.
    pub fn ext_matrix(&self, source: &Resolution, target: &Resolution, s: usize, t: usize) -> BitMatrix {
        let rows = target.generators(s, t);
        let cols = source.generators(s + self.shift, t);
        let q = target.stage(s).free();
        let mut m = BitMatrix::zeros(rows.len(), cols.len());
        for (c, g) in cols.enumerate() {
            for (r, h) in rows.clone().enumerate() {
                if q.unit_coefficient(h, &self.images[s][g]) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Checks the defining equations of every stage exactly.
    pub fn verify(&self, source: &Resolution, target: &Resolution, base: &[BitVec]) -> Result<()> {
        for (j, level) in self.images.iter().enumerate() {
            let p = source.stage(self.shift + j);
            let q = target.stage(j);
            for (g, x) in level.iter().enumerate() {
                let t = p.free().gen_degrees()[g];
                let lhs = x.mul_matrix(q.matrix(t));
                let rhs = if j == 0 {
                    base[g].clone()
                } else {
                    let below = source.stage(self.shift + j - 1).free();
                    below.apply(t, &p.images()[g], &self.images[j - 1], target.stage(j - 1).free())
                };
                if lhs != rhs {
                    return Err(Error::NotExact(format!(
                        "chain map fails to commute at stage {} generator {g}",
                        self.shift + j
                    )));
                }
            }
        }
        Ok(())
    }
}
