use std::sync::Arc;

use super::{FreeModule, GradedModule, Module, ModuleHom};
use crate::algebra::{Basis, SteenrodAlgebra};
use crate::error::{Error, Result};
use crate::f2::BitVec;

fn check_bound(algebra: &SteenrodAlgebra, t_max: usize) -> Result<()> {
    if t_max > algebra.max_degree() {
        return Err(Error::DegreeOverflow {
            degree: t_max,
            bound: algebra.max_degree(),
        });
    }
    Ok(())
}

/// The trivial module `F` in degree 0.
pub fn trivial_module(algebra: &Arc<SteenrodAlgebra>, t_max: usize) -> Result<GradedModule> {
    check_bound(algebra, t_max)?;
    let mut dims = vec![0; t_max + 1];
    dims[0] = 1;
    Ok(GradedModule::from_fn(algebra.clone(), dims, |_, _| unreachable!()))
}

/// The regular module `A`.
pub fn build_a(algebra: &Arc<SteenrodAlgebra>, t_max: usize) -> Result<GradedModule> {
    check_bound(algebra, t_max)?;
    Ok(FreeModule::with_generators(algebra.clone(), t_max, &[0])?.to_module())
}

fn a_mod_sq1(algebra: &Arc<SteenrodAlgebra>, t_max: usize) -> Result<(Arc<GradedModule>, ModuleHom)> {
    let a = Arc::new(build_a(algebra, t_max)?);
    if t_max == 0 {
        return Ok((a.clone(), ModuleHom::identity(a)));
    }
    let ideal = a.generated_submodule(&[(1, BitVec::unit(1, 0))])?;
    a.quotient(&ideal)
}

/// `A/ASq¹`.
pub fn build_a_mod_sq1(algebra: &Arc<SteenrodAlgebra>, t_max: usize) -> Result<GradedModule> {
    check_bound(algebra, t_max)?;
    Ok((*a_mod_sq1(algebra, t_max)?.0).clone())
}

fn from_generators(source: &FreeModule, target: Arc<GradedModule>, images: &[BitVec]) -> Result<ModuleHom> {
    let matrices = (0..=source.t_max())
        .map(|t| source.map_matrix(t, images, target.as_ref()))
        .collect();
    ModuleHom::new(Arc::new(source.to_module()), target, matrices)
}

fn square_coords(algebra: &SteenrodAlgebra, n: usize, conjugate: bool) -> Result<BitVec> {
    let sq = algebra.sq(n)?;
    let e = if conjugate { algebra.antipode(&sq)? } else { sq };
    Ok(algebra.convert(&e, Basis::Admissible)?.coords().clone())
}

/// `ΣⁿA → A` sending the suspended generator to `Sqⁿ`.
pub fn sq_map(algebra: &Arc<SteenrodAlgebra>, n: usize, t_max: usize) -> Result<ModuleHom> {
    check_bound(algebra, t_max)?;
    if n == 0 || n > t_max {
        return Err(Error::InvalidMap(format!("Sq{n} needs 1 ≤ n ≤ {t_max}")));
    }
    let source = FreeModule::with_generators(algebra.clone(), t_max, &[n])?;
    let target = Arc::new(build_a(algebra, t_max)?);
    from_generators(&source, target, &[square_coords(algebra, n, false)?])
}

/// `ΣⁿA → A/ASq¹` sending the suspended generator to the class of `Sqⁿ`.
pub fn sqz_map(algebra: &Arc<SteenrodAlgebra>, n: usize, t_max: usize) -> Result<ModuleHom> {
    check_bound(algebra, t_max)?;
    if n == 1 {
        return Err(Error::InvalidMap(
            "Sq1 is zero on A/ASq1, so n = 1 gives the fiber of the zero map; n must be at least 2".into(),
        ));
    }
    if n == 0 || n > t_max {
        return Err(Error::InvalidMap(format!("Sq{n} needs 2 ≤ n ≤ {t_max}")));
    }
    let (m, projection) = a_mod_sq1(algebra, t_max)?;
    let image = square_coords(algebra, n, false)?.mul_matrix(projection.matrix(n));
    let source = FreeModule::with_generators(algebra.clone(), t_max, &[n])?;
    from_generators(&source, m, &[image])
}

/// `⊕_{0<i≤i_max} Σ^{2i}A → A/ASq¹` sending the generator of the `i`-th
/// summand to the class of `Sq^{2i}`, or of `χ(Sq^{2i})` when `conjugate`.
///
/// Summands with `2i > t_max` are dropped: they are zero through the bound.
pub fn u_map(algebra: &Arc<SteenrodAlgebra>, i_max: usize, conjugate: bool, t_max: usize) -> Result<ModuleHom> {
    check_bound(algebra, t_max)?;
    if i_max == 0 {
        return Err(Error::InvalidMap("the sum needs at least one summand".into()));
    }
    let (m, projection) = a_mod_sq1(algebra, t_max)?;
    let degrees: Vec<usize> = (1..=i_max).map(|i| 2 * i).filter(|&d| d <= t_max).collect();
    let source = FreeModule::with_generators(algebra.clone(), t_max, &degrees)?;
    let images = degrees
        .iter()
        .map(|&d| Ok(square_coords(algebra, d, conjugate)?.mul_matrix(projection.matrix(d))))
        .collect::<Result<Vec<_>>>()?;
    from_generators(&source, m, &images)
}
