use std::sync::Arc;

use super::*;
use crate::algebra::SteenrodAlgebra;
use crate::module::{build_a, sq_map, sqz_map, trivial_module};

fn alg() -> Arc<SteenrodAlgebra> {
    Arc::new(SteenrodAlgebra::new(24))
}

#[test]
fn sq3_boundaries_and_dual_path() {
    let f = sq_map(&alg(), 3, 11).unwrap();
    let fac = f.factor_les().unwrap();
    let dp = dual_path(&fac, 4, 10).unwrap();
    for s in 0..=4 {
        for t in 0..=11 {
            assert!(dp.boundary_ik.iso_at(s, t), "IK at ({s},{t})");
        }
    }
    for s in 1..=5 {
        for t in 0..=11 {
            assert!(dp.boundary_ci.iso_at(s, t), "CI at ({s},{t})");
        }
    }
    assert!(dp.composite.diff(&dp.yoneda).is_empty());
    let (kernel, _) = dp.composite.kernel_cokernel();
    assert!(kernel.is_empty());
    assert_eq!(dp.composite.e3_chart().to_string(), "{(0,0), (1,3)}");
}

#[test]
fn sqz_tower_survives() {
    let f = sqz_map(&alg(), 2, 9).unwrap();
    let fac = f.factor_les().unwrap();
    let dp = dual_path(&fac, 4, 8).unwrap();
    assert!(dp.composite.diff(&dp.yoneda).is_empty());
    assert_eq!(dp.composite.e3_chart().to_string(), "{(0,0), (1,1), (1,2), (2,2), (3,3), (4,4)}");
}

fn first_les(n: usize) -> ExtLes {
    let f = sq_map(&alg(), n, 9).unwrap();
    let fac = f.factor_les().unwrap();
    let ses = fac.first();
    let sub = minimal_resolution(fac.k.clone(), 3, 9).unwrap();
    let mid = minimal_resolution(f.source().clone(), 3, 9).unwrap();
    let quot = minimal_resolution(fac.i.clone(), 4, 9).unwrap();
    let delta = connecting_with(&ses, &sub, &quot, 4).unwrap();
    long_exact_check(&ses, &sub, &mid, &quot, &delta).unwrap()
}

#[test]
fn long_exact_sequence_holds() {
    let les = first_les(2);
    let report = les.check();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.checked, 3 * 4 * 10);
}

#[test]
fn corrupted_connecting_map_is_located() {
    let mut les = first_les(2);
    // ∂ is an isomorphism Ext^{1,4}(K) → Ext^{2,4}(I); zero one entry.
    let key = les.delta.iter().find(|(&(s, _), m)| s == 1 && !m.is_zero()).map(|(&k, _)| k).unwrap();
    let m = les.delta.get_mut(&key).unwrap();
    let (r, c) = (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| m.get(r, c))
        .unwrap();
    m.set(r, c, false);
    let report = les.check();
    assert_eq!(report.first_failure, Some((key.0, key.1, LesSlot::Sub)));
}

#[test]
fn split_sequence_has_zero_boundary() {
    let algebra = alg();
    let t_max = 8;
    let x = Arc::new(build_a(&algebra, t_max).unwrap());
    let y = Arc::new(trivial_module(&algebra, t_max).unwrap());
    let sum = Arc::new(GradedModule::direct_sum(&[&x, &y]).unwrap());
    let mut inc = Vec::new();
    let mut proj = Vec::new();
    for d in 0..=t_max {
        let (a, b) = (x.dim(d), y.dim(d));
        let mut i = BitMatrix::zeros(a, a + b);
        let mut p = BitMatrix::zeros(a + b, b);
        for r in 0..a {
            i.set(r, r, true);
        }
        for r in 0..b {
            p.set(a + r, r, true);
        }
        inc.push(i);
        proj.push(p);
    }
    let ses = ShortExact::new(
        ModuleHom::new(x.clone(), sum.clone(), inc).unwrap(),
        ModuleHom::new(sum.clone(), y.clone(), proj).unwrap(),
    )
    .unwrap();
    let rx = minimal_resolution(x, 3, t_max).unwrap();
    let ry = minimal_resolution(y, 4, t_max).unwrap();
    let rm = minimal_resolution(sum, 3, t_max).unwrap();
    let delta = connecting_with(&ses, &rx, &ry, 4).unwrap();
    assert!(delta.matrices.values().all(|m| m.is_zero()));
    assert!(long_exact_check(&ses, &rx, &rm, &ry, &delta).unwrap().check().passed());
}

#[test]
fn dump_is_stable() {
    let f = sq_map(&alg(), 1, 5).unwrap();
    let fac = f.factor_les().unwrap();
    let dp = dual_path(&fac, 2, 4).unwrap();
    let text = dp.composite.dump("sq:1");
    assert!(text.starts_with("dmap sq:1 s_max=2 t_max=4\n"));
    assert_eq!(text, dp.yoneda.dump("sq:1"));
}

#[test]
fn public_entry_points_agree() {
    let f = sq_map(&alg(), 4, 9).unwrap();
    let fac = f.factor_les().unwrap();
    let d = d_map(&fac, 3, 8).unwrap();
    let y = yoneda_compose(&TwoExtension::from_factorization(&fac), 3, 8).unwrap();
    assert_eq!(d, y);
    let (kernel, cokernel) = d.kernel_cokernel();
    assert!(kernel.is_empty());
    assert_eq!(cokernel.to_string(), "{(0,0), (1,4)}");
    let ci = connecting(&fac.second(), 3, 9).unwrap();
    assert!((0..=9).all(|t| (1..=3).all(|s| ci.iso_at(s, t))));
    assert!((0..=9).all(|t| ci.injective_at(0, t)));
}

#[test]
fn zero_map_gives_zero_d() {
    let algebra = alg();
    let a = Arc::new(build_a(&algebra, 7).unwrap());
    let f = ModuleHom::zero(Arc::new(a.suspend(2, 7).unwrap()), a).unwrap();
    let fac = f.factor_les().unwrap();
    let d = d_map(&fac, 2, 6).unwrap();
    let y = yoneda_compose(&TwoExtension::from_factorization(&fac), 2, 6).unwrap();
    assert!(d.matrices.values().all(|m| m.is_zero()));
    assert_eq!(d, y);
    let (kernel, cokernel) = d.kernel_cokernel();
    assert_eq!(kernel, d.source);
    assert_eq!(cokernel, d.target);
}

