use std::sync::Arc;

use super::*;
use crate::algebra::SteenrodAlgebra;
use crate::module::{build_a, build_a_mod_sq1, sq_map, trivial_module, ModuleHom};

fn alg() -> Arc<SteenrodAlgebra> {
    Arc::new(SteenrodAlgebra::new(20))
}

#[test]
fn free_rank_one() {
    let a = Arc::new(build_a(&alg(), 12).unwrap());
    let r = minimal_resolution(a, 4, 12).unwrap();
    let chart = r.ext_chart().unwrap();
    assert_eq!(chart.to_table(), "0\t0\t1\n");
    assert!(r.verify_exact().passed());
}

#[test]
fn h0_tower() {
    let m = Arc::new(build_a_mod_sq1(&alg(), 14).unwrap());
    let r = minimal_resolution(m, 8, 14).unwrap();
    let chart = r.ext_chart().unwrap();
    let expected: String = (0..=8).map(|s| format!("{s}\t{s}\t1\n")).collect();
    assert_eq!(chart.to_table(), expected);
}

#[test]
fn ext1_of_trivial_module() {
    let f = Arc::new(trivial_module(&alg(), 18).unwrap());
    let r = minimal_resolution(f, 2, 18).unwrap();
    let ones: Vec<usize> = (0..=18).filter(|&t| r.num_generators(1, t) > 0).collect();
    assert_eq!(ones, vec![1, 2, 4, 8, 16]);
    // Ext^2: h_i h_j with j ≠ i + 1, through t = 18.
    let twos: Vec<(usize, usize)> = (0..=18).map(|t| (t, r.num_generators(2, t))).filter(|p| p.1 > 0).collect();
    assert_eq!(twos, vec![(2, 1), (4, 1), (5, 1), (8, 1), (9, 1), (10, 1), (16, 1), (17, 1), (18, 1)]);
}

#[test]
fn verifiers_catch_broken_resolutions() {
    let m = Arc::new(build_a_mod_sq1(&alg(), 10).unwrap());
    let r = minimal_resolution(m, 4, 10).unwrap();
    assert!(r.verify_minimal().passed());
    assert!(r.verify_exact().passed());

    // Over the trivial module both P_1 and P_2 have a generator in degree 2.
    let f = Arc::new(trivial_module(&alg(), 10).unwrap());
    let rf = minimal_resolution(f, 3, 10).unwrap();
    let g = rf.generators(2, 2).start;
    let h = rf.generators(1, 2).start;
    let unit = rf.stage(1).free().basis_index(h, 0, 2);
    let bad = rf.with_flipped_entry(2, g, unit);
    assert_eq!(bad.verify_minimal().first_failure, Some((2, 2)));
    assert!(matches!(bad.ext_chart(), Err(crate::Error::NotMinimal { s: 2, t: 2 })));

    let cut = r.truncated(3, 3);
    assert_eq!(cut.verify_exact().first_failure, Some((3, 3)));
}

#[test]
fn stored_round_trip_is_identical() {
    let f = Arc::new(trivial_module(&alg(), 12).unwrap());
    let r = minimal_resolution(f.clone(), 4, 12).unwrap();
    let stored = r.to_stored();
    let back = Resolution::from_stored(f, &stored).unwrap();
    assert_eq!(back.to_stored(), stored);
    assert!(back.verify_exact().passed());
}

#[test]
fn identity_and_zero_lifts() {
    let algebra = alg();
    let m = Arc::new(build_a_mod_sq1(&algebra, 10).unwrap());
    let r = minimal_resolution(m.clone(), 4, 10).unwrap();
    let id = ModuleHom::identity(m.clone());
    let lift = lift_hom(&id, &r, &r, 5).unwrap();
    for s in 0..=4 {
        assert_eq!(lift.ext_matrix(&r, &r, s, s), BitMatrix::identity(1));
    }
    let zero = ModuleHom::zero(m.clone(), m).unwrap();
    let lift = lift_hom(&zero, &r, &r, 5).unwrap();
    assert!(lift.images.iter().flatten().all(|x| x.is_zero()));
}

#[test]
fn inclusion_of_image_lifts_and_commutes() {
    let algebra = alg();
    let fac = sq_map(&algebra, 2, 12).unwrap().factor_les().unwrap();
    let ri = minimal_resolution(fac.i.clone(), 3, 12).unwrap();
    let ra = minimal_resolution(fac.i_to_m.target().clone(), 3, 12).unwrap();
    let lift = lift_hom(&fac.i_to_m, &ri, &ra, 4).unwrap();
    let base: Vec<BitVec> = ri
        .stage(0)
        .images()
        .iter()
        .zip(ri.stage(0).free().gen_degrees())
        .map(|(x, &t)| x.mul_matrix(fac.i_to_m.matrix(t)))
        .collect();
    lift.verify(&ri, &ra, &base).unwrap();
    for s in 1..=3 {
        for t in 0..=12 {
            assert!(lift.ext_matrix(&ri, &ra, s, t).is_zero());
        }
    }
}
