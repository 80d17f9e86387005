use super::*;
use crate::algebra::SteenrodAlgebra;

fn alg() -> Arc<SteenrodAlgebra> {
    Arc::new(SteenrodAlgebra::new(20))
}

#[test]
fn regular_module_dims() {
    let a = build_a(&alg(), 10).unwrap();
    assert_eq!(&a.dims()[..5], &[1, 1, 1, 2, 2]);
    a.validate().unwrap();
}

#[test]
fn a_mod_sq1_dims_and_relations() {
    let algebra = alg();
    let m = build_a_mod_sq1(&algebra, 12).unwrap();
    assert_eq!(&m.dims()[..4], &[1, 0, 1, 1]);
    m.validate().unwrap();
    // Independent count: A^d minus the rank of right multiplication by Sq1.
    for d in 1..=12 {
        let rows: Vec<BitVec> = (0..algebra.dim(d - 1))
            .map(|b| algebra.product(d - 1, b, 1, 0).clone())
            .collect();
        let rank = BitMatrix::from_rows(&rows, algebra.dim(d)).rank();
        assert_eq!(m.dim(d), algebra.dim(d) - rank, "degree {d}");
    }
}

#[test]
fn derived_squares_satisfy_sq6_relation() {
    let a = build_a(&alg(), 14).unwrap();
    for d in 0..=4 {
        // Sq2 Sq4 = Sq6 + Sq5 Sq1
        let lhs = a.square(4, d).mul(&a.square(2, d + 4));
        let rhs = a.square(6, d).add(&a.square(1, d).mul(&a.square(5, d + 1)));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn validate_rejects_broken_action() {
    let algebra = alg();
    let mut dims = vec![0; 5];
    dims[0] = 1;
    dims[1] = 1;
    dims[2] = 1;
    // Sq1 nonzero twice in a row violates Sq1 Sq1 = 0.
    let one = BitMatrix::from_strs(&["1"]);
    let z = |r: usize, c: usize| BitMatrix::zeros(r, c);
    let actions = vec![
        vec![one.clone(), one.clone(), z(1, 0), z(0, 0)],
        vec![z(1, 1), z(1, 0), z(1, 0)],
        vec![z(1, 0)],
    ];
    let m = GradedModule::new(algebra, dims, actions).unwrap();
    assert!(matches!(m.validate(), Err(Error::InvalidModule(_))));
}

#[test]
fn suspension_and_sums() {
    let algebra = alg();
    let a = build_a(&algebra, 12).unwrap();
    let s = a.suspend(2, 12).unwrap();
    assert_eq!(s.dim(2), 1);
    assert_eq!(s.dim(1), 0);
    s.validate().unwrap();
    let parts: Vec<GradedModule> = (1..=5).map(|i| a.suspend(2 * i, 12).unwrap()).collect();
    let refs: Vec<&GradedModule> = parts.iter().collect();
    let sum = GradedModule::direct_sum(&refs).unwrap();
    for d in 0..=12 {
        let expected: usize = (1..=5).filter(|i| 2 * i <= d).map(|i| algebra.dim(d - 2 * i)).sum();
        assert_eq!(sum.dim(d), expected);
    }
    sum.validate().unwrap();
}

#[test]
fn sq_map_factorization() {
    let algebra = alg();
    let f = sq_map(&algebra, 2, 12).unwrap();
    assert_eq!(f.matrix(2).row(0), algebra.sq(2).unwrap().coords().clone());
    let fac = f.factor_les().unwrap();
    assert_eq!(fac.k.dim(3), 0);
    assert_eq!(fac.c.dim(0), 1);
    assert_eq!(min_generator_degrees(&fac.i), vec![2]);
    for d in 0..=12 {
        assert_eq!(f.source().dim(d), fac.k.dim(d) + fac.i.dim(d));
        assert_eq!(f.target().dim(d), fac.i.dim(d) + fac.c.dim(d));
    }
}

#[test]
fn cokernel_of_sq1_is_a_mod_sq1() {
    let algebra = alg();
    let (c, _) = sq_map(&algebra, 1, 12).unwrap().cokernel().unwrap();
    assert_eq!(c.dims(), build_a_mod_sq1(&algebra, 12).unwrap().dims());
}

#[test]
fn identity_factorization() {
    let a = Arc::new(build_a(&alg(), 8).unwrap());
    let fac = ModuleHom::identity(a.clone()).factor_les().unwrap();
    assert!(fac.k.dims().iter().all(|&d| d == 0));
    assert!(fac.c.dims().iter().all(|&d| d == 0));
    assert_eq!(fac.i.dims(), a.dims());
}

#[test]
fn sqz_rejects_one() {
    assert!(matches!(sqz_map(&alg(), 1, 10), Err(Error::InvalidMap(_))));
    sqz_map(&alg(), 2, 10).unwrap().check_commutes().unwrap();
}

#[test]
fn u_map_hits_augmentation_ideal() {
    let algebra = alg();
    for conjugate in [false, true] {
        let u = u_map(&algebra, 8, conjugate, 16).unwrap();
        let fac = u.factor_les().unwrap();
        assert_eq!(fac.c.dim(0), 1);
        assert!(fac.c.dims()[1..].iter().all(|&d| d == 0));
        assert_eq!(min_generator_degrees(&fac.i), vec![2, 4, 8, 16]);
    }
}

#[test]
fn trivial_module_has_no_actions() {
    let f = trivial_module(&alg(), 6).unwrap();
    f.validate().unwrap();
    assert_eq!(min_generator_degrees(&f), vec![0]);
}
