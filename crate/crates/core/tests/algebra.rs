use sqfib::algebra::ReductionStrategy;
use sqfib::{Basis, BitVec, SteenrodAlgebra};

#[test]
fn adem_examples() {
    let alg = SteenrodAlgebra::new(12);
    let f = |w: &[u32]| alg.format(&alg.adem_reduce(w).unwrap());
    assert_eq!(f(&[1, 2]), "Sq3");
    assert_eq!(f(&[2, 4]), "Sq6 + Sq5 Sq1");
    assert_eq!(f(&[1, 1]), "0");
    assert_eq!(f(&[2, 2]), "Sq3 Sq1");
    assert_eq!(f(&[]), "1");
    for w in [&[3u32, 2, 5][..], &[1, 2, 4, 1], &[2, 3, 2]] {
        assert_eq!(
            alg.adem_reduce_with(w, ReductionStrategy::LeftmostFirst).unwrap(),
            alg.adem_reduce_with(w, ReductionStrategy::RightmostFirst).unwrap()
        );
    }
    assert!(alg.adem_reduce(&[0, 1]).is_err());
    assert!(alg.adem_reduce(&[8, 8]).is_err());
}

#[test]
fn milnor_and_admissible_products_agree() {
    let alg = SteenrodAlgebra::new(12);
    for i in 1..=6 {
        for j in 1..=6 {
            for a in 0..alg.dim(i) {
                for b in 0..alg.dim(j) {
                    let x = sqfib::AlgebraElement::new(i, Basis::Admissible, BitVec::unit(alg.dim(i), a));
                    let y = sqfib::AlgebraElement::new(j, Basis::Admissible, BitVec::unit(alg.dim(j), b));
                    let adm = alg.multiply(&x, &y).unwrap();
                    let xm = alg.convert(&x, Basis::Milnor).unwrap();
                    let ym = alg.convert(&y, Basis::Milnor).unwrap();
                    let mil = alg.convert(&alg.multiply(&xm, &ym).unwrap(), Basis::Admissible).unwrap();
                    assert_eq!(adm, mil);
                }
            }
        }
    }
}

#[test]
fn indecomposables_through_32() {
    let alg = SteenrodAlgebra::new(32);
    for q in alg.indecomposables(32).unwrap() {
        assert_eq!(q.dim, usize::from(q.degree.is_power_of_two()), "degree {}", q.degree);
        match q.witness {
            None => assert!(q.degree.is_power_of_two()),
            Some(w) => assert_eq!(w.evaluate(&alg).unwrap(), alg.convert(&alg.sq(q.degree).unwrap(), Basis::Admissible).unwrap()),
        }
    }
    assert_eq!(alg.format(&alg.sq(6).unwrap()), "Sq6");
    assert!(alg.is_decomposable(&alg.sq(6).unwrap()).unwrap());
    assert!(!alg.is_decomposable(&alg.sq(8).unwrap()).unwrap());
}

#[test]
fn antipode_is_an_involution() {
    let alg = SteenrodAlgebra::new(16);
    for d in 1..=16 {
        for k in 0..alg.dim(d) {
            let e = sqfib::AlgebraElement::new(d, Basis::Milnor, BitVec::unit(alg.dim(d), k));
            let back = alg.antipode(&alg.antipode(&e).unwrap()).unwrap();
            assert_eq!(back, e);
        }
    }
    let chi2 = alg.antipode(&alg.sq(2).unwrap()).unwrap();
    assert_eq!(alg.format(&alg.convert(&chi2, Basis::Admissible).unwrap()), "Sq2");
    let chi3 = alg.antipode(&alg.sq(3).unwrap()).unwrap();
    assert_eq!(alg.format(&alg.convert(&chi3, Basis::Admissible).unwrap()), "Sq2 Sq1");
}

#[test]
fn degree_bound_is_enforced() {
    let alg = SteenrodAlgebra::new(4);
    assert!(alg.sq(5).is_err());
    assert!(alg.basis_dim(5).is_err());
    assert_eq!(alg.basis_dim(4).unwrap(), 2);
}
