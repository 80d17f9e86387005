use super::*;

fn alg() -> SteenrodAlgebra {
    SteenrodAlgebra::new(24)
}

#[test]
fn small_adem_identities() {
    let a = alg();
    assert!(a.adem_reduce(&[1, 1]).unwrap().is_zero());
    assert_eq!(a.adem_reduce(&[1, 2]).unwrap(), a.sq(3).unwrap());
    let e = a.adem_reduce(&[2, 4]).unwrap();
    assert_eq!(a.format(&e), "Sq6 + Sq5 Sq1");
    assert_eq!(a.format(&a.adem_reduce(&[2, 2]).unwrap()), "Sq3 Sq1");
    assert_eq!(a.format(&a.unit()), "1");
}

#[test]
fn rejects_bad_words() {
    let a = alg();
    assert_eq!(a.adem_reduce(&[2, 0, 1]), Err(Error::InvalidWord(vec![2, 0, 1])));
    assert!(matches!(a.adem_reduce(&[20, 10]), Err(Error::DegreeOverflow { degree: 30, bound: 24 })));
}

#[test]
fn strategies_agree_with_memoized_reduction() {
    let a = alg();
    let words: &[&[u32]] = &[&[1, 2, 3], &[3, 3, 3], &[2, 2, 2, 2], &[1, 4, 1, 4], &[5, 7], &[2, 3, 5, 1]];
    for w in words {
        let m = a.adem_reduce(w).unwrap();
        for s in [ReductionStrategy::LeftmostFirst, ReductionStrategy::RightmostFirst] {
            assert_eq!(a.adem_reduce_with(w, s).unwrap(), m, "{w:?}");
        }
    }
}

#[test]
fn milnor_and_admissible_products_agree() {
    let a = alg();
    for i in 0..=10 {
        for j in 0..=10 {
            for x in 0..a.dim(i) {
                for y in 0..a.dim(j) {
                    let left = AlgebraElement::new(i, Basis::Admissible, BitVec::unit(a.dim(i), x));
                    let right = AlgebraElement::new(j, Basis::Admissible, BitVec::unit(a.dim(j), y));
                    let adm = a.multiply(&left, &right).unwrap();
                    let ml = a.convert(&left, Basis::Milnor).unwrap();
                    let mil = a.multiply(&ml, &right).unwrap();
                    assert_eq!(a.convert(&mil, Basis::Admissible).unwrap(), adm);
                }
            }
        }
    }
}

#[test]
fn milnor_basis_formatting() {
    let a = alg();
    let p = a.milnor_product(&[2], &[1]).unwrap();
    assert_eq!(a.format(&p), "Sq(3) + Sq(0,1)");
}

#[test]
fn antipode_small_values() {
    let a = alg();
    // χ(Sq1) = Sq1, χ(Sq2) = Sq2, χ(Sq3) = Sq2 Sq1
    assert_eq!(a.antipode(&a.sq(1).unwrap()).unwrap(), a.sq(1).unwrap());
    assert_eq!(a.antipode(&a.sq(2).unwrap()).unwrap(), a.sq(2).unwrap());
    assert_eq!(a.format(&a.antipode(&a.sq(3).unwrap()).unwrap()), "Sq2 Sq1");
    for d in 1..=12 {
        for x in 0..a.dim(d) {
            let e = AlgebraElement::new(d, Basis::Admissible, BitVec::unit(a.dim(d), x));
            let twice = a.antipode(&a.antipode(&e).unwrap()).unwrap();
            assert_eq!(twice, e);
        }
    }
}

#[test]
fn indecomposables_only_at_powers_of_two() {
    let a = alg();
    for row in a.indecomposables(24).unwrap() {
        let expected = usize::from(row.degree.is_power_of_two());
        assert_eq!(row.dim, expected, "degree {}", row.degree);
        if let Some(w) = row.witness {
            assert_eq!(w.evaluate(&a).unwrap(), a.sq(row.degree).unwrap());
        }
    }
}

#[test]
fn decomposition_witnesses_evaluate() {
    let a = alg();
    let sq6 = a.square_decomposition(6).unwrap().unwrap();
    assert_eq!(sq6.terms.len(), 2);
    let sq3 = a.square_decomposition(3).unwrap().unwrap();
    assert_eq!(sq3.terms, vec![(a.sq(1).unwrap(), a.sq(2).unwrap())]);
    assert!(a.decompose(&a.sq(8).unwrap()).unwrap().is_none());
    let e = a.adem_reduce(&[4, 2, 1]).unwrap();
    let w = a.decompose(&e).unwrap().unwrap();
    assert_eq!(w.evaluate(&a).unwrap(), e);
    assert_eq!(a.decompose(&a.unit()), Err(Error::ZeroDegree));
}

#[test]
fn table_dump_lists_generator_actions() {
    let a = alg();
    let dump = a.table_dump(6).unwrap();
    assert_eq!(dump.degrees[3].admissible, vec![vec![3], vec![2, 1]]);
    // Sq2 · Sq1 = Sq2 Sq1, the second basis element of degree 3.
    let sq2 = &dump.degrees[1].generator_actions[1];
    assert_eq!((sq2.square, sq2.rows.as_slice()), (2, &["01".to_string()][..]));
    // Sq1 · Sq2 = Sq3.
    let sq1 = &dump.degrees[2].generator_actions[0];
    assert_eq!(sq1.rows[0], "10");
}
