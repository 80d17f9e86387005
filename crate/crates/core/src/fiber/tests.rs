use super::*;

fn assert_pass(r: &FiberReport) {
    assert!(r.passed(), "{}: {:?}\ncomputed {}\nexpected {}", r.family, r.first_failure(), r.computed, r.expected);
}

#[test]
fn expected_charts() {
    assert_eq!(expected_chart(Family::Fn { n: 3 }).unwrap().evaluate(4, 10).to_string(), "{(0,0), (1,3)}");
    assert_eq!(
        expected_chart(Family::FnZ { n: 2 }).unwrap().evaluate(3, 10).to_string(),
        "{(0,0), (1,1), (1,2), (2,2), (3,3)}"
    );
    let f = expected_chart(Family::F { i_max: 12, conjugate: false }).unwrap().evaluate(10, 24);
    let zero: Vec<usize> = f.iter().filter(|((s, _), _)| *s == 0).map(|((_, t), _)| t).collect();
    let one: Vec<usize> = f.iter().filter(|((s, t), _)| *s == 1 && *t != 1).map(|((_, t), _)| t).collect();
    assert_eq!(zero, [0, 5, 9, 11, 13, 17, 19, 21, 23]);
    assert_eq!(one, [2, 4, 8, 16]);
    assert!(expected_chart(Family::FnZ { n: 1 }).is_err());
}

#[test]
fn fn_small() {
    let r = run_fiber(Family::Fn { n: 3 }, 4, 10).unwrap();
    assert_pass(&r);
    assert_eq!(r.computed.to_string(), "{(0,0), (1,3)}");
    assert!(r.residual_pairs.is_empty());
}

#[test]
fn fnz_small() {
    let r = run_fiber(Family::FnZ { n: 2 }, 5, 10).unwrap();
    assert_pass(&r);
    assert!(r.residual_pairs.iter().all(|&(_, src, (s, t))| src == (1, 2) && s == t));
    assert!(!r.residual_pairs.is_empty());
    assert!(run_fiber(Family::FnZ { n: 1 }, 3, 8).is_err());
}

#[test]
fn f_small() {
    for conjugate in [false, true] {
        let r = run_fiber(Family::F { i_max: 6, conjugate }, 4, 12).unwrap();
        assert_pass(&r);
        assert_eq!(r.computed.to_string(), "{(0,0), (0,5), (0,9), (0,11), (1,1), (1,2), (1,4), (1,8), (2,2), (3,3), (4,4)}");
    }
}

#[test]
fn sparsity() {
    assert!(sparsity_collapse_check(&Chart::new(5, 5), 3).is_empty());
    let mut c = Chart::new(6, 10);
    c.set(0, 0, 1);
    c.set(3, 2, 1);
    assert_eq!(sparsity_collapse_check(&c, 3), vec![(3, (0, 0), (3, 2))]);
    assert!(sparsity_collapse_check(&c, 4).is_empty());
}

#[test]
fn projection_filtration() {
    for (i, shift) in [(1, FiltrationShift::Preserves), (2, FiltrationShift::Preserves), (3, FiltrationShift::RaisesByOne)] {
        let r = projection_filtration_report(i, 3, 2 * i).unwrap();
        assert_eq!(r.shift, shift, "i={i}: {r:?}");
    }
}

#[test]
fn corrupted_d_fails_checkpoint() {
    let algebra = Arc::new(SteenrodAlgebra::new(9));
    let fac = Family::Fn { n: 2 }.map(&algebra, 9).unwrap().factor_les().unwrap();
    let mut dp = crate::les::dual_path(&fac, 3, 8).unwrap();
    let key = *dp.composite.matrices.iter().find(|(_, m)| !m.is_zero()).unwrap().0;
    dp.composite.matrices.insert(key, crate::f2::BitMatrix::zeros(dp.composite.matrices[&key].rows(), dp.composite.matrices[&key].cols()));
    let cps = checks::run(Family::Fn { n: 2 }, &dp).unwrap();
    let failed: Vec<&str> = cps.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["D-kernel", "D-cokernel", "dual-path"]);
    assert_eq!(cps.iter().find(|c| c.name == "D-kernel").unwrap().first_failure, Some(key));
}
