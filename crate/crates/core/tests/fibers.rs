use sqfib::fiber::{expected_chart, run_fiber, sparsity_collapse_check, Family};

#[test]
fn fn_family_reports() {
    let r = run_fiber(Family::Fn { n: 3 }, 10, 20).unwrap();
    assert!(r.passed(), "{:?}", r.first_failure());
    assert_eq!(r.computed.to_string(), "{(0,0), (1,3)}");
    let names: Vec<&str> = r.checkpoints.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "first-boundary",
            "cyclic-image",
            "second-boundary",
            "second-boundary-cokernel",
            "D-kernel",
            "D-cokernel",
            "exactness-first",
            "exactness-second",
            "dual-path"
        ]
    );
}

#[test]
fn fnz_rejects_one_and_flags_the_stem_one_pairs() {
    assert!(run_fiber(Family::FnZ { n: 1 }, 4, 10).is_err());
    assert!(expected_chart(Family::FnZ { n: 1 }).is_err());
    let r = run_fiber(Family::FnZ { n: 2 }, 10, 24).unwrap();
    assert!(r.passed());
    let pairs = sparsity_collapse_check(&r.computed, 3);
    assert_eq!(pairs.len(), 7);
    assert!(pairs.iter().all(|&(r, src, tgt)| src == (1, 2) && tgt == (1 + r, 1 + r)));
    let r3 = run_fiber(Family::FnZ { n: 3 }, 10, 24).unwrap();
    assert!(sparsity_collapse_check(&r3.computed, 3).is_empty());
}

#[test]
fn f_truncation_stability() {
    let a = run_fiber(Family::F { i_max: 12, conjugate: false }, 10, 24).unwrap();
    let b = run_fiber(Family::F { i_max: 16, conjugate: false }, 10, 24).unwrap();
    assert!(a.passed() && b.passed());
    assert_eq!(a.computed, b.computed);
    let c = run_fiber(Family::F { i_max: 12, conjugate: true }, 10, 24).unwrap();
    assert_eq!(a.computed, c.computed);
}

#[test]
fn f_needs_enough_summands() {
    assert!(run_fiber(Family::F { i_max: 4, conjugate: false }, 6, 16).is_err());
    let r = run_fiber(Family::F { i_max: 4, conjugate: false }, 6, 8).unwrap();
    assert!(r.passed(), "{:?}", r.first_failure());
    assert_eq!(r.kernel.to_string(), "{(0,5)}");
}
