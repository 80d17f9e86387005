use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

fn sqfib(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqfib"))
        .args(args)
        .env("SQFIB_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn triples_from_table(table: &str) -> BTreeSet<(usize, usize, usize)> {
    table
        .lines()
        .map(|l| {
            let v: Vec<usize> = l.split('\t').map(|x| x.parse().unwrap()).collect();
            (v[0], v[1], v[2])
        })
        .collect()
}

fn attr(tag: &str, name: &str) -> usize {
    let start = tag.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
    let end = start + tag[start..].find('"').unwrap();
    tag[start..end].parse().unwrap()
}

fn triples_from_svg(svg: &str) -> BTreeSet<(usize, usize, usize)> {
    svg.lines()
        .filter(|l| l.starts_with("<g class=\"class\""))
        .map(|l| (attr(l, "data-s"), attr(l, "data-t"), attr(l, "data-dim")))
        .collect()
}

fn triples_from_text(text: &str) -> BTreeSet<(usize, usize, usize)> {
    text.lines()
        .filter(|l| l.starts_with("s="))
        .map(|l| {
            let v: Vec<usize> = l.split(' ').map(|kv| kv.split_once('=').unwrap().1.parse().unwrap()).collect();
            (v[0], v[1], v[3])
        })
        .collect()
}

#[test]
fn resolve_a_mod_sq1_is_the_h0_tower() {
    let cache = tempfile::tempdir().unwrap();
    let o = sqfib(&["resolve", "--module", "builtin:A/ASq1", "--max-s", "8", "--max-t", "16", "--format", "table"], cache.path());
    assert!(o.status.success());
    let want: BTreeSet<_> = (0..=8).map(|s| (s, s, 1)).collect();
    assert_eq!(triples_from_table(&stdout(&o)), want);
}

#[test]
fn resolve_free_module_has_one_generator() {
    let cache = tempfile::tempdir().unwrap();
    let o = sqfib(&["resolve", "--module", "builtin:A", "--max-s", "4", "--max-t", "10", "--format", "table"], cache.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\t0\t1\n");
}

#[test]
fn malformed_spec_is_an_input_error_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.sqm");
    std::fs::write(&path, "module M\n  gen x 0\n  rel Sq3 y\nend\n").unwrap();
    let o = sqfib(&["resolve", "--module", path.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3, column 11"), "{err}");
}

#[test]
fn unknown_builtin_is_rejected() {
    let cache = tempfile::tempdir().unwrap();
    let o = sqfib(&["ext", "--module", "builtin:B"], cache.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cache_hit_and_miss_print_the_same_bytes() {
    let cache = tempfile::tempdir().unwrap();
    let args = ["ext", "--module", "builtin:F", "--max-s", "4", "--max-t", "12"];
    let miss = sqfib(&args, cache.path());
    let entries: Vec<_> = std::fs::read_dir(cache.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let hit = sqfib(&args, cache.path());
    assert!(miss.status.success() && hit.status.success());
    assert_eq!(miss.stdout, hit.stdout);

    let entry = entries[0].as_ref().unwrap().path();
    std::fs::write(&entry, "{\"format_version\":0}").unwrap();
    let mut paranoid = args.to_vec();
    paranoid.push("--paranoid");
    let stale = sqfib(&paranoid, cache.path());
    assert!(stale.status.success());
    assert_eq!(stale.stdout, miss.stdout);
    assert!(String::from_utf8_lossy(&stale.stderr).contains("stale"));
    assert!(std::fs::read_to_string(&entry).unwrap().contains("\"format_version\":1"));
}

#[test]
fn ext_of_f_matches_low_stems() {
    let cache = tempfile::tempdir().unwrap();
    let o = sqfib(&["ext", "--module", "builtin:F", "--max-s", "3", "--max-t", "8", "--format", "table"], cache.path());
    let got = triples_from_table(&stdout(&o));
    // h0, h1, h2, h3 and their products inside the window; h1^3 = h0^2 h2.
    let want: BTreeSet<_> = [(0, 0), (1, 1), (1, 2), (1, 4), (1, 8), (2, 2), (2, 4), (2, 5), (2, 8), (3, 3), (3, 6)]
        .into_iter()
        .map(|(s, t)| (s, t, 1))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn dmap_sq5_has_two_class_cokernel_and_no_diff() {
    let cache = tempfile::tempdir().unwrap();
    let o = sqfib(&["dmap", "--map", "sq:5", "--max-s", "4", "--max-t", "12"], cache.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("diff none"));
    assert!(out.contains("dmap composite") && out.contains("dmap yoneda"));
    let coker = out.split("cokernel\n").nth(1).unwrap().split("E3\n").next().unwrap();
    assert_eq!(coker, "0\t0\t1\n1\t5\t1\n");
}

#[test]
fn dmap_sqz1_is_a_hard_error() {
    let cache = tempfile::tempdir().unwrap();
    let o = sqfib(&["dmap", "--map", "sqz:1"], cache.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dmap_bruner_kernel_sits_at_non_powers() {
    let cache = tempfile::tempdir().unwrap();
    let o = sqfib(&["dmap", "--map", "bruner-u:12", "--max-s", "4", "--max-t", "24"], cache.path());
    assert!(o.status.success());
    let out = stdout(&o);
    let kernel = out.split("coordinates\n").nth(1).unwrap().split("cokernel\n").next().unwrap();
    let want: BTreeSet<_> = (1..=12usize).filter(|i| !i.is_power_of_two()).map(|i| (0, 2 * i - 1, 1)).collect();
    assert_eq!(triples_from_table(kernel), want);
}

#[test]
fn dmap_from_a_spec_file_matches_the_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sq3.sqm");
    std::fs::write(
        &path,
        "module B = builtin A\nmodule S = suspend B 3\nmap f : S -> B\n  1 -> Sq3 1\nend\n",
    )
    .unwrap();
    let args = |m: &str| vec!["dmap".to_string(), "--map".into(), m.into(), "--max-s".into(), "4".into(), "--max-t".into(), "10".into(), "--format".into(), "table".into()];
    let run = |m: &str| {
        let a = args(m);
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        sqfib(&a, dir.path())
    };
    let from_file = run(path.to_str().unwrap());
    let builtin = run("sq:3");
    assert!(from_file.status.success(), "{}", String::from_utf8_lossy(&from_file.stderr));
    assert_eq!(from_file.stdout, builtin.stdout);
    assert_eq!(stdout(&builtin), "0\t0\t1\n1\t3\t1\n");
}

#[test]
fn fiber_runs_pass() {
    let cache = tempfile::tempdir().unwrap();
    let f = sqfib(&["fiber", "--family", "F", "--imax", "12", "--max-t", "24"], cache.path());
    assert!(f.status.success(), "{}", stdout(&f));
    assert!(stdout(&f).ends_with("result PASS\n"));

    let fn3 = sqfib(&["fiber", "--family", "Fn", "--n", "3", "--format", "table"], cache.path());
    assert!(fn3.status.success());
    assert_eq!(stdout(&fn3), "0\t0\t1\n1\t3\t1\n");
}

#[test]
fn fiber_fnz_n1_is_rejected() {
    let cache = tempfile::tempdir().unwrap();
    let o = sqfib(&["fiber", "--family", "FnZ", "--n", "1"], cache.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n ≥ 2"));
}

#[test]
fn fiber_with_too_few_summands_is_an_input_error() {
    let cache = tempfile::tempdir().unwrap();
    let o = sqfib(&["fiber", "--family", "F", "--imax", "4", "--max-t", "16"], cache.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn renderings_agree_on_classes() {
    let cache = tempfile::tempdir().unwrap();
    let run = |format: &str| {
        stdout(&sqfib(&["fiber", "--family", "FnZ", "--n", "5", "--max-s", "6", "--max-t", "14", "--format", format], cache.path()))
    };
    let table = triples_from_table(&run("table"));
    assert_eq!(table.len(), 8);
    assert_eq!(triples_from_svg(&run("svg")), table);
    assert_eq!(triples_from_text(&run("text")), table);
}

#[test]
fn outputs_are_byte_deterministic() {
    let cache = tempfile::tempdir().unwrap();
    for format in ["text", "json"] {
        let args = ["fiber", "--family", "Fn", "--n", "4", "--max-s", "5", "--max-t", "12", "--format", format];
        assert_eq!(sqfib(&args, cache.path()).stdout, sqfib(&args, cache.path()).stdout);
    }
    let json: serde_json::Value = serde_json::from_slice(
        &sqfib(&["fiber", "--family", "Fn", "--n", "4", "--max-t", "12", "--format", "json"], cache.path()).stdout,
    )
    .unwrap();
    assert_eq!(json["timings"], serde_json::json!([]));
    assert_eq!(json["family"]["family"], "Fn");
}

#[test]
fn charts_writes_every_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("charts");
    let o = sqfib(
        &["charts", "--out", out.to_str().unwrap(), "--max-s", "4", "--max-t", "10", "--n-max", "3"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let index = std::fs::read_to_string(out.join("index.tsv")).unwrap();
    assert_eq!(index.lines().count(), 3 + 2 + 1);
    assert!(index.lines().all(|l| l.contains("\tPASS\t")));
    let tsv = std::fs::read_to_string(out.join("fn-2.tsv")).unwrap();
    let svg = std::fs::read_to_string(out.join("fn-2.svg")).unwrap();
    assert_eq!(triples_from_svg(&svg), triples_from_table(&tsv));
}
