use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name).display().to_string()
}

fn abstor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abstor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn has_line(out: &str, line: &str) -> bool {
    out.lines().any(|l| l == line)
}

#[test]
fn torsion_of_circle() {
    let o = abstor(&["torsion", &data("circle.cplx"), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("abstor-report 1\n"));
    assert!(has_line(&out, "item.0.torsion [0, -2]/[i, 1]"), "{out}");
    assert!(has_line(&out, "item.0.point.0.t0 0"));
    assert!(has_line(&out, "item.0.point.0.valuation 1"));
    assert!(has_line(&out, "convention FT-cal-1"));
    assert!(has_line(&out, "verdict pass"));
}

#[test]
fn eta_check_verdicts_and_exit_codes() {
    let o = abstor(&["eta-check", &data("ledger_pass.eta"), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&stdout(&o), "item.0.check.ray_invariant pass"));

    let o = abstor(&["eta-check", &data("ledger_fail.eta"), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(has_line(&out, "item.0.check.ray_invariant fail"));
    assert!(has_line(&out, "item.0.check.ray_invariant.detail phase changes on interval 2"));
}

#[test]
fn eta_check_takes_parities_from_a_family() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("circle.eta");
    // Hand-entered nu is wrong; the circle analysis at 0 supplies nu = 1.
    fs::write(&ledger, "ledger v1\ndimension_class 1\nsu true\nbase_eta 0\nsigns 1 -1\njump 0 sigma_odd=0 nu=0\n").unwrap();
    let l = ledger.display().to_string();
    assert_eq!(abstor(&["eta-check", &l]).status.code(), Some(1));
    let o = abstor(&["eta-check", &l, &data("circle.cplx"), "--format", "structured"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(has_line(&out, "item.0.jump.1.nu 1"));
    assert!(has_line(&out, "item.0.jumps.source analyzed"));
}

#[test]
fn conway_of_trefoil() {
    let o = abstor(&["conway", &data("trefoil.knot"), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(has_line(&out, "item.0.conway 1 + z^2"), "{out}");
    assert!(has_line(&out, "item.0.check.oracle_agreement pass"));
}

#[test]
fn analyze_options() {
    let c = data("circle.cplx");
    let out = stdout(&abstor(&["analyze", &c, "--t0", "auto", "--format", "structured"]));
    assert!(has_line(&out, "item.0.points.source auto"));
    assert!(has_line(&out, "item.0.point.0.nu 1") || has_line(&out, "item.0.point.1.nu 1"), "{out}");

    let out = stdout(&abstor(&["analyze", &c, "--no-duality", "--format", "structured"]));
    assert!(has_line(&out, "item.0.duality off"));

    let dir = tempfile::tempdir().unwrap();
    let dual = dir.path().join("circle.dual");
    fs::write(&dual, "duality v1\nranks 1 1\npairing 0\n  [i, 1]/[-i, 1]\npairing 1\n  1\n").unwrap();
    let o = abstor(&["analyze", &c, "--duality", dual.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(has_line(&stdout(&o), "item.0.check.point.0.duality pass"));

    // An explicit point where the entries have a pole is a reported failure.
    let o = abstor(&["analyze", &c, "--t0", "-i"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unusable_input_exits_2() {
    assert_eq!(abstor(&["torsion", "/nonexistent.cplx"]).status.code(), Some(2));
    assert_eq!(abstor(&["torsion", &data("circle.cplx"), "--convention", "other"]).status.code(), Some(2));
    assert_eq!(abstor(&["conway", &data("circle.cplx")]).status.code(), Some(2));
    assert_eq!(abstor(&["frobnicate"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cplx");
    fs::write(&bad, "complex v1\nranks 1 1\nboundary 1\n  [1, z]\n").unwrap();
    let o = abstor(&["torsion", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.cplx:4:") && err.contains("`[1, z]`"), "{err}");
}

#[test]
fn selftest_passes_and_is_deterministic() {
    let a = abstor(&["selftest", "--format", "structured"]);
    let b = abstor(&["selftest", "--format", "structured"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    for f in ["circle.cplx", "torus3.cplx", "direct_sum_m3.cplx", "knot_5_2.knot", "ledger_arg.eta"] {
        assert!(out.lines().any(|l| l.ends_with(&format!(".name {f}"))), "{f} missing");
    }
}

#[test]
fn corrupted_corpus_file_is_named() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["circle.cplx", "trefoil.knot", "ledger_pass.eta"] {
        fs::copy(data(f), dir.path().join(f)).unwrap();
    }
    let knot = dir.path().join("trefoil.knot");
    let text = fs::read_to_string(&knot).unwrap().replace("conway 1 0 1", "conway 1 0 2");
    fs::write(&knot, text).unwrap();
    let circle = dir.path().join("circle.cplx");
    let text = fs::read_to_string(&circle).unwrap().replace("ranks 1 1", "ranks 1 x");
    fs::write(&circle, text).unwrap();

    let o = abstor(&["selftest", "--corpus", dir.path().to_str().unwrap(), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(has_line(&out, "item.0.name circle.cplx"));
    assert!(has_line(&out, "item.0.check.parse fail"));
    assert!(has_line(&out, "item.2.name trefoil.knot"));
    assert!(has_line(&out, "item.2.check.expected_conway fail"));
    assert!(has_line(&out, "item.1.verdict pass"));
}

#[test]
fn inputs_are_not_modified() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.cplx");
    fs::copy(data("direct_sum_m3.cplx"), &p).unwrap();
    let before = fs::read(&p).unwrap();
    let o1 = abstor(&["analyze", p.to_str().unwrap(), "--format", "structured"]);
    let o2 = abstor(&["analyze", p.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(o1.stdout, o2.stdout);
    assert_eq!(fs::read(&p).unwrap(), before);
}
