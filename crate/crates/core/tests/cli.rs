use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_convex-trunc"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Files {
    _dir: tempfile::TempDir,
    hyperbola: String,
    parabola: String,
    square: String,
    cone: String,
    v_wedge: String,
    hyp_trunc: String,
    par_trunc: String,
    root: PathBuf,
}

fn files() -> Files {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_path_buf();
    let s = |p: PathBuf| p.to_str().unwrap().to_string();
    Files {
        hyperbola: s(write(&d, "hyp.json", r#"{"type":"hyperbola-epigraph"}"#)),
        parabola: s(write(&d, "par.json", r#"{"type":"parabola-epigraph","scale":1.0}"#)),
        square: s(write(
            &d,
            "sq.json",
            r#"{"type":"h-polyhedron","A":[[1,0],[-1,0],[0,1],[0,-1]],"b":[1,0,1,0]}"#,
        )),
        cone: s(write(&d, "cone.json", r#"{"type":"cone-lift-3d"}"#)),
        v_wedge: s(write(
            &d,
            "v.json",
            r#"{"type":"v-polyhedron","vertices":[[0,0],[1,0]],"rays":[[0,1]]}"#,
        )),
        hyp_trunc: s(write(
            &d,
            "ht.json",
            r#"{"type":"truncation","base":{"type":"hyperbola-epigraph"},"radius":2.0615528128088303}"#,
        )),
        par_trunc: s(write(
            &d,
            "pt.json",
            r#"{"type":"truncation","base":{"type":"parabola-epigraph","scale":1.0},"radius":5}"#,
        )),
        root: d,
        _dir: dir,
    }
}

#[test]
fn support_examples() {
    let f = files();
    let o = run(&["support", &f.hyperbola, "--dir", "-1,-1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "support (-1, -1): -2");

    let o = run(&["support", &f.parabola, "--dir", "1,0"]);
    assert!(stdout(&o).contains("+inf (direction outside dom σ)"));

    let o = run(&["--format", "json", "support", &f.square, "--dir", "0,0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "support");
    assert_eq!(v["results"]["value"], 0.0);
    assert_eq!(v["inputs"][0]["type"], "h-polyhedron");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn exit_codes() {
    let f = files();
    let bad = write(&f.root, "bad.json", r#"{"type":"circle"}"#);
    assert_eq!(
        run(&["support", bad.to_str().unwrap(), "--dir", "1,0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["support", &f.hyperbola, "--dir", "1,x"]).status.code(), Some(2));
    assert_eq!(run(&["support", &f.hyperbola, "--dir", "1,0,0"]).status.code(), Some(3));
    assert_eq!(run(&["hausdorff", &f.hyperbola, &f.cone]).status.code(), Some(3));
    assert_eq!(
        run(&["support", "/nonexistent/set.json", "--dir", "1,0"]).status.code(),
        Some(4)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn classify_examples() {
    let f = files();
    let out = stdout(&run(&["classify", &f.cone]));
    assert!(out.contains("hyperbolic: yes"), "{out}");
    assert!(out.contains("approx-M: no"), "{out}");
    assert!(out.contains("d_n=(1, -0.25, -1) σ(d_n)=1"), "{out}");

    let out = stdout(&run(&["classify", &f.hyperbola]));
    assert!(out.contains("approx-M: yes") && out.contains("probed"), "{out}");

    let out = stdout(&run(&["classify", &f.v_wedge]));
    for line in [
        "m-decomposable: yes",
        "approx-M: yes (shortcut: polyhedral)",
        "hyperbolic: yes",
    ] {
        assert!(out.contains(line), "{out}");
    }
}

#[test]
fn hausdorff_examples() {
    let f = files();
    let out = stdout(&run(&["hausdorff", &f.hyp_trunc, &f.hyperbola]));
    let value: f64 = out.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(out.starts_with("finite:") && value <= 0.5 + 1e-3, "{out}");

    let out = stdout(&run(&["hausdorff", &f.par_trunc, &f.parabola]));
    assert_eq!(out.trim(), "infinite: domain mismatch at d ≈ (1, 0)");

    let csv = f.root.join("gap.csv");
    let out = stdout(&run(&[
        "--samples",
        "64",
        "--csv",
        csv.to_str().unwrap(),
        "hausdorff",
        &f.square,
        &f.square,
    ]));
    assert!(out.starts_with("finite: 0 "), "{out}");
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d1,d2,sigma1,sigma2,abs_diff"));
    assert_eq!(lines.count(), 64);
}

#[test]
fn radius_examples() {
    let f = files();
    let out = stdout(&run(&["--format", "json", "radius", &f.hyperbola, "--eps", "0.5"]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["status"], "found");
    assert!(v["results"]["radius"].as_f64().unwrap() <= 2.062);

    let out = stdout(&run(&["radius", &f.parabola, "--eps", "1"]));
    assert_eq!(out.trim(), "diverged: domain mismatch");

    let out = stdout(&run(&["--format", "json", "radius", &f.square, "--eps", "0.1"]));
    let v: Value = serde_json::from_str(&out).unwrap();
    let r = v["results"]["radius"].as_f64().unwrap();
    // the corner (1, 1) is the last point to be reached: √2 − r ≤ 0.1
    assert!((r - (2f64.sqrt() - 0.1)).abs() <= 1e-3, "{r}");
}

#[test]
fn json_reports_are_reproducible() {
    let f = files();
    let args = [
        "--format",
        "json",
        "--seed",
        "3",
        "--samples",
        "300",
        "hausdorff",
        &f.hyp_trunc,
        &f.hyperbola,
    ];
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["config"]["sampling"]["seed"], 3);
    assert_eq!(v["config"]["sampling"]["count"], 300);
    // key order is fixed: command, inputs, results, config, version
    let keys: Vec<usize> = ["\"command\"", "\"inputs\"", "\"results\"", "\"config\"", "\"version\""]
        .iter()
        .map(|k| first.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn examples_command_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ex");
    let o = run(&["examples", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("4/4 checks passed"));
    let cone = fs::read_to_string(out.join("cone_lift_certificate.csv")).unwrap();
    let rows: Vec<&str> = cone.lines().collect();
    assert_eq!(rows[0], "n,sigma_dn,sigma_limit");
    for row in &rows[1..] {
        let cols: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cols[1] - 1.0).abs() <= 1e-9 && cols[2].abs() <= 1e-9, "{row}");
    }
    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("examples_report.json")).unwrap()).unwrap();
    assert_eq!(report["results"]["all_passed"], true);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = run(&["examples", "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}
