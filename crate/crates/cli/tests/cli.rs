use std::fs;
use std::process::{Command, Output};

use immersa::diagram::Diagram;
use immersa::graph::NamedGraph;
use immersa::io::serialize_diagram;
use immersa::random::random_immersion;

fn immersa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_immersa"))
        .args(args)
        .output()
        .expect("run immersa")
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn petersen_diagram(dir: &std::path::Path) -> String {
    let g = NamedGraph::Petersen.build();
    let d = Diagram::random_lift(random_immersion(&g, 3).unwrap(), 1).unwrap();
    let path = dir.join("pg.dgm");
    fs::write(&path, serialize_diagram(&d)).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    assert_eq!(immersa(&["verify", "@PG-fig1"]).status.code(), Some(0));
    assert_eq!(
        immersa(&["verify", "@PG-fig1", "--theorem", "K7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        immersa(&["verify", "@PG-fig1", "--theorem", "HG-parity"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(immersa(&["census", "@Q"]).status.code(), Some(2));
    assert_eq!(
        immersa(&["validate", "/nonexistent.imm"]).status.code(),
        Some(2)
    );
    assert_eq!(
        immersa(&["construct", "--graph", "@PG"]).status.code(),
        Some(3)
    );
    assert_eq!(immersa(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn validate_reports_degenerate_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.imm");
    // The third edge runs back over the first.
    fs::write(
        &path,
        "graph @K 3\npos x1 0 0\npos x2 2 0\npos x3 1 1\nedge x1x3: 0 0 ; 2 0 ; 1 1\n",
    )
    .unwrap();
    let out = immersa(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out).starts_with("not generic"));
}

#[test]
fn diagram_commands() {
    let dir = tempfile::tempdir().unwrap();
    let dgm = petersen_diagram(dir.path());
    let out = immersa(&["invariant", &dgm, "--which", "PG"]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out));
    assert!(text(&out).lines().next().unwrap().starts_with("ℒ\t"));

    let out = immersa(&["tb", &dgm, "--k", "5,6"]);
    assert_eq!(out.status.code(), Some(0));
    let t = text(&out);
    let value = |name: &str| -> i64 {
        t.lines()
            .find_map(|l| l.strip_prefix(name)?.strip_prefix('\t')?.parse().ok())
            .unwrap()
    };
    assert_eq!(value("TB5"), value("TB6"));

    let svg = dir.path().join("pg.svg");
    assert!(immersa(&["render", &dgm, "-o", svg.to_str().unwrap()])
        .status
        .success());
    let svg = fs::read_to_string(svg).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 15);
    assert!(svg.contains(r#"class="gap""#));
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    fs::write(
        &graph,
        "v a\nv b\nv c\nv d\ne ab a b\ne bc b c\ne ca c a\ne cd c d\ne da d a\n",
    )
    .unwrap();
    let imm = dir.path().join("g.imm");
    let svg = dir.path().join("g.svg");
    let out = immersa(&[
        "construct",
        "--graph",
        graph.to_str().unwrap(),
        "-o",
        imm.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(immersa(&["validate", imm.to_str().unwrap()])
        .status
        .success());
    assert_eq!(
        fs::read_to_string(svg)
            .unwrap()
            .matches("<polyline")
            .count(),
        5
    );
}

#[test]
fn fuzz_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let args = [
        "fuzz", "--graph", "@K33", "--n", "20", "--seed", "7", "--out", out_dir,
    ];
    let (a, b) = (immersa(&args), immersa(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let lifted = immersa(&[
        "fuzz",
        "--graph",
        "@PG",
        "--n",
        "3",
        "--lifts",
        "5",
        "--check",
        "L,tb-ratio",
        "--out",
        out_dir,
    ]);
    assert!(lifted.status.success());
    assert!(text(&lifted).contains("15/15"));
    assert_eq!(
        immersa(&["fuzz", "--graph", "@PG", "--n", "1", "--check", "bogus"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn census_table_has_all_lengths_by_default() {
    let out = immersa(&["census", "@K4"]);
    assert!(out.status.success());
    let rows: Vec<String> = text(&out).lines().skip(1).map(str::to_string).collect();
    assert!(rows.iter().any(|r| r.trim_start().starts_with("3 ")));
    assert!(rows.iter().any(|r| r.trim_start().starts_with("4 ")));
}
