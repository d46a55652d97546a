//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always show up in `cargo test` output.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use immersa::census::{check_prop21, check_prop23, Family};
use immersa::diagram::Diagram;
use immersa::epsilon::{EpsilonError, EpsilonTable, Target};
use immersa::generators::{random_series_parallel, simple_graphs, trees};
use immersa::graph::NamedGraph;
use immersa::immersion::CrossingKind;
use immersa::minor::{has_k4_minor, has_k4_minor_exhaustive};
use immersa::random::random_immersion;
use immersa::report::{run_fuzz, CheckGroup, FuzzOptions, RunReport, Theorem};
use immersa::zero_rotation::{construct_zero_rotation, verify_zero, ZeroRotationError};
use immersa::{distance_class, EdgeId, MultiGraph};

const FUZZ_SEEDS: u64 = 200;
const LIFT_IMMERSIONS: u64 = 20;
const LIFTS: u64 = 50;

type Outcome = Result<String, String>;

fn immersa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_immersa"))
        .args(args)
        .output()
        .expect("run immersa")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

/// Value column of a single-run report line named `name`.
fn reported(text: &str, name: &str) -> Option<i64> {
    text.lines().find_map(|l| {
        let rest = l.strip_prefix(name)?;
        rest.split_whitespace().next()?.parse().ok()
    })
}

fn summarize(report: &RunReport, label: &str) -> Result<String, String> {
    let failing: Vec<String> = report
        .verdicts
        .iter()
        .filter(|v| !v.ok())
        .map(|v| format!("{label} {} {}/{}", v.name, v.passed, v.total))
        .collect();
    if failing.is_empty() {
        let total = report.verdicts.first().map_or(0, |v| v.total);
        Ok(format!("{label} {}×{total}", report.verdicts.len()))
    } else {
        let files: Vec<String> = report
            .counterexamples
            .iter()
            .map(|p| p.display().to_string())
            .collect();
        Err(format!(
            "{}; counterexamples: {}",
            failing.join(", "),
            files.join(" ")
        ))
    }
}

fn census() -> Outcome {
    let expected_pg =
        "k\tcount\tcount_times_k\talpha_edge\talpha_d0\talpha_d1\talpha_d2\tbeta_d1\tbeta_d2\n\
        5\t12\t60\t4\t2\t1\t0\t1\t0\n\
        6\t10\t60\t4\t2\t1\t2\t1\t0\n\
        8\t15\t120\t8\t4\t4\t4\t2\t0\n\
        9\t20\t180\t12\t6\t7\t8\t3\t0\n";
    let expected_hg =
        "k\tcount\tcount_times_k\talpha_edge\talpha_d0\talpha_d1\talpha_d2\tbeta_d1\tbeta_d2\n\
        6\t28\t168\t8\t4\t2\t1\t2\t1\n\
        8\t21\t168\t8\t4\t2\t3\t2\t1\n\
        10\t84\t840\t40\t20\t18\t17\t10\t5\n\
        12\t56\t672\t32\t16\t16\t20\t8\t4\n\
        14\t24\t336\t16\t8\t12\t10\t4\t2\n";
    for (graph, ks, expected) in [
        ("@PG", "5,6,8,9", expected_pg),
        ("@HG", "6,8,10,12,14", expected_hg),
    ] {
        let out = immersa(&["census", graph, "--k", ks, "--format", "tsv"]);
        ensure(out.status.success() && stdout(&out) == expected, || {
            format!("census {graph} differs:\n{}", stdout(&out))
        })?;
    }
    Ok("PG and HG census tables byte-for-byte".into())
}

fn standard_sums() -> Outcome {
    type Expected<'a> = (&'a str, &'a str, &'a [(&'a str, i64)]);
    let checks: [Expected; 2] = [
        (
            "@PG-fig1",
            "PG-parity",
            &[("ΣΓ5 c", 5), ("ΣΓ6 c", 5), ("ΣΓ9 c", 35), ("κ1", 5)],
        ),
        (
            "@HG-fig4",
            "HG-parity",
            &[("ΣΓ6 c", 21), ("ΣΓ8 c", 35), ("ΣΓ10 c", 245), ("κ2", 7)],
        ),
    ];
    for (figure, theorem, expected) in checks {
        let out = immersa(&["verify", figure, "--theorem", theorem]);
        let text = stdout(&out);
        ensure(out.status.success(), || {
            format!("verify {figure} exited {:?}", out.status.code())
        })?;
        for &(name, value) in expected {
            let got = reported(&text, name);
            ensure(got == Some(value), || {
                format!("{figure} {name} = {got:?}, expected {value}")
            })?;
        }
    }
    let out = immersa(&["crossings", "@PG-fig9"]);
    let distances: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(4).unwrap_or("").to_string())
        .collect();
    let mut sorted = distances.clone();
    sorted.sort();
    ensure(sorted == ["1", "2"], || {
        format!("PG-fig9 crossing distances {distances:?}")
    })?;
    Ok("PG-fig1 5/5/35/κ=5, HG-fig4 21/35/245/κ=7, PG-fig9 distances {1,2}".into())
}

fn fuzz_graphs() -> Vec<(String, MultiGraph, Theorem)> {
    let mut v = vec![
        ("K4".to_string(), NamedGraph::Complete(4), Theorem::K4),
        (
            "K33".to_string(),
            NamedGraph::CompleteBipartite(3, 3),
            Theorem::K33,
        ),
        ("K5".to_string(), NamedGraph::Complete(5), Theorem::K5),
    ];
    for m in 2..=4 {
        v.push((
            format!("T{m}"),
            NamedGraph::MultipleTriangle(m),
            Theorem::MultipleTriangle,
        ));
    }
    v.push(("PG".into(), NamedGraph::Petersen, Theorem::PetersenParity));
    v.push(("HG".into(), NamedGraph::Heawood, Theorem::HeawoodParity));
    v.into_iter().map(|(n, g, t)| (n, g.build(), t)).collect()
}

/// Criteria 3 and 4 share their immersions: one run per graph.
fn parity_and_rotation(out_dir: &Path) -> (Outcome, Outcome) {
    let mut parity = Vec::new();
    let mut rotation = Vec::new();
    let mut failures = (Vec::new(), Vec::new());
    for (name, g, theorem) in fuzz_graphs() {
        let opts = FuzzOptions {
            seed: 0,
            count: FUZZ_SEEDS,
            lifts: 0,
            out_dir: Some(out_dir.join(&name)),
            groups: vec![],
        };
        let report = match run_fuzz("acceptance", &g, theorem, &opts) {
            Ok(r) => r,
            Err(e) => return (Err(format!("{name}: {e}")), Err(format!("{name}: {e}"))),
        };
        let split = |keep: &[CheckGroup]| RunReport {
            verdicts: report
                .verdicts
                .iter()
                .filter(|v| keep.contains(&v.group))
                .cloned()
                .collect(),
            ..report.clone()
        };
        match summarize(&split(&[CheckGroup::Parity, CheckGroup::Kappa]), &name) {
            Ok(s) => parity.push(s),
            Err(e) => failures.0.push(e),
        }
        let rot = split(&[CheckGroup::Rotation]);
        if !rot.verdicts.is_empty() {
            match summarize(&rot, &name) {
                Ok(s) => rotation.push(s),
                Err(e) => failures.1.push(e),
            }
        }
    }
    let finish = |ok: Vec<String>, bad: Vec<String>| {
        if bad.is_empty() {
            Ok(format!(
                "{FUZZ_SEEDS}/{FUZZ_SEEDS} seeds: {}",
                ok.join("; ")
            ))
        } else {
            Err(bad.join("; "))
        }
    };
    (finish(parity, failures.0), finish(rotation, failures.1))
}

/// Criteria 5 and 6 share their lifts: one run per target.
fn lifts(out_dir: &Path) -> (Outcome, Outcome) {
    let mut l_summary = Vec::new();
    let mut tb_summary = Vec::new();
    for (target, theorem) in [
        (Target::Petersen, Theorem::PetersenParity),
        (Target::Heawood, Theorem::HeawoodParity),
    ] {
        let opts = FuzzOptions {
            seed: 0,
            count: LIFT_IMMERSIONS,
            lifts: LIFTS,
            out_dir: Some(out_dir.join(format!("{target}-lifts"))),
            groups: vec![CheckGroup::L, CheckGroup::TbRatio],
        };
        let report = match run_fuzz("acceptance", &target.graph(), theorem, &opts) {
            Ok(r) => r,
            Err(e) => return (Err(e.to_string()), Err(e.to_string())),
        };
        let keep = |tb: bool| RunReport {
            verdicts: report
                .verdicts
                .iter()
                .filter(|v| (v.group == CheckGroup::TbRatio) == tb)
                .cloned()
                .collect(),
            ..report.clone()
        };
        l_summary.push(summarize(&keep(false), &target.to_string()));
        tb_summary.push(summarize(&keep(true), &target.to_string()));
        l_summary.push(crossing_change(target).map(|n| format!("{target} {n} crossing changes")));
    }
    let fold = |parts: Vec<Outcome>| {
        let (ok, bad): (Vec<_>, Vec<_>) = parts.into_iter().partition(Result::is_ok);
        if bad.is_empty() {
            Ok(format!(
                "{} lifts: {}",
                LIFT_IMMERSIONS * LIFTS,
                ok.into_iter()
                    .map(Result::unwrap)
                    .collect::<Vec<_>>()
                    .join("; ")
            ))
        } else {
            Err(bad
                .into_iter()
                .map(Result::unwrap_err)
                .collect::<Vec<_>>()
                .join("; "))
        }
    };
    (fold(l_summary), fold(tb_summary))
}

/// Every weighted crossing of lift 0 of each immersion: ℒ moves by −2ε·sign.
fn crossing_change(target: Target) -> Result<usize, String> {
    let table = EpsilonTable::standard(target);
    let mut checked = 0;
    for seed in 0..LIFT_IMMERSIONS {
        let imm = random_immersion(&target.graph(), seed).map_err(|e| e.to_string())?;
        let d = Diagram::random_lift(imm, 0).map_err(|e| e.to_string())?;
        let before = d.l_invariant(target).map_err(|e| e.to_string())?;
        for (i, c) in d.crossings().iter().enumerate() {
            let Some(w) = table
                .weight(c.id.first, c.id.second)
                .filter(|_| c.kind == CrossingKind::Disjoint)
            else {
                continue;
            };
            let after = d
                .crossing_change(&c.id)
                .and_then(|x| x.l_invariant(target))
                .map_err(|e| e.to_string())?;
            ensure(after - before == -2 * w * d.sign(i), || {
                format!(
                    "{target} seed {seed}: changing {:?} moved ℒ by {}, ε = {w}",
                    c.id,
                    after - before
                )
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn zero_rotation() -> Outcome {
    let mut built = 0;
    let mut check = |g: &MultiGraph, what: String| -> Result<(), String> {
        let c = construct_zero_rotation(g).map_err(|e| format!("{what}: {e}"))?;
        ensure(c.immersion.validate().ok, || format!("{what}: not generic"))?;
        let bad = verify_zero(&c.immersion).map_err(|e| e.to_string())?;
        ensure(bad.is_none(), || {
            format!("{what}: a cycle has rotation {:?}", bad.map(|b| b.1))
        })?;
        built += 1;
        Ok(())
    };
    for seed in 0..50 {
        check(&random_series_parallel(seed, 4), format!("SP seed {seed}"))?;
    }
    for n in 2..=8 {
        check(&NamedGraph::Theta(n).build(), format!("θ{n}"))?;
    }
    for n in 1..=8 {
        for (i, t) in trees(n).iter().enumerate() {
            check(t, format!("tree {i} on {n} vertices"))?;
        }
    }
    for named in [
        NamedGraph::Complete(4),
        NamedGraph::Petersen,
        NamedGraph::Heawood,
        NamedGraph::CompleteBipartite(3, 3),
    ] {
        let g = named.build();
        match construct_zero_rotation(&g) {
            Err(ZeroRotationError::HasK4Minor { witness, .. }) => {
                ensure(witness.witness.verify(&g), || {
                    format!("{named}: witness does not verify")
                })?
            }
            other => return Err(format!("{named} was not refused: {:?}", other.map(|_| ()))),
        }
    }
    let refusal = immersa(&["construct", "--graph", "@K4"]);
    ensure(refusal.status.code() == Some(3), || {
        format!("construct @K4 exited {:?}", refusal.status.code())
    })?;
    let mut compared = 0;
    for n in 1..=7 {
        for g in simple_graphs(n) {
            ensure(has_k4_minor(&g) == has_k4_minor_exhaustive(&g), || {
                format!("minor test disagrees on {:?}", g.edges())
            })?;
            compared += 1;
        }
    }
    Ok(format!(
        "{built} constructions, 4 refusals (exit 3), {compared} graphs agree with brute force"
    ))
}

fn counting_conditions() -> Outcome {
    let pg = NamedGraph::Petersen.build();
    let hg = NamedGraph::Heawood.build();
    let k33 = NamedGraph::CompleteBipartite(3, 3).build();
    let fam = |k: usize| Family::Lengths(vec![k]);
    let mut p21: Vec<(String, MultiGraph, usize, u32)> = vec![
        ("PG Γ8".into(), pg.clone(), 8, 4),
        ("HG Γ12".into(), hg.clone(), 12, 4),
        ("HG Γ14".into(), hg.clone(), 14, 2),
    ];
    for m in 2..=4u32 {
        p21.push((
            format!("T({m}) Γ3"),
            NamedGraph::MultipleTriangle(m as usize).build(),
            3,
            m,
        ));
    }
    for (what, g, k, m) in &p21 {
        let r = check_prop21(g, &fam(*k), *m).map_err(|e| e.to_string())?;
        ensure(r.holds(), || {
            format!("divisibility condition fails for {what} mod {m}: {r:?}")
        })?;
    }
    let p23 = [
        (&k33, 4),
        (&k33, 6),
        (&pg, 5),
        (&pg, 6),
        (&pg, 9),
        (&hg, 6),
        (&hg, 8),
        (&hg, 10),
    ];
    for (g, k) in p23 {
        let r = check_prop23(g, &fam(k), 2).map_err(|e| e.to_string())?;
        ensure(r.holds(), || {
            format!("invariance conditions fail for Γ{k}: {:?}", r.conditions())
        })?;
    }
    Ok(format!(
        "{} divisibility cases, {} invariance cases (4 conditions each)",
        p21.len(),
        p23.len()
    ))
}

fn pair_set(pairs: impl IntoIterator<Item = (EdgeId, EdgeId)>) -> BTreeSet<(EdgeId, EdgeId)> {
    pairs
        .into_iter()
        .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
        .collect()
}

/// Returns (outcome, note). The parity clause is evaluated as written.
fn epsilon_audits() -> (Outcome, Option<String>) {
    let pg = EpsilonTable::standard(Target::Petersen);
    let hg = EpsilonTable::standard(Target::Heawood);
    let pg_keys = pair_set(pg.iter().map(|(k, _)| k));
    let hg_keys = pair_set(hg.iter().map(|(k, _)| k));
    let pg_d1 = pair_set(distance_class(pg.graph(), 1));
    let hg_d1 = pair_set(distance_class(hg.graph(), 1));
    let hg_d2 = pair_set(distance_class(hg.graph(), 2));
    let mut problems = Vec::new();
    if pg_keys != pg_d1 || pg_keys.len() != 60 {
        problems.push(format!(
            "PG table has {} pairs, D1 has {}",
            pg_keys.len(),
            pg_d1.len()
        ));
    }
    let union: BTreeSet<_> = hg_d1.union(&hg_d2).copied().collect();
    if hg_keys != union {
        problems.push(format!(
            "HG table has {} pairs, D1 ∪ D2 has {}",
            hg_keys.len(),
            union.len()
        ));
    }
    // Load-time audit must reject a table with a gap.
    let rules = include_str!("../../core/data/epsilon-pg.txt");
    let gappy: String = rules
        .lines()
        .filter(|l| !l.starts_with("v_{i}v_{i+2}"))
        .map(|l| format!("{l}\n"))
        .collect();
    if !matches!(
        EpsilonTable::from_rules(Target::Petersen, &gappy),
        Err(EpsilonError::Incomplete { .. })
    ) {
        problems.push("a table with a missing rule was accepted".into());
    }
    if !problems.is_empty() {
        return (Err(problems.join("; ")), None);
    }

    let parity = |keys: &BTreeSet<(EdgeId, EdgeId)>| {
        let odd = keys
            .iter()
            .filter(|&&(a, b)| hg.weight(a, b).unwrap() % 2 != 0)
            .count();
        (keys.len() - odd, odd)
    };
    let (d1_even, d1_odd) = parity(&hg_d1);
    let (d2_even, d2_odd) = parity(&hg_d2);
    let observed =
        format!("HG weights: D1 {d1_odd} odd/{d1_even} even, D2 {d2_odd} odd/{d2_even} even");
    let note = "the stated parity (D1 odd, D2 even) contradicts ℒ ≡ κ(·,2) mod 2 (criterion 5 passes), \
                which forces odd weights on exactly the D2 pairs; the tabulated weights agree with the latter";
    if d1_even == 0 && d2_odd == 0 {
        (
            Ok(format!(
                "coverage exact (PG 60, HG {}); {observed}",
                union.len()
            )),
            None,
        )
    } else {
        (
            Err(format!("coverage exact (PG 60, HG {}), gaps rejected at load; parity as stated fails: {observed}", union.len())),
            Some(note.to_string()),
        )
    }
}

fn main() {
    // Plain `cargo test` passes filter arguments; this suite has a single
    // entry point and runs in full unless it is filtered out by name.
    let args: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let out_dir = tempfile::tempdir().expect("temporary directory");
    let mut results: Vec<(usize, &str, Outcome, f64, Option<String>)> = Vec::new();
    let mut timed =
        |n: usize, title: &'static str, f: &mut dyn FnMut() -> (Outcome, Option<String>)| {
            let start = Instant::now();
            let (outcome, note) = f();
            results.push((n, title, outcome, start.elapsed().as_secs_f64(), note));
        };

    timed(1, "census exactness", &mut || (census(), None));
    timed(2, "standard-immersion sums", &mut || {
        (standard_sums(), None)
    });
    let start = Instant::now();
    let (c3, c4) = parity_and_rotation(out_dir.path());
    let shared = start.elapsed().as_secs_f64();
    timed(3, "fuzzed parity theorems", &mut || (c3.clone(), None));
    timed(4, "rotation parities", &mut || (c4.clone(), None));
    let start = Instant::now();
    let (c5, c6) = lifts(out_dir.path());
    let shared_lifts = start.elapsed().as_secs_f64();
    timed(5, "ℒ invariants", &mut || (c5.clone(), None));
    timed(6, "TB ratios", &mut || (c6.clone(), None));
    timed(7, "zero-rotation constructor", &mut || {
        (zero_rotation(), None)
    });
    timed(8, "counting-condition checkers", &mut || {
        (counting_conditions(), None)
    });
    timed(9, "ε-table audits", &mut epsilon_audits);

    let mut failed = 0;
    for (n, title, outcome, secs, note) in &results {
        let secs = match n {
            3 | 4 => shared,
            5 | 6 => shared_lifts,
            _ => *secs,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {n} ({title}) [{secs:.1}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n} ({title}) [{secs:.1}s]: {detail}");
            }
        }
        if let Some(note) = note {
            println!("     note: {note}");
        }
    }
    println!(
        "{} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
