//! Theorem checks over immersions and diagrams, single runs and seeded
//! fuzzing with replayable counterexamples.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::automorphism::{find_isomorphism, SearchBudget};
use crate::cycles::{enumerate_cycles, Cycle};
use crate::diagram::{Diagram, DiagramError};
use crate::epsilon::Target;
use crate::graph::{MultiGraph, NamedGraph};
use crate::immersion::{ImmersionError, PlaneImmersion};
use crate::io::{serialize_diagram, serialize_immersion};
use crate::random::{random_immersion, RandomError};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unknown theorem `{0}` (expected PG-parity, HG-parity, K4, K33, K5 or Tm)")]
    UnknownTheorem(String),
    #[error("theorem {theorem} is about {expected}, but the input graph is not isomorphic to it")]
    WrongGraph { theorem: Theorem, expected: String },
    #[error("no theorem applies to this graph")]
    NoTheorem,
    #[error(transparent)]
    Immersion(#[from] ImmersionError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Random(#[from] RandomError),
    #[error("writing counterexample {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    PetersenParity,
    HeawoodParity,
    K4,
    K33,
    K5,
    /// T(m); the multiplicity is read off the graph.
    MultipleTriangle,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::PetersenParity => "PG-parity",
            Theorem::HeawoodParity => "HG-parity",
            Theorem::K4 => "K4",
            Theorem::K33 => "K33",
            Theorem::K5 => "K5",
            Theorem::MultipleTriangle => "Tm",
        })
    }
}

impl FromStr for Theorem {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "PG-parity" | "PG" => Ok(Theorem::PetersenParity),
            "HG-parity" | "HG" => Ok(Theorem::HeawoodParity),
            "K4" => Ok(Theorem::K4),
            "K33" | "K3,3" => Ok(Theorem::K33),
            "K5" => Ok(Theorem::K5),
            "Tm" | "T" => Ok(Theorem::MultipleTriangle),
            _ => Err(ReportError::UnknownTheorem(s.to_string())),
        }
    }
}

fn isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
    matches!(
        find_isomorphism(a, b, &[], &[], &mut SearchBudget::default()),
        Ok(Some(_))
    )
}

impl Theorem {
    const ALL: [Theorem; 6] = [
        Theorem::PetersenParity,
        Theorem::HeawoodParity,
        Theorem::K4,
        Theorem::K33,
        Theorem::K5,
        Theorem::MultipleTriangle,
    ];

    /// The graph the theorem is about, shaped like `g` where that matters.
    fn target(self, g: &MultiGraph) -> NamedGraph {
        match self {
            Theorem::PetersenParity => NamedGraph::Petersen,
            Theorem::HeawoodParity => NamedGraph::Heawood,
            Theorem::K4 => NamedGraph::Complete(4),
            Theorem::K33 => NamedGraph::CompleteBipartite(3, 3),
            Theorem::K5 => NamedGraph::Complete(5),
            Theorem::MultipleTriangle => NamedGraph::MultipleTriangle((g.edge_count() / 3).max(1)),
        }
    }

    pub fn applies_to(self, g: &MultiGraph) -> bool {
        isomorphic(g, &self.target(g).build())
    }

    /// The theorem whose graph `g` is, if any.
    pub fn for_graph(g: &MultiGraph) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.applies_to(g))
    }

    /// (cycle length or None for all cycles, modulus, residue) for crossing sums.
    fn crossing_sums(self, g: &MultiGraph) -> Vec<(Option<usize>, i64, i64)> {
        match self {
            Theorem::PetersenParity => vec![
                (Some(5), 2, 1),
                (Some(6), 2, 1),
                (Some(8), 4, 0),
                (Some(9), 2, 1),
            ],
            Theorem::HeawoodParity => {
                vec![
                    (Some(6), 2, 1),
                    (Some(8), 2, 1),
                    (Some(10), 2, 1),
                    (Some(12), 4, 0),
                    (Some(14), 2, 0),
                ]
            }
            Theorem::K4 => vec![(None, 2, 0)],
            Theorem::K33 => vec![(Some(4), 2, 1), (Some(6), 2, 1)],
            Theorem::K5 => vec![(Some(4), 2, 0), (Some(5), 2, 0)],
            Theorem::MultipleTriangle => vec![(Some(3), (g.edge_count() / 3) as i64, 0)],
        }
    }

    /// Same shape for rotation-number sums.
    fn rotation_sums(self) -> Vec<(Option<usize>, i64, i64)> {
        match self {
            Theorem::PetersenParity => vec![
                (Some(5), 2, 1),
                (Some(6), 2, 1),
                (Some(8), 2, 1),
                (Some(9), 2, 1),
            ],
            Theorem::HeawoodParity => {
                vec![
                    (Some(6), 2, 1),
                    (Some(8), 2, 0),
                    (Some(10), 2, 1),
                    (Some(12), 2, 0),
                    (Some(14), 2, 0),
                ]
            }
            Theorem::K4 => vec![(None, 2, 1)],
            Theorem::K33 => vec![(Some(4), 2, 0), (Some(6), 2, 1)],
            Theorem::K5 | Theorem::MultipleTriangle => vec![],
        }
    }

    /// Distance class whose crossing count is odd.
    fn kappa(self) -> Option<usize> {
        match self {
            Theorem::PetersenParity => Some(1),
            Theorem::HeawoodParity => Some(2),
            _ => None,
        }
    }

    pub fn diagram_target(self) -> Option<Target> {
        match self {
            Theorem::PetersenParity => Some(Target::Petersen),
            Theorem::HeawoodParity => Some(Target::Heawood),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Congruent { modulus: i64, residue: i64 },
    Equal(i64),
}

impl Expect {
    pub fn holds(self, value: i64) -> bool {
        match self {
            Expect::Congruent { modulus, residue } => value.rem_euclid(modulus) == residue,
            Expect::Equal(v) => value == v,
        }
    }
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expect::Congruent {
                modulus: 2,
                residue: 1,
            } => f.write_str("odd"),
            Expect::Congruent {
                modulus: 2,
                residue: 0,
            } => f.write_str("even"),
            Expect::Congruent { modulus, residue } => write!(f, "≡ {residue} mod {modulus}"),
            Expect::Equal(v) => write!(f, "= {v}"),
        }
    }
}

/// Families of checks, selectable on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckGroup {
    /// Crossing-number sums over cycle lengths.
    Parity,
    /// Crossings in the odd distance class.
    Kappa,
    /// Rotation-number sums and the per-cycle rot − c parity.
    Rotation,
    /// ℒ parity and its agreement with κ.
    L,
    TbRatio,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 5] = [
        CheckGroup::Parity,
        CheckGroup::Kappa,
        CheckGroup::Rotation,
        CheckGroup::L,
        CheckGroup::TbRatio,
    ];
}

impl FromStr for CheckGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "parity" => Ok(CheckGroup::Parity),
            "kappa" => Ok(CheckGroup::Kappa),
            "rot" | "rotation" => Ok(CheckGroup::Rotation),
            "L" => Ok(CheckGroup::L),
            "tb" | "tb-ratio" => Ok(CheckGroup::TbRatio),
            _ => Err(format!(
                "unknown check `{s}` (expected parity, kappa, rot, L or tb-ratio)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub group: CheckGroup,
    pub name: String,
    pub value: i64,
    pub expect: Expect,
}

impl Check {
    fn new(group: CheckGroup, name: impl Into<String>, value: i64, expect: Expect) -> Self {
        Check {
            group,
            name: name.into(),
            value,
            expect,
        }
    }

    pub fn passed(&self) -> bool {
        self.expect.holds(self.value)
    }
}

fn label(k: Option<usize>) -> String {
    match k {
        Some(k) => format!("Γ{k}"),
        None => "Γ".into(),
    }
}

/// Cycles grouped once per graph for repeated checks.
pub struct CycleCache {
    all: Vec<Cycle>,
}

impl CycleCache {
    pub fn new(g: &MultiGraph) -> Self {
        CycleCache {
            all: enumerate_cycles(g, None),
        }
    }

    fn of(&self, k: Option<usize>) -> impl Iterator<Item = &Cycle> {
        self.all
            .iter()
            .filter(move |c| k.is_none_or(|k| c.len() == k))
    }
}

/// Crossing-sum, κ and rotation checks for one immersion.
pub fn theorem_checks(
    imm: &PlaneImmersion,
    theorem: Theorem,
    cache: &CycleCache,
) -> Result<Vec<Check>, ReportError> {
    let g = imm.graph();
    let crossings = imm.crossings()?;
    let crossing_count = |c: &Cycle| {
        crossings
            .iter()
            .filter(|x| c.contains_edge(x.id.first) && c.contains_edge(x.id.second))
            .count() as i64
    };
    let mut checks = Vec::new();
    for (k, modulus, residue) in theorem.crossing_sums(g) {
        let value = cache.of(k).map(crossing_count).sum();
        checks.push(Check::new(
            CheckGroup::Parity,
            format!("Σ{} c", label(k)),
            value,
            Expect::Congruent { modulus, residue },
        ));
    }
    if let Some(k) = theorem.kappa() {
        checks.push(Check::new(
            CheckGroup::Kappa,
            format!("κ{k}"),
            imm.kappa(k)? as i64,
            Expect::Congruent {
                modulus: 2,
                residue: 1,
            },
        ));
    }
    let mut rot = Vec::with_capacity(cache.all.len());
    for c in &cache.all {
        rot.push((c, imm.rotation_number(c)?));
    }
    for (k, modulus, residue) in theorem.rotation_sums() {
        let value = rot
            .iter()
            .filter(|(c, _)| k.is_none_or(|k| c.len() == k))
            .map(|(_, r)| r)
            .sum();
        checks.push(Check::new(
            CheckGroup::Rotation,
            format!("Σ{} rot", label(k)),
            value,
            Expect::Congruent { modulus, residue },
        ));
    }
    let bad = rot
        .iter()
        .filter(|(c, r)| (r - crossing_count(c)).rem_euclid(2) != 1)
        .count();
    checks.push(Check::new(
        CheckGroup::Rotation,
        "cycles with rot − c even",
        bad as i64,
        Expect::Equal(0),
    ));
    Ok(checks)
}

/// ℒ parity and TB ratio checks for one diagram over PG or HG.
pub fn diagram_checks(
    d: &Diagram,
    target: Target,
    cache: &CycleCache,
) -> Result<Vec<Check>, ReportError> {
    let l = d.l_invariant(target)?;
    let kappa_class = match target {
        Target::Petersen => 1,
        Target::Heawood => 2,
    };
    let kappa = d.immersion().kappa(kappa_class)? as i64;
    let mut checks = vec![
        Check::new(
            CheckGroup::L,
            "ℒ",
            l,
            Expect::Congruent {
                modulus: 2,
                residue: 1,
            },
        ),
        Check::new(
            CheckGroup::L,
            format!("ℒ − κ{kappa_class}"),
            l - kappa,
            Expect::Congruent {
                modulus: 2,
                residue: 0,
            },
        ),
    ];
    let tb =
        |k: Option<usize>| -> i64 { cache.of(k).map(|c| d.writhe(c).expect("own cycle")).sum() };
    let (base, ratios): (usize, &[(Option<usize>, i64)]) = match target {
        Target::Petersen => (5, &[(Some(6), 1), (Some(8), 2), (Some(9), 3), (None, 7)]),
        Target::Heawood => (
            6,
            &[
                (Some(8), 1),
                (Some(10), 5),
                (Some(12), 4),
                (Some(14), 2),
                (None, 13),
            ],
        ),
    };
    let tb_base = tb(Some(base));
    for &(k, r) in ratios {
        let name = match k {
            Some(k) => format!("TB{k} − {r}·TB{base}"),
            None => format!("TB − {r}·TB{base}"),
        };
        checks.push(Check::new(
            CheckGroup::TbRatio,
            name,
            tb(k) - r * tb_base,
            Expect::Equal(0),
        ));
    }
    Ok(checks)
}

/// Aggregated outcome of one check over a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub group: CheckGroup,
    pub name: String,
    pub expect: Expect,
    /// Observed value for single runs; `None` when aggregated over seeds.
    pub value: Option<i64>,
    pub passed: usize,
    pub total: usize,
    /// Seeds (and lift seeds) of failures, in order.
    pub failures: Vec<(u64, Option<u64>, i64)>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    pub seeds: Option<(u64, u64)>,
    pub verdicts: Vec<Verdict>,
    pub counterexamples: Vec<PathBuf>,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.verdicts.iter().all(Verdict::ok)
    }

    fn absorb(&mut self, checks: &[Check], seed: u64, lift: Option<u64>, single: bool) {
        for c in checks {
            let idx = match self.verdicts.iter().position(|v| v.name == c.name) {
                Some(i) => i,
                None => {
                    self.verdicts.push(Verdict {
                        group: c.group,
                        name: c.name.clone(),
                        expect: c.expect,
                        value: None,
                        passed: 0,
                        total: 0,
                        failures: Vec::new(),
                    });
                    self.verdicts.len() - 1
                }
            };
            let v = &mut self.verdicts[idx];
            v.total += 1;
            if single {
                v.value = Some(c.value);
            }
            if c.passed() {
                v.passed += 1;
            } else {
                v.failures.push((seed, lift, c.value));
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("# {}\n", self.command);
        if let Some((from, count)) = self.seeds {
            out.push_str(&format!("# seeds {from}..{}\n", from + count));
        }
        let width = self
            .verdicts
            .iter()
            .map(|v| v.name.chars().count())
            .max()
            .unwrap_or(5)
            .max(5);
        for v in &self.verdicts {
            let pad = width - v.name.chars().count();
            let observed = match v.value {
                Some(x) => x.to_string(),
                None => format!("{}/{}", v.passed, v.total),
            };
            let status = if v.ok() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{}{}  {:>8}  expected {:<10} {status}\n",
                v.name,
                " ".repeat(pad),
                observed,
                v.expect.to_string()
            ));
            for (seed, lift, value) in v.failures.iter().take(5) {
                match lift {
                    Some(l) => out.push_str(&format!("    seed {seed} lift {l}: {value}\n")),
                    None => out.push_str(&format!("    seed {seed}: {value}\n")),
                }
            }
        }
        for p in &self.counterexamples {
            out.push_str(&format!("counterexample written to {}\n", p.display()));
        }
        out
    }
}

/// Checks one immersion against a theorem.
pub fn run_verify(
    command: &str,
    imm: &PlaneImmersion,
    theorem: Theorem,
    groups: &[CheckGroup],
) -> Result<RunReport, ReportError> {
    if !theorem.applies_to(imm.graph()) {
        return Err(ReportError::WrongGraph {
            theorem,
            expected: theorem.target(imm.graph()).to_string(),
        });
    }
    let cache = CycleCache::new(imm.graph());
    let checks = select(theorem_checks(imm, theorem, &cache)?, groups);
    let mut report = RunReport {
        command: command.into(),
        seeds: None,
        verdicts: vec![],
        counterexamples: vec![],
    };
    report.absorb(&checks, 0, None, true);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzOptions {
    pub seed: u64,
    pub count: u64,
    /// Random lifts per immersion; zero skips diagram checks.
    pub lifts: u64,
    /// Directory for counterexample files; none means do not write.
    pub out_dir: Option<PathBuf>,
    /// Check groups to run; empty means all.
    pub groups: Vec<CheckGroup>,
}

fn select(mut checks: Vec<Check>, groups: &[CheckGroup]) -> Vec<Check> {
    if !groups.is_empty() {
        checks.retain(|c| groups.contains(&c.group));
    }
    checks
}

/// Seeded fuzzing of `theorem` over random immersions of `g` (and random
/// lifts when requested). Results are ordered by seed.
pub fn run_fuzz(
    command: &str,
    g: &MultiGraph,
    theorem: Theorem,
    opts: &FuzzOptions,
) -> Result<RunReport, ReportError> {
    if !theorem.applies_to(g) {
        return Err(ReportError::WrongGraph {
            theorem,
            expected: theorem.target(g).to_string(),
        });
    }
    let cache = CycleCache::new(g);
    let target = theorem.diagram_target();
    let seeds: Vec<u64> = (opts.seed..opts.seed + opts.count).collect();
    type Outcome = (PlaneImmersion, Vec<Check>, Vec<(u64, Diagram, Vec<Check>)>);
    let outcomes: Vec<Result<Outcome, ReportError>> = seeds
        .par_iter()
        .map(|&seed| {
            let imm = random_immersion(g, seed)?;
            let checks = select(theorem_checks(&imm, theorem, &cache)?, &opts.groups);
            let mut lifts = Vec::new();
            if let Some(target) = target {
                for l in 0..opts.lifts {
                    let d = Diagram::random_lift(imm.clone(), l)?;
                    let dc = select(diagram_checks(&d, target, &cache)?, &opts.groups);
                    lifts.push((l, d, dc));
                }
            }
            Ok((imm, checks, lifts))
        })
        .collect();

    let mut report = RunReport {
        command: command.into(),
        seeds: Some((opts.seed, opts.count)),
        verdicts: vec![],
        counterexamples: vec![],
    };
    for (&seed, outcome) in seeds.iter().zip(outcomes) {
        let (imm, checks, lifts) = outcome?;
        report.absorb(&checks, seed, None, false);
        if checks.iter().any(|c| !c.passed()) {
            if let Some(dir) = &opts.out_dir {
                let failed: Vec<&str> = checks
                    .iter()
                    .filter(|c| !c.passed())
                    .map(|c| c.name.as_str())
                    .collect();
                let text = format!(
                    "# seed {seed}; failed: {}\n{}",
                    failed.join(", "),
                    serialize_immersion(&imm)
                );
                report.counterexamples.push(write_file(
                    dir,
                    &format!("{theorem}-seed{seed}.imm"),
                    &text,
                )?);
            }
        }
        for (l, d, dc) in lifts {
            report.absorb(&dc, seed, Some(l), false);
            if dc.iter().any(|c| !c.passed()) {
                if let Some(dir) = &opts.out_dir {
                    let failed: Vec<&str> = dc
                        .iter()
                        .filter(|c| !c.passed())
                        .map(|c| c.name.as_str())
                        .collect();
                    let text = format!(
                        "# seed {seed} lift {l}; failed: {}\n{}",
                        failed.join(", "),
                        serialize_diagram(&d)
                    );
                    report.counterexamples.push(write_file(
                        dir,
                        &format!("{theorem}-seed{seed}-lift{l}.dgm"),
                        &text,
                    )?);
                }
            }
        }
    }
    Ok(report)
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<PathBuf, ReportError> {
    let path = dir.join(name);
    std::fs::create_dir_all(dir)
        .and_then(|_| std::fs::write(&path, text))
        .map_err(|source| ReportError::Io {
            path: path.clone(),
            source,
        })?;
    Ok(path)
}
