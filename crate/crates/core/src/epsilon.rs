//! Integer weights on pairs of disjoint oriented edges of the Petersen and
//! Heawood graphs, used by the ℒ invariants.
//!
//! The tables ship as rule files: each line names two edges by index
//! patterns such as `u_{i}v_{i-1}` and a weight, and expands over all
//! residues `i`. Expansion symmetrizes the pairs and is audited against the
//! distance classes of the graph before the table is handed out.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::distance::{DistanceTable, EdgeDistance};
use crate::graph::{EdgeId, MultiGraph, NamedGraph};

const PG_RULES: &str = include_str!("../data/epsilon-pg.txt");
const HG_RULES: &str = include_str!("../data/epsilon-hg.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Petersen,
    Heawood,
}

impl Target {
    pub fn graph(self) -> MultiGraph {
        match self {
            Target::Petersen => NamedGraph::Petersen.build(),
            Target::Heawood => NamedGraph::Heawood.build(),
        }
    }

    /// Distance classes carrying weights.
    pub fn distances(self) -> &'static [usize] {
        match self {
            Target::Petersen => &[1],
            Target::Heawood => &[1, 2],
        }
    }

    fn modulus(self) -> i64 {
        match self {
            Target::Petersen => 5,
            Target::Heawood => 7,
        }
    }

    /// Required weight parity per distance class, if any.
    fn parity(self, distance: usize) -> Option<i64> {
        match (self, distance) {
            (Target::Petersen, _) => None,
            (Target::Heawood, 1) => Some(0),
            (Target::Heawood, _) => Some(1),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Petersen => "PG",
            Target::Heawood => "HG",
        })
    }
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "PG" | "pg" => Ok(Target::Petersen),
            "HG" | "hg" => Ok(Target::Heawood),
            _ => Err(format!("unknown target `{s}` (expected PG or HG)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EpsilonError {
    #[error("rule line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("rule line {line}: no edge named {name}")]
    UnknownEdge { line: usize, name: String },
    #[error("rule line {line}: {a} and {b} are not a weighted pair")]
    NotWeighted { line: usize, a: String, b: String },
    #[error("pair ({a}, {b}) gets weight {first} and {second}")]
    Conflict {
        a: String,
        b: String,
        first: i64,
        second: i64,
    },
    #[error("{} weighted pairs have no rule, e.g. ({}, {})", .missing.len(), .missing[0].0, .missing[0].1)]
    Incomplete { missing: Vec<(String, String)> },
    #[error("pair ({a}, {b}) at distance {distance} has weight {weight} of the wrong parity")]
    Parity {
        a: String,
        b: String,
        distance: usize,
        weight: i64,
    },
    #[error("PG weights must be ±1; ({a}, {b}) has {weight}")]
    Magnitude { a: String, b: String, weight: i64 },
}

/// Outcome of the load-time audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Audit {
    /// Number of pairs per weighted distance class.
    pub pairs_by_distance: Vec<(usize, usize)>,
    /// Number of pairs per weight value.
    pub weights: BTreeMap<i64, usize>,
    /// Weight parities seen per distance class: (distance, even, odd).
    pub parity_by_distance: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct EpsilonTable {
    target: Target,
    graph: MultiGraph,
    /// Keys are ordered `(smaller id, larger id)`; both edges in their
    /// native orientation.
    entries: BTreeMap<(EdgeId, EdgeId), i64>,
    audit: Audit,
}

impl EpsilonTable {
    /// The shipped table for `target`. Panics if the shipped rules fail the
    /// audit, which is a build defect rather than a runtime condition.
    pub fn standard(target: Target) -> &'static EpsilonTable {
        static PG: OnceLock<EpsilonTable> = OnceLock::new();
        static HG: OnceLock<EpsilonTable> = OnceLock::new();
        let cell = match target {
            Target::Petersen => &PG,
            Target::Heawood => &HG,
        };
        cell.get_or_init(|| {
            let rules = match target {
                Target::Petersen => PG_RULES,
                Target::Heawood => HG_RULES,
            };
            EpsilonTable::from_rules(target, rules)
                .unwrap_or_else(|e| panic!("{target} weight table: {e}"))
        })
    }

    /// Expands and audits a rule file.
    pub fn from_rules(target: Target, text: &str) -> Result<Self, EpsilonError> {
        let graph = target.graph();
        let table = DistanceTable::new(&graph);
        let weighted = |d: EdgeDistance| match d {
            EdgeDistance::Finite(k) if target.distances().contains(&k) && k > 0 => Some(k),
            _ => None,
        };
        let n = target.modulus();
        let mut entries: BTreeMap<(EdgeId, EdgeId), i64> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let [a, b, w] = fields[..] else {
                return Err(EpsilonError::Syntax {
                    line,
                    message: "expected `<edge> <edge> <weight>`".into(),
                });
            };
            let weight: i64 = w.parse().map_err(|_| EpsilonError::Syntax {
                line,
                message: format!("bad weight `{w}`"),
            })?;
            let pa = parse_pattern(a).map_err(|message| EpsilonError::Syntax { line, message })?;
            let pb = parse_pattern(b).map_err(|message| EpsilonError::Syntax { line, message })?;
            for i in 1..=n {
                let lookup = |p: &[(char, i64)]| {
                    let name = expand(p, i, n);
                    graph
                        .edge_by_name(&name)
                        .ok_or(EpsilonError::UnknownEdge { line, name })
                };
                let (d, e) = (lookup(&pa)?, lookup(&pb)?);
                if weighted(table.edge_distance(d, e)).is_none() || graph.adjacent(d, e) {
                    return Err(EpsilonError::NotWeighted {
                        line,
                        a: graph.edge_name(d).into(),
                        b: graph.edge_name(e).into(),
                    });
                }
                let key = if d < e { (d, e) } else { (e, d) };
                if let Some(&old) = entries.get(&key) {
                    if old != weight {
                        return Err(EpsilonError::Conflict {
                            a: graph.edge_name(key.0).into(),
                            b: graph.edge_name(key.1).into(),
                            first: old,
                            second: weight,
                        });
                    }
                }
                entries.insert(key, weight);
            }
        }

        // Completeness and weight audit.
        let names = |(d, e): (EdgeId, EdgeId)| {
            (
                graph.edge_name(d).to_string(),
                graph.edge_name(e).to_string(),
            )
        };
        let mut missing = Vec::new();
        let mut pairs_by_distance = Vec::new();
        let mut parity_by_distance = Vec::new();
        for &k in target.distances() {
            let pairs = table.pairs_at(k);
            pairs_by_distance.push((k, pairs.len()));
            let (mut even, mut odd) = (0, 0);
            for &pair in &pairs {
                let Some(&w) = entries.get(&pair) else {
                    missing.push(names(pair));
                    continue;
                };
                if w.rem_euclid(2) == 0 {
                    even += 1;
                } else {
                    odd += 1;
                }
                if let Some(p) = target.parity(k) {
                    if w.rem_euclid(2) != p {
                        let (a, b) = names(pair);
                        return Err(EpsilonError::Parity {
                            a,
                            b,
                            distance: k,
                            weight: w,
                        });
                    }
                }
                if target == Target::Petersen && w.abs() != 1 {
                    let (a, b) = names(pair);
                    return Err(EpsilonError::Magnitude { a, b, weight: w });
                }
            }
            parity_by_distance.push((k, even, odd));
        }
        if !missing.is_empty() {
            return Err(EpsilonError::Incomplete { missing });
        }
        let mut weights = BTreeMap::new();
        for &w in entries.values() {
            *weights.entry(w).or_insert(0) += 1;
        }
        let audit = Audit {
            pairs_by_distance,
            weights,
            parity_by_distance,
        };
        Ok(EpsilonTable {
            target,
            graph,
            entries,
            audit,
        })
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn audit(&self) -> &Audit {
        &self.audit
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// ε(d, e) for natively oriented edges; `None` off the weighted pairs.
    pub fn weight(&self, d: EdgeId, e: EdgeId) -> Option<i64> {
        let key = if d < e { (d, e) } else { (e, d) };
        self.entries.get(&key).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((EdgeId, EdgeId), i64)> + '_ {
        self.entries.iter().map(|(&k, &w)| (k, w))
    }
}

/// `u_{i}v_{i-1}` → [('u', 0), ('v', -1)].
fn parse_pattern(s: &str) -> Result<Vec<(char, i64)>, String> {
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let mut chars = rest.chars();
        let letter = chars.next().unwrap();
        let tail = chars.as_str();
        let Some(tail) = tail.strip_prefix("_{") else {
            return Err(format!("bad edge pattern `{s}`"));
        };
        let close = tail
            .find('}')
            .ok_or_else(|| format!("unclosed index in `{s}`"))?;
        let expr = tail[..close].trim();
        let offset = match expr.strip_prefix('i') {
            Some("") => 0,
            Some(o) => o
                .replace(' ', "")
                .parse::<i64>()
                .map_err(|_| format!("bad index `{expr}` in `{s}`"))?,
            None => return Err(format!("index must be relative to i in `{s}`")),
        };
        out.push((letter, offset));
        rest = &tail[close + 1..];
    }
    if out.len() != 2 {
        return Err(format!("edge pattern `{s}` must name two vertices"));
    }
    Ok(out)
}

fn expand(p: &[(char, i64)], i: i64, n: i64) -> String {
    p.iter()
        .map(|&(c, o)| format!("{c}{}", (i + o - 1).rem_euclid(n) + 1))
        .collect()
}
