//! Simple cycles of a multigraph.
//!
//! A cycle is stored as a closed walk of `(edge, forward)` steps. Every cycle
//! is kept in canonical form: the lexicographically smallest sequence among
//! all rotations and reflections of the walk, so two walks around the same
//! circle subgraph compare equal.

use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, EdgeSet, MultiGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("a cycle needs at least one edge")]
    Empty,
    #[error("edge {0:?} is not an edge of the graph")]
    UnknownEdge(EdgeId),
    #[error("consecutive steps {0} and {1} do not share a vertex")]
    Disconnected(usize, usize),
    #[error("vertex `{0}` is visited twice")]
    RepeatedVertex(String),
}

/// One traversal step: the edge and whether it is walked tail to head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Step {
    fn reversed(self) -> Step {
        Step {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    steps: Vec<Step>,
    edges: EdgeSet,
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.steps.cmp(&other.steps))
    }
}

fn start_of(g: &MultiGraph, s: Step) -> VertexId {
    let (t, h) = g.endpoints(s.edge);
    if s.forward {
        t
    } else {
        h
    }
}

fn end_of(g: &MultiGraph, s: Step) -> VertexId {
    let (t, h) = g.endpoints(s.edge);
    if s.forward {
        h
    } else {
        t
    }
}

fn canonical(steps: &[Step]) -> Vec<Step> {
    let k = steps.len();
    let reversed: Vec<Step> = steps.iter().rev().map(|s| s.reversed()).collect();
    let mut best: Option<Vec<Step>> = None;
    for seq in [steps, &reversed[..]] {
        for r in 0..k {
            let rotated: Vec<Step> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}

impl Cycle {
    /// Validates a closed walk and stores it canonically.
    pub fn new(g: &MultiGraph, steps: Vec<Step>) -> Result<Self, CycleError> {
        if steps.is_empty() {
            return Err(CycleError::Empty);
        }
        if let Some(s) = steps.iter().find(|s| s.edge.0 >= g.edge_count()) {
            return Err(CycleError::UnknownEdge(s.edge));
        }
        let k = steps.len();
        let mut seen = vec![false; g.vertex_count()];
        for i in 0..k {
            let j = (i + 1) % k;
            if end_of(g, steps[i]) != start_of(g, steps[j]) {
                return Err(CycleError::Disconnected(i, j));
            }
            let v = start_of(g, steps[i]);
            if seen[v.0] {
                return Err(CycleError::RepeatedVertex(g.vertex_name(v).to_string()));
            }
            seen[v.0] = true;
        }
        let steps = canonical(&steps);
        let edges = EdgeSet::from_edges(g.edge_count(), steps.iter().map(|s| s.edge));
        Ok(Cycle { steps, edges })
    }

    /// Builds a cycle from a vertex sequence `v0 v1 ... v(k-1)` (closing back
    /// to `v0`), picking the lowest-numbered edge between consecutive vertices.
    pub fn from_vertex_names(g: &MultiGraph, names: &[&str]) -> Result<Self, CycleError> {
        let mut steps = Vec::new();
        for i in 0..names.len() {
            let a = g
                .vertex_by_name(names[i])
                .ok_or_else(|| CycleError::RepeatedVertex(names[i].into()))?;
            let b = g
                .vertex_by_name(names[(i + 1) % names.len()])
                .ok_or_else(|| CycleError::RepeatedVertex(names[(i + 1) % names.len()].into()))?;
            let step = g
                .incident(a)
                .iter()
                .find_map(|&e| {
                    let (t, h) = g.endpoints(e);
                    if t == a && h == b {
                        Some(Step {
                            edge: e,
                            forward: true,
                        })
                    } else if h == a && t == b {
                        Some(Step {
                            edge: e,
                            forward: false,
                        })
                    } else {
                        None
                    }
                })
                .ok_or(CycleError::Disconnected(i, (i + 1) % names.len()))?;
            steps.push(step);
        }
        Cycle::new(g, steps)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn edge_set(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(e)
    }

    /// Traversal direction of `e` in this (canonical) orientation.
    pub fn direction(&self, e: EdgeId) -> Option<bool> {
        if !self.edges.contains(e) {
            return None;
        }
        self.steps.iter().find(|s| s.edge == e).map(|s| s.forward)
    }

    /// The same walk run backwards. Not canonical; use for orientation tests.
    pub fn reversed_steps(&self) -> Vec<Step> {
        self.steps.iter().rev().map(|s| s.reversed()).collect()
    }

    pub fn vertices(&self, g: &MultiGraph) -> Vec<VertexId> {
        self.steps.iter().map(|&s| start_of(g, s)).collect()
    }

    pub fn display<'a>(&'a self, g: &'a MultiGraph) -> impl fmt::Display + 'a {
        CycleDisplay {
            cycle: self,
            graph: g,
        }
    }
}

struct CycleDisplay<'a> {
    cycle: &'a Cycle,
    graph: &'a MultiGraph,
}

impl fmt::Display for CycleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.cycle.steps.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "{}{}",
                if s.forward { "+" } else { "-" },
                self.graph.edge_name(s.edge)
            )?;
        }
        Ok(())
    }
}

/// All simple cycles, optionally only those of length `k`, sorted by
/// `(length, canonical walk)`.
///
/// Each cycle is found exactly once: from its smallest edge, walked forward,
/// by a depth-first search over vertex-disjoint paths through larger edges.
pub fn enumerate_cycles(g: &MultiGraph, k: Option<usize>) -> Vec<Cycle> {
    let mut out = Vec::new();
    let max_len = k.unwrap_or(g.vertex_count().max(1));
    let mut on_path = vec![false; g.vertex_count()];
    for anchor in g.edge_ids() {
        let (a, b) = g.endpoints(anchor);
        let first = Step {
            edge: anchor,
            forward: true,
        };
        if a == b {
            if k.is_none_or(|k| k == 1) {
                out.push(Cycle::new(g, vec![first]).expect("loop is a cycle"));
            }
            continue;
        }
        on_path[a.0] = true;
        on_path[b.0] = true;
        let mut path = vec![first];
        extend(
            g,
            anchor,
            a,
            b,
            &mut path,
            &mut on_path,
            max_len,
            k,
            &mut out,
        );
        on_path[a.0] = false;
        on_path[b.0] = false;
    }
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &MultiGraph,
    anchor: EdgeId,
    target: VertexId,
    at: VertexId,
    path: &mut Vec<Step>,
    on_path: &mut [bool],
    max_len: usize,
    k: Option<usize>,
    out: &mut Vec<Cycle>,
) {
    for &e in g.incident(at) {
        if e <= anchor || g.edge(e).is_loop() {
            continue;
        }
        let edge = g.edge(e);
        let next = edge.other(at);
        let step = Step {
            edge: e,
            forward: edge.tail == at,
        };
        if next == target {
            if k.is_none_or(|k| k == path.len() + 1) {
                let mut steps = path.clone();
                steps.push(step);
                out.push(Cycle::new(g, steps).expect("closed simple walk"));
            }
            continue;
        }
        if on_path[next.0] || path.len() + 1 >= max_len {
            continue;
        }
        on_path[next.0] = true;
        path.push(step);
        extend(g, anchor, target, next, path, on_path, max_len, k, out);
        path.pop();
        on_path[next.0] = false;
    }
}

/// Length of a shortest cycle, if any.
pub fn girth(g: &MultiGraph) -> Option<usize> {
    enumerate_cycles(g, None).first().map(Cycle::len)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::graph::{build_named, NamedGraph};

    fn histogram(g: &MultiGraph) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in enumerate_cycles(g, None) {
            *h.entry(c.len()).or_default() += 1;
        }
        h
    }

    #[test]
    fn k4_has_seven_cycles() {
        let g = NamedGraph::Complete(4).build();
        assert_eq!(histogram(&g), BTreeMap::from([(3, 4), (4, 3)]));
    }

    #[test]
    fn petersen_and_heawood_counts() {
        let pg = NamedGraph::Petersen.build();
        assert_eq!(
            histogram(&pg),
            BTreeMap::from([(5, 12), (6, 10), (8, 15), (9, 20)])
        );
        assert_eq!(enumerate_cycles(&pg, Some(8)).len(), 15);
        let hg = NamedGraph::Heawood.build();
        assert_eq!(
            histogram(&hg),
            BTreeMap::from([(6, 28), (8, 21), (10, 84), (12, 56), (14, 24)])
        );
        assert_eq!(enumerate_cycles(&hg, Some(14)).len(), 24);
    }

    #[test]
    fn k33_counts() {
        let g = NamedGraph::CompleteBipartite(3, 3).build();
        assert_eq!(histogram(&g), BTreeMap::from([(4, 9), (6, 6)]));
    }

    #[test]
    fn multigraph_cycles() {
        let theta1 = build_named("theta", &[1]).unwrap();
        assert!(enumerate_cycles(&theta1, None).is_empty());
        let theta5 = build_named("theta", &[5]).unwrap();
        assert_eq!(histogram(&theta5), BTreeMap::from([(2, 10)]));
        // T(2): 3 choices of 2 parallel edges each way round the triangle.
        let t2 = build_named("T", &[2]).unwrap();
        assert_eq!(histogram(&t2), BTreeMap::from([(2, 3), (3, 8)]));
        let looped = MultiGraph::new(
            ["a", "b"],
            vec![
                ("l".into(), "a".into(), "a".into()),
                ("e".into(), "a".into(), "b".into()),
            ],
        )
        .unwrap();
        assert_eq!(histogram(&looped), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let g = NamedGraph::Petersen.build();
        let c = Cycle::from_vertex_names(&g, &["u1", "u2", "u3", "u4", "u5"]).unwrap();
        let d = Cycle::from_vertex_names(&g, &["u3", "u2", "u1", "u5", "u4"]).unwrap();
        assert_eq!(c, d);
        let again = Cycle::new(&g, c.reversed_steps()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn invalid_walks_are_rejected() {
        let g = NamedGraph::Complete(4).build();
        assert_eq!(Cycle::new(&g, vec![]), Err(CycleError::Empty));
        // x1x2 then x3x4: no shared vertex
        let bad = vec![
            Step {
                edge: EdgeId(0),
                forward: true,
            },
            Step {
                edge: EdgeId(5),
                forward: true,
            },
        ];
        assert!(matches!(
            Cycle::new(&g, bad),
            Err(CycleError::Disconnected(..))
        ));
    }

    #[test]
    fn enumerated_cycles_revalidate() {
        for g in [
            NamedGraph::Petersen.build(),
            NamedGraph::Complete(5).build(),
            NamedGraph::MultipleTriangle(3).build(),
        ] {
            for c in enumerate_cycles(&g, None) {
                let again = Cycle::new(&g, c.steps().to_vec()).unwrap();
                assert_eq!(again, c);
                // 2-regular and connected: each vertex of the walk has exactly two cycle edges
                for v in c.vertices(&g) {
                    let deg: usize = g
                        .incident(v)
                        .iter()
                        .filter(|&&e| c.contains_edge(e))
                        .map(|&e| if g.edge(e).is_loop() { 2 } else { 1 })
                        .sum();
                    assert_eq!(deg, 2);
                }
                assert_eq!(c.edge_set().len(), c.len());
            }
        }
    }

    #[test]
    fn girth_values() {
        assert_eq!(girth(&NamedGraph::Petersen.build()), Some(5));
        assert_eq!(girth(&NamedGraph::Heawood.build()), Some(6));
        assert_eq!(girth(&build_named("theta", &[1]).unwrap()), None);
    }
}
