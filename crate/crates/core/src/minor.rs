//! K₄-minor testing by series-parallel reduction.
//!
//! A graph has no K₄ minor exactly when each block reduces to nothing under
//! loop deletion, leaf deletion, series suppression of degree-2 vertices and
//! merging of parallel edges. When the reduction gets stuck, the remaining
//! core (every vertex of degree ≥ 3, no parallels) is reported, and an
//! explicit K₄ model — four connected branch sets, pairwise joined — is
//! extracted by greedy deletion and contraction.

use std::collections::HashMap;
use std::fmt;

use crate::blocks::block_decomposition;
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// One step of the reduction, in terms of the input graph's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    Loop(VertexId),
    Leaf(VertexId),
    Series(VertexId),
    Parallel(VertexId, VertexId),
}

/// Irreducible remainder of one block: core vertices and the chains of
/// original edges that became its (virtual) edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StuckCore {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId, Vec<EdgeId>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub trace: Vec<ReductionStep>,
    /// `None` when every block reduced completely.
    pub core: Option<StuckCore>,
}

/// A K₄ model inside a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub branch_sets: [Vec<VertexId>; 4],
    /// Edges inside each branch set spanning it.
    pub spanning: [Vec<EdgeId>; 4],
    /// One edge per pair of branch sets.
    pub connectors: Vec<EdgeId>,
}

impl MinorWitness {
    pub fn verify(&self, g: &MultiGraph) -> bool {
        let mut owner = vec![None; g.vertex_count()];
        for (i, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return false;
            }
            for v in set {
                if owner[v.0].replace(i).is_some() {
                    return false;
                }
            }
        }
        for (i, set) in self.branch_sets.iter().enumerate() {
            // union-find free connectivity check: grow from the first vertex
            let mut reached = vec![set[0]];
            let mut grew = true;
            while grew {
                grew = false;
                for &e in &self.spanning[i] {
                    let (a, b) = g.endpoints(e);
                    if owner[a.0] != Some(i) || owner[b.0] != Some(i) {
                        return false;
                    }
                    match (reached.contains(&a), reached.contains(&b)) {
                        (true, false) => reached.push(b),
                        (false, true) => reached.push(a),
                        _ => continue,
                    }
                    grew = true;
                }
            }
            if reached.len() != set.len() {
                return false;
            }
        }
        let mut joined = [[false; 4]; 4];
        for &e in &self.connectors {
            let (a, b) = g.endpoints(e);
            if let (Some(i), Some(j)) = (owner[a.0], owner[b.0]) {
                joined[i][j] = true;
                joined[j][i] = true;
            }
        }
        (0..4).all(|i| (0..4).all(|j| i == j || joined[i][j]))
    }

    pub fn display<'a>(&'a self, g: &'a MultiGraph) -> impl fmt::Display + 'a {
        WitnessDisplay { w: self, g }
    }
}

struct WitnessDisplay<'a> {
    w: &'a MinorWitness,
    g: &'a MultiGraph,
}

impl fmt::Display for WitnessDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |set: &[VertexId]| {
            set.iter()
                .map(|&v| self.g.vertex_name(v))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "K4 minor: branch sets")?;
        for set in &self.w.branch_sets {
            write!(f, " {{{}}}", names(set))?;
        }
        let conn: Vec<&str> = self
            .w
            .connectors
            .iter()
            .map(|&e| self.g.edge_name(e))
            .collect();
        write!(f, "; connectors {}", conn.join(","))
    }
}

/// A K₄ minor together with the stuck reduction core that exposed it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K4Minor {
    pub core: StuckCore,
    pub witness: MinorWitness,
}

#[derive(Clone, Debug)]
struct VirtualEdge {
    a: usize,
    b: usize,
    chain: Vec<EdgeId>,
    alive: bool,
}

/// Reduces one edge set; returns the trace and the stuck core, if any.
fn reduce_edges(g: &MultiGraph, edges: &[EdgeId]) -> (Vec<ReductionStep>, Option<StuckCore>) {
    let n = g.vertex_count();
    let mut vedges: Vec<VirtualEdge> = edges
        .iter()
        .map(|&e| {
            let (a, b) = g.endpoints(e);
            VirtualEdge {
                a: a.0,
                b: b.0,
                chain: vec![e],
                alive: true,
            }
        })
        .collect();
    let mut trace = Vec::new();
    loop {
        let mut changed = false;
        for ve in vedges.iter_mut().filter(|ve| ve.alive && ve.a == ve.b) {
            ve.alive = false;
            trace.push(ReductionStep::Loop(VertexId(ve.a)));
            changed = true;
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, ve) in vedges.iter_mut().enumerate().filter(|(_, ve)| ve.alive) {
            let key = (ve.a.min(ve.b), ve.a.max(ve.b));
            if seen.insert(key, i).is_some() {
                ve.alive = false;
                trace.push(ReductionStep::Parallel(VertexId(key.0), VertexId(key.1)));
                changed = true;
            }
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, ve) in vedges.iter().enumerate().filter(|(_, ve)| ve.alive) {
            incident[ve.a].push(i);
            incident[ve.b].push(i);
        }
        if let Some(v) = (0..n).find(|&v| incident[v].len() == 1) {
            vedges[incident[v][0]].alive = false;
            trace.push(ReductionStep::Leaf(VertexId(v)));
            continue;
        }
        if let Some(v) = (0..n).find(|&v| incident[v].len() == 2) {
            let (i, j) = (incident[v][0], incident[v][1]);
            let x = if vedges[i].a == v {
                vedges[i].b
            } else {
                vedges[i].a
            };
            let y = if vedges[j].a == v {
                vedges[j].b
            } else {
                vedges[j].a
            };
            let mut chain = std::mem::take(&mut vedges[i].chain);
            chain.extend(std::mem::take(&mut vedges[j].chain));
            vedges[i].alive = false;
            vedges[j].alive = false;
            vedges.push(VirtualEdge {
                a: x,
                b: y,
                chain,
                alive: true,
            });
            trace.push(ReductionStep::Series(VertexId(v)));
            continue;
        }
        if !changed {
            break;
        }
    }
    let remaining: Vec<&VirtualEdge> = vedges.iter().filter(|ve| ve.alive).collect();
    if remaining.is_empty() {
        return (trace, None);
    }
    let mut vertices: Vec<VertexId> = remaining
        .iter()
        .flat_map(|ve| [VertexId(ve.a), VertexId(ve.b)])
        .collect();
    vertices.sort();
    vertices.dedup();
    let edges = remaining
        .iter()
        .map(|ve| (VertexId(ve.a), VertexId(ve.b), ve.chain.clone()))
        .collect();
    (trace, Some(StuckCore { vertices, edges }))
}

/// Series-parallel reduction applied block by block. Stops at the first
/// block that does not reduce.
pub fn sp_reduce(g: &MultiGraph) -> Reduction {
    let mut trace = Vec::new();
    for block in block_decomposition(g).blocks {
        let (steps, core) = reduce_edges(g, &block.edges);
        trace.extend(steps);
        if core.is_some() {
            return Reduction { trace, core };
        }
    }
    Reduction { trace, core: None }
}

pub fn has_k4_minor(g: &MultiGraph) -> bool {
    sp_reduce(g).core.is_some()
}

fn reducible(n: usize, edges: &[(usize, usize)]) -> bool {
    // Same rules on a plain edge list, without bookkeeping; used by the
    // witness search where it runs many times.
    let mut edges: Vec<(usize, usize)> = edges
        .iter()
        .filter(|(a, b)| a != b)
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    loop {
        edges.sort();
        edges.dedup();
        let mut deg = vec![0usize; n];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        if let Some(v) = (0..n).find(|&v| deg[v] == 1) {
            edges.retain(|&(a, b)| a != v && b != v);
            continue;
        }
        if let Some(v) = (0..n).find(|&v| deg[v] == 2) {
            let ends: Vec<usize> = edges
                .iter()
                .filter(|&&(a, b)| a == v || b == v)
                .map(|&(a, b)| if a == v { b } else { a })
                .collect();
            edges.retain(|&(a, b)| a != v && b != v);
            if ends[0] != ends[1] {
                edges.push((ends[0].min(ends[1]), ends[0].max(ends[1])));
            }
            continue;
        }
        return edges.is_empty();
    }
}

/// Finds a K₄ minor, with the reduction core and an explicit model.
pub fn k4_minor_witness(g: &MultiGraph) -> Option<K4Minor> {
    let core = sp_reduce(g).core?;
    let n = g.vertex_count();
    // Working graph: simple edges labelled by an original edge id.
    let mut edges: Vec<(usize, usize, EdgeId)> = Vec::new();
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        if a != b
            && !edges
                .iter()
                .any(|&(x, y, _)| (x, y) == (a.0.min(b.0), a.0.max(b.0)))
        {
            edges.push((a.0.min(b.0), a.0.max(b.0), e));
        }
    }
    let mut sets: Vec<Vec<VertexId>> = (0..n).map(|v| vec![VertexId(v)]).collect();
    let mut spanning: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    let plain = |edges: &[(usize, usize, EdgeId)]| {
        edges.iter().map(|&(a, b, _)| (a, b)).collect::<Vec<_>>()
    };
    loop {
        // Deletion pass: one sweep suffices since the property is monotone.
        let mut i = 0;
        while i < edges.len() {
            let mut trial = plain(&edges);
            trial.remove(i);
            if !reducible(n, &trial) {
                edges.remove(i);
            } else {
                i += 1;
            }
        }
        let mut contracted = false;
        for i in 0..edges.len() {
            let (x, y, e) = edges[i];
            let trial: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b, _)| (if a == y { x } else { a }, if b == y { x } else { b }))
                .collect();
            if reducible(n, &trial) {
                continue;
            }
            let moved = std::mem::take(&mut sets[y]);
            sets[x].extend(moved);
            let moved = std::mem::take(&mut spanning[y]);
            spanning[x].extend(moved);
            spanning[x].push(e);
            let mut next: Vec<(usize, usize, EdgeId)> = Vec::new();
            for &(a, b, f) in &edges {
                let (a, b) = (if a == y { x } else { a }, if b == y { x } else { b });
                if a != b && !next.iter().any(|&(p, q, _)| (p, q) == (a.min(b), a.max(b))) {
                    next.push((a.min(b), a.max(b), f));
                }
            }
            edges = next;
            contracted = true;
            break;
        }
        if !contracted {
            break;
        }
    }
    let mut live: Vec<usize> = edges.iter().flat_map(|&(a, b, _)| [a, b]).collect();
    live.sort();
    live.dedup();
    assert!(
        live.len() == 4 && edges.len() == 6,
        "minor-minimal graph with a K4 minor must be K4"
    );
    let mut branch_sets: [Vec<VertexId>; 4] = Default::default();
    let mut span: [Vec<EdgeId>; 4] = Default::default();
    for (k, &v) in live.iter().enumerate() {
        branch_sets[k] = std::mem::take(&mut sets[v]);
        branch_sets[k].sort();
        span[k] = std::mem::take(&mut spanning[v]);
        span[k].sort();
    }
    let mut connectors: Vec<EdgeId> = edges.iter().map(|&(_, _, e)| e).collect();
    connectors.sort();
    let witness = MinorWitness {
        branch_sets,
        spanning: span,
        connectors,
    };
    debug_assert!(witness.verify(g));
    Some(K4Minor { core, witness })
}

/// Exhaustive K₄-minor test: searches for four disjoint, connected,
/// pairwise adjacent vertex sets. Exponential; intended for graphs with at
/// most about ten vertices, as an independent cross-check.
pub fn has_k4_minor_exhaustive(g: &MultiGraph) -> bool {
    let n = g.vertex_count();
    assert!(n <= 16, "exhaustive minor search is limited to 16 vertices");
    let mut adj = vec![0u32; n];
    for e in g.edges() {
        if e.tail != e.head {
            adj[e.tail.0] |= 1 << e.head.0;
            adj[e.head.0] |= 1 << e.tail.0;
        }
    }
    let mut labels = vec![4u8; n];
    search_labels(&adj, &mut labels, 0, 0)
}

/// Labels 0..=3 name branch sets (introduced in order), 4 means unused.
fn search_labels(adj: &[u32], labels: &mut [u8], at: usize, used: u8) -> bool {
    if at == labels.len() {
        return used == 4 && model_ok(adj, labels);
    }
    // too few vertices left to introduce the remaining branch sets
    if (labels.len() - at) < (4 - used) as usize {
        return false;
    }
    for label in 0..=used.min(3) {
        labels[at] = label;
        let next = if label == used { used + 1 } else { used };
        if search_labels(adj, labels, at + 1, next) {
            return true;
        }
    }
    labels[at] = 4;
    search_labels(adj, labels, at + 1, used)
}

fn model_ok(adj: &[u32], labels: &[u8]) -> bool {
    let mut sets = [0u32; 4];
    for (v, &l) in labels.iter().enumerate() {
        if l < 4 {
            sets[l as usize] |= 1 << v;
        }
    }
    let neighbourhood = |set: u32| {
        (0..adj.len())
            .filter(|v| set >> v & 1 == 1)
            .fold(0, |acc, v| acc | adj[v])
    };
    for i in 0..4 {
        for j in i + 1..4 {
            if neighbourhood(sets[i]) & sets[j] == 0 {
                return false;
            }
        }
    }
    sets.iter().all(|&set| {
        let mut reached = set & set.wrapping_neg();
        loop {
            let grown = (reached | neighbourhood(reached)) & set;
            if grown == reached {
                return reached == set;
            }
            reached = grown;
        }
    })
}
