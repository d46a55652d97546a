//! Edge-to-edge distances and the distance classes `D_k(G)`.

use std::collections::VecDeque;
use std::fmt;

use crate::cycles::{Cycle, Step};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Length of a shortest path joining two edges, viewed as subgraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeDistance {
    Finite(usize),
    /// The edges lie in different components.
    Infinite,
}

impl EdgeDistance {
    pub fn finite(self) -> Option<usize> {
        match self {
            EdgeDistance::Finite(d) => Some(d),
            EdgeDistance::Infinite => None,
        }
    }
}

impl fmt::Display for EdgeDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeDistance::Finite(d) => write!(f, "{d}"),
            EdgeDistance::Infinite => write!(f, "inf"),
        }
    }
}

/// All-pairs vertex distances, from which edge distances are read off.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    vertex: Vec<Vec<Option<usize>>>,
    endpoints: Vec<(VertexId, VertexId)>,
}

impl DistanceTable {
    pub fn new(g: &MultiGraph) -> Self {
        let vertex = g.vertex_ids().map(|v| bfs(g, v)).collect();
        let endpoints = g.edge_ids().map(|e| g.endpoints(e)).collect();
        DistanceTable { vertex, endpoints }
    }

    pub fn vertex_distance(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.vertex[a.0][b.0]
    }

    pub fn edge_distance(&self, d: EdgeId, e: EdgeId) -> EdgeDistance {
        let (a, b) = self.endpoints[d.0];
        let (c, f) = self.endpoints[e.0];
        [(a, c), (a, f), (b, c), (b, f)]
            .into_iter()
            .filter_map(|(x, y)| self.vertex[x.0][y.0])
            .min()
            .map_or(EdgeDistance::Infinite, EdgeDistance::Finite)
    }

    /// Unordered pairs of distinct edges at distance exactly `k`, as `(d, e)`
    /// with `d < e`, in lexicographic order.
    pub fn pairs_at(&self, k: usize) -> Vec<(EdgeId, EdgeId)> {
        let m = self.endpoints.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if self.edge_distance(EdgeId(i), EdgeId(j)) == EdgeDistance::Finite(k) {
                    out.push((EdgeId(i), EdgeId(j)));
                }
            }
        }
        out
    }

    /// Edges at distance exactly `k` from `e`, excluding `e` itself.
    pub fn edges_at(&self, e: EdgeId, k: usize) -> Vec<EdgeId> {
        (0..self.endpoints.len())
            .map(EdgeId)
            .filter(|&f| f != e && self.edge_distance(e, f) == EdgeDistance::Finite(k))
            .collect()
    }
}

fn bfs(g: &MultiGraph, source: VertexId) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[source.0] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v.0].unwrap();
        for w in g.neighbours(v) {
            if dist[w.0].is_none() {
                dist[w.0] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// `d(d, e)`; zero when the edges are equal or share an endpoint.
pub fn edge_distance(g: &MultiGraph, d: EdgeId, e: EdgeId) -> EdgeDistance {
    DistanceTable::new(g).edge_distance(d, e)
}

/// `D_k(G)`.
pub fn distance_class(g: &MultiGraph, k: usize) -> Vec<(EdgeId, EdgeId)> {
    DistanceTable::new(g).pairs_at(k)
}

/// If the edges at distance `k` from `e` form one cycle, returns it.
pub fn distance_neighbourhood_cycle(g: &MultiGraph, e: EdgeId, k: usize) -> Option<Cycle> {
    let table = DistanceTable::new(g);
    let ring = table.edges_at(e, k);
    edges_as_cycle(g, &ring)
}

/// Interprets an edge list as a single cycle, if it is one.
pub fn edges_as_cycle(g: &MultiGraph, edges: &[EdgeId]) -> Option<Cycle> {
    let first = *edges.first()?;
    let mut used = vec![false; edges.len()];
    used[0] = true;
    let (start, mut at) = g.endpoints(first);
    let mut steps = vec![Step {
        edge: first,
        forward: true,
    }];
    if g.edge(first).is_loop() {
        return (edges.len() == 1)
            .then(|| Cycle::new(g, steps).ok())
            .flatten();
    }
    while at != start {
        let (idx, &next) = edges
            .iter()
            .enumerate()
            .find(|&(i, &f)| !used[i] && g.edge(f).touches(at) && !g.edge(f).is_loop())?;
        used[idx] = true;
        let edge = g.edge(next);
        steps.push(Step {
            edge: next,
            forward: edge.tail == at,
        });
        at = edge.other(at);
    }
    if used.iter().any(|u| !u) {
        return None;
    }
    Cycle::new(g, steps).ok()
}
