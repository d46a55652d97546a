//! Finite multigraphs with named, oriented edges.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownEndpoint { edge: String, vertex: String },
    #[error(
        "invalid name `{0}`: names must be non-empty and free of whitespace, `~`, `#`, `:` and `;`"
    )]
    InvalidName(String),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("graph family `{family}` expects {expected}")]
    BadParameters {
        family: String,
        expected: &'static str,
    },
}

/// An oriented edge: `tail` is the initial vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.tail == v || self.head == v
    }
}

/// The graph families with a canonical labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Petersen,
    Heawood,
    /// Three vertices, each pair joined by `m` parallel edges.
    MultipleTriangle(usize),
    /// Two vertices joined by `n` parallel edges.
    Theta(usize),
}

impl NamedGraph {
    /// Parses `family` plus integer parameters, e.g. `("K", [3, 3])`.
    pub fn from_parts(family: &str, params: &[i64]) -> Result<Self, GraphError> {
        let positive = |expected: &'static str| {
            if params.iter().all(|&p| p > 0) {
                Ok(())
            } else {
                Err(GraphError::BadParameters {
                    family: family.to_string(),
                    expected,
                })
            }
        };
        match (family, params) {
            ("PG", []) => Ok(NamedGraph::Petersen),
            ("HG", []) => Ok(NamedGraph::Heawood),
            ("K", [n]) => {
                positive("a positive vertex count").map(|_| NamedGraph::Complete(*n as usize))
            }
            ("K", [m, n]) => positive("two positive part sizes")
                .map(|_| NamedGraph::CompleteBipartite(*m as usize, *n as usize)),
            ("T", [m]) => positive("a positive multiplicity")
                .map(|_| NamedGraph::MultipleTriangle(*m as usize)),
            ("theta", [n]) => {
                positive("a positive edge count").map(|_| NamedGraph::Theta(*n as usize))
            }
            ("PG" | "HG", _) => Err(GraphError::BadParameters {
                family: family.into(),
                expected: "no parameters",
            }),
            ("K", _) => Err(GraphError::BadParameters {
                family: family.into(),
                expected: "one or two parameters",
            }),
            ("T" | "theta", _) => Err(GraphError::BadParameters {
                family: family.into(),
                expected: "one parameter",
            }),
            _ => Err(GraphError::UnknownFamily(family.to_string())),
        }
    }

    pub fn build(self) -> MultiGraph {
        let mut g = match self {
            NamedGraph::Complete(n) => complete(n),
            NamedGraph::CompleteBipartite(m, n) => complete_bipartite(m, n),
            NamedGraph::Petersen => petersen(),
            NamedGraph::Heawood => heawood(),
            NamedGraph::MultipleTriangle(m) => multiple_triangle(m),
            NamedGraph::Theta(n) => theta(n),
        };
        g.family = Some(self);
        g
    }
}

impl fmt::Display for NamedGraph {
    /// The `@` shorthand used by the text formats.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Complete(n) => write!(f, "@K {n}"),
            NamedGraph::CompleteBipartite(m, n) => write!(f, "@K {m} {n}"),
            NamedGraph::Petersen => write!(f, "@PG"),
            NamedGraph::Heawood => write!(f, "@HG"),
            NamedGraph::MultipleTriangle(m) => write!(f, "@T {m}"),
            NamedGraph::Theta(n) => write!(f, "@theta {n}"),
        }
    }
}

/// Builds a named graph from a family tag and parameters.
pub fn build_named(family: &str, params: &[i64]) -> Result<MultiGraph, GraphError> {
    NamedGraph::from_parts(family, params).map(NamedGraph::build)
}

/// A finite graph; loops and multi-edges are allowed.
#[derive(Clone, Debug)]
pub struct MultiGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    incidence: Vec<Vec<EdgeId>>,
    family: Option<NamedGraph>,
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for MultiGraph {}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '~' | '#' | ':' | ';'))
}

impl MultiGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut g = MultiGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            vertex_index: HashMap::new(),
            edge_index: HashMap::new(),
            incidence: Vec::new(),
            family: None,
        };
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (name, tail, head) in edges {
            g.add_edge(name, &tail, &head)?;
        }
        Ok(g)
    }

    pub fn empty() -> Self {
        MultiGraph::new(Vec::<String>::new(), Vec::new()).expect("empty graph")
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId, GraphError> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(GraphError::InvalidName(name));
        }
        if self.vertex_index.contains_key(&name) {
            return Err(GraphError::DuplicateVertex(name));
        }
        let id = VertexId(self.vertices.len());
        self.vertex_index.insert(name.clone(), id);
        self.vertices.push(name);
        self.incidence.push(Vec::new());
        self.family = None;
        Ok(id)
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        tail: &str,
        head: &str,
    ) -> Result<EdgeId, GraphError> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(GraphError::InvalidName(name));
        }
        if self.edge_index.contains_key(&name) {
            return Err(GraphError::DuplicateEdge(name));
        }
        let lookup = |v: &str| {
            self.vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| GraphError::UnknownEndpoint {
                    edge: name.clone(),
                    vertex: v.to_string(),
                })
        };
        let (t, h) = (lookup(tail)?, lookup(head)?);
        let id = EdgeId(self.edges.len());
        self.edge_index.insert(name.clone(), id);
        self.edges.push(Edge {
            name,
            tail: t,
            head: h,
        });
        self.incidence[t.0].push(id);
        if h != t {
            self.incidence[h.0].push(id);
        }
        self.family = None;
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    /// Edges incident to `v`; a loop is listed once.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v.0]
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v.0]
            .iter()
            .map(|&e| if self.edges[e.0].is_loop() { 2 } else { 1 })
            .sum()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let edge = &self.edges[e.0];
        (edge.tail, edge.head)
    }

    /// Whether two distinct edges share an endpoint.
    pub fn adjacent(&self, d: EdgeId, e: EdgeId) -> bool {
        let (a, b) = self.endpoints(d);
        let (c, f) = self.endpoints(e);
        a == c || a == f || b == c || b == f
    }

    pub fn family(&self) -> Option<NamedGraph> {
        self.family
    }

    /// Vertex-induced neighbour lists (multi-edges collapsed, loops dropped).
    pub fn neighbours(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.incidence[v.0]
            .iter()
            .filter(|&&e| !self.edges[e.0].is_loop())
            .map(|&e| self.edges[e.0].other(v))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Number of edges joining `a` and `b` (loops when `a == b`).
    pub fn multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        self.incidence[a.0]
            .iter()
            .filter(|&&e| {
                let edge = &self.edges[e.0];
                (edge.tail == a && edge.head == b) || (edge.tail == b && edge.head == a)
            })
            .count()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.vertex_count()];
        for start in self.vertex_ids() {
            if side[start.0].is_some() {
                continue;
            }
            side[start.0] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let s = side[v.0].unwrap();
                for &e in self.incident(v) {
                    let w = self.edges[e.0].other(v);
                    match side[w.0] {
                        None => {
                            side[w.0] = Some(!s);
                            stack.push(w);
                        }
                        Some(t) if t == s => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// The subgraph spanned by `edges` plus `extra_vertices`, keeping names.
    pub fn subgraph(&self, edges: &[EdgeId], extra_vertices: &[VertexId]) -> MultiGraph {
        let mut keep = vec![false; self.vertex_count()];
        for &v in extra_vertices {
            keep[v.0] = true;
        }
        for &e in edges {
            let (t, h) = self.endpoints(e);
            keep[t.0] = true;
            keep[h.0] = true;
        }
        let mut sorted = edges.to_vec();
        sorted.sort();
        let vertices: Vec<String> = self
            .vertex_ids()
            .filter(|v| keep[v.0])
            .map(|v| self.vertex_name(v).to_string())
            .collect();
        let edge_list = sorted.iter().map(|&e| {
            let edge = self.edge(e);
            (
                edge.name.clone(),
                self.vertex_name(edge.tail).to_string(),
                self.vertex_name(edge.head).to_string(),
            )
        });
        MultiGraph::new(vertices, edge_list).expect("subgraph of a valid graph")
    }
}

fn named_edge(name: String, tail: &str, head: &str) -> (String, String, String) {
    (name, tail.to_string(), head.to_string())
}

fn complete(n: usize) -> MultiGraph {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push(named_edge(
                format!("{}{}", names[i], names[j]),
                &names[i],
                &names[j],
            ));
        }
    }
    MultiGraph::new(names.clone(), edges).expect("complete graph")
}

fn complete_bipartite(m: usize, n: usize) -> MultiGraph {
    let a: Vec<String> = (1..=m).map(|i| format!("a{i}")).collect();
    let b: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
    let mut edges = Vec::new();
    for x in &a {
        for y in &b {
            edges.push(named_edge(format!("{x}{y}"), x, y));
        }
    }
    MultiGraph::new(a.iter().chain(&b).cloned(), edges).expect("complete bipartite graph")
}

/// Residue `i` modulo `n`, mapped into `1..=n`.
fn wrap(i: i64, n: i64) -> i64 {
    (i - 1).rem_euclid(n) + 1
}

fn petersen() -> MultiGraph {
    let u = |i: i64| format!("u{}", wrap(i, 5));
    let v = |i: i64| format!("v{}", wrap(i, 5));
    let vertices: Vec<String> = (1..=5).map(u).chain((1..=5).map(v)).collect();
    let mut edges = Vec::new();
    for i in 1..=5 {
        edges.push(named_edge(
            format!("{}{}", u(i), u(i + 1)),
            &u(i),
            &u(i + 1),
        ));
    }
    for i in 1..=5 {
        edges.push(named_edge(format!("{}{}", u(i), v(i)), &u(i), &v(i)));
    }
    for i in 1..=5 {
        edges.push(named_edge(
            format!("{}{}", v(i), v(i + 2)),
            &v(i),
            &v(i + 2),
        ));
    }
    MultiGraph::new(vertices, edges).expect("petersen graph")
}

fn heawood() -> MultiGraph {
    let u = |i: i64| format!("u{}", wrap(i, 7));
    let v = |i: i64| format!("v{}", wrap(i, 7));
    let vertices: Vec<String> = (1..=7).map(u).chain((1..=7).map(v)).collect();
    let mut edges = Vec::new();
    for i in 1..=7 {
        edges.push(named_edge(format!("{}{}", u(i), v(i)), &u(i), &v(i)));
    }
    for i in 1..=7 {
        edges.push(named_edge(
            format!("{}{}", u(i), v(i - 1)),
            &u(i),
            &v(i - 1),
        ));
    }
    for i in 1..=7 {
        edges.push(named_edge(
            format!("{}{}", v(i), u(i - 2)),
            &v(i),
            &u(i - 2),
        ));
    }
    MultiGraph::new(vertices, edges).expect("heawood graph")
}

fn multiple_triangle(m: usize) -> MultiGraph {
    let names = ["w1", "w2", "w3"];
    let mut edges = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        for k in 1..=m {
            edges.push(named_edge(
                format!("{}{}.{k}", names[a], names[b]),
                names[a],
                names[b],
            ));
        }
    }
    MultiGraph::new(names, edges).expect("multiple triangle")
}

fn theta(n: usize) -> MultiGraph {
    let edges = (1..=n).map(|k| named_edge(format!("e{k}"), "s", "t"));
    MultiGraph::new(["s", "t"], edges).expect("theta graph")
}

/// A fixed-size set of edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn new(edge_count: usize) -> Self {
        EdgeSet {
            words: vec![0; edge_count.div_ceil(64)],
        }
    }

    pub fn from_edges(edge_count: usize, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut set = EdgeSet::new(edge_count);
        for e in edges {
            set.insert(e);
        }
        set
    }

    pub fn insert(&mut self, e: EdgeId) {
        self.words[e.0 / 64] |= 1 << (e.0 % 64);
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.words
            .get(e.0 / 64)
            .is_some_and(|w| w & (1 << (e.0 % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_superset(&self, other: &EdgeSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == *b)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64)
                .filter(move |b| w & (1u64 << b) != 0)
                .map(move |b| EdgeId(i * 64 + b))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_matches_labelling() {
        let g = build_named("PG", &[]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 15));
        for name in ["u1u2", "u5u1", "u3v3", "v1v3", "v4v1", "v5v2"] {
            assert!(g.edge_by_name(name).is_some(), "{name}");
        }
        let e = g.edge(g.edge_by_name("v4v1").unwrap());
        assert_eq!((g.vertex_name(e.tail), g.vertex_name(e.head)), ("v4", "v1"));
        assert!(g.vertex_ids().all(|v| g.degree(v) == 3));
    }

    #[test]
    fn heawood_is_bipartite_cubic() {
        let g = build_named("HG", &[]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (14, 21));
        assert!(g.is_bipartite());
        assert!(g.vertex_ids().all(|v| g.degree(v) == 3));
        // u_i v_{i-1} and v_i u_{i-2} with wrap-around
        assert!(g.edge_by_name("u1v7").is_some());
        assert!(g.edge_by_name("v2u7").is_some());
        for e in g.edges() {
            assert!(
                g.vertex_name(e.tail).starts_with('u') != g.vertex_name(e.head).starts_with('u')
            );
        }
    }

    #[test]
    fn theta_and_multiple_triangle() {
        let t = build_named("theta", &[1]).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (2, 1));
        let t3 = build_named("T", &[3]).unwrap();
        assert_eq!((t3.vertex_count(), t3.edge_count()), (3, 9));
        let a = t3.vertex_by_name("w1").unwrap();
        let b = t3.vertex_by_name("w3").unwrap();
        assert_eq!(t3.multiplicity(a, b), 3);
    }

    #[test]
    fn named_errors() {
        assert!(matches!(
            build_named("Q", &[3]),
            Err(GraphError::UnknownFamily(_))
        ));
        assert!(matches!(
            build_named("K", &[0]),
            Err(GraphError::BadParameters { .. })
        ));
        assert!(matches!(
            build_named("theta", &[-2]),
            Err(GraphError::BadParameters { .. })
        ));
        assert!(matches!(
            build_named("PG", &[1]),
            Err(GraphError::BadParameters { .. })
        ));
    }

    #[test]
    fn construction_errors() {
        let err = MultiGraph::new(["a", "a"], Vec::new()).unwrap_err();
        assert_eq!(err, GraphError::DuplicateVertex("a".into()));
        let err = MultiGraph::new(["a"], vec![("e".into(), "a".into(), "b".into())]).unwrap_err();
        assert!(matches!(err, GraphError::UnknownEndpoint { .. }));
        let err = MultiGraph::new(["a b"], Vec::new()).unwrap_err();
        assert!(matches!(err, GraphError::InvalidName(_)));
    }

    #[test]
    fn loops_count_twice_in_degree() {
        let g = MultiGraph::new(["a"], vec![("l".into(), "a".into(), "a".into())]).unwrap();
        assert_eq!(g.degree(VertexId(0)), 2);
        assert_eq!(g.incident(VertexId(0)).len(), 1);
    }

    #[test]
    fn edge_set_basics() {
        let mut s = EdgeSet::new(130);
        s.insert(EdgeId(0));
        s.insert(EdgeId(129));
        assert_eq!(s.len(), 2);
        assert!(s.contains(EdgeId(129)) && !s.contains(EdgeId(64)));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![EdgeId(0), EdgeId(129)]);
        let t = EdgeSet::from_edges(130, [EdgeId(129)]);
        assert!(s.is_superset(&t) && !t.is_superset(&s));
    }
}
