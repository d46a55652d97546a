//! Backtracking search for graph isomorphisms, automorphism orbit checks.
//!
//! Vertices are mapped first; a vertex map is an isomorphism when it
//! preserves edge multiplicities (loops included). The edge map is then
//! chosen inside each parallel class, which lets witnesses pin specific
//! edges. Pruning uses degree, loop count and BFS distance profiles.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::distance::{DistanceTable, EdgeDistance};
use crate::graph::{EdgeId, MultiGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomorphismError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
}

/// Search-node allowance shared by all searches of one query.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub limit: u64,
    used: u64,
}

impl SearchBudget {
    pub fn new(limit: u64) -> Self {
        SearchBudget { limit, used: 0 }
    }

    fn tick(&mut self) -> Result<(), AutomorphismError> {
        self.used += 1;
        if self.used > self.limit {
            Err(AutomorphismError::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(5_000_000)
    }
}

/// A graph isomorphism `source -> target` on vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
}

impl Isomorphism {
    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> EdgeId {
        self.edge_map[e.0]
    }

    /// Checks bijectivity and incidence preservation.
    pub fn verify(&self, source: &MultiGraph, target: &MultiGraph) -> bool {
        if self.vertex_map.len() != source.vertex_count()
            || self.edge_map.len() != source.edge_count()
            || source.vertex_count() != target.vertex_count()
            || source.edge_count() != target.edge_count()
        {
            return false;
        }
        let mut hit_v = vec![false; target.vertex_count()];
        for v in &self.vertex_map {
            if std::mem::replace(&mut hit_v[v.0], true) {
                return false;
            }
        }
        let mut hit_e = vec![false; target.edge_count()];
        for e in &self.edge_map {
            if std::mem::replace(&mut hit_e[e.0], true) {
                return false;
            }
        }
        source.edge_ids().all(|e| {
            let (a, b) = source.endpoints(e);
            let (c, d) = target.endpoints(self.edge(e));
            let (x, y) = (self.vertex(a), self.vertex(b));
            (x == c && y == d) || (x == d && y == c)
        })
    }
}

struct Profile {
    degree: Vec<usize>,
    loops: Vec<usize>,
    distances: Vec<Vec<Option<usize>>>,
    signature: Vec<Vec<Option<usize>>>,
    multiplicity: Vec<Vec<usize>>,
}

impl Profile {
    fn new(g: &MultiGraph) -> Self {
        let table = DistanceTable::new(g);
        let n = g.vertex_count();
        let distances: Vec<Vec<Option<usize>>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| table.vertex_distance(VertexId(a), VertexId(b)))
                    .collect()
            })
            .collect();
        let signature = distances
            .iter()
            .map(|row| {
                let mut s = row.clone();
                s.sort();
                s
            })
            .collect();
        let mut multiplicity = vec![vec![0; n]; n];
        for e in g.edges() {
            multiplicity[e.tail.0][e.head.0] += 1;
            if e.tail != e.head {
                multiplicity[e.head.0][e.tail.0] += 1;
            }
        }
        Profile {
            degree: g.vertex_ids().map(|v| g.degree(v)).collect(),
            loops: (0..n).map(|v| multiplicity[v][v]).collect(),
            distances,
            signature,
            multiplicity,
        }
    }

    fn compatible(&self, other: &Profile, a: usize, b: usize) -> bool {
        self.degree[a] == other.degree[b]
            && self.loops[a] == other.loops[b]
            && self.signature[a] == other.signature[b]
    }
}

/// Finds an isomorphism `source -> target` extending `pinned` vertex
/// assignments, optionally sending specific edges to specific edges.
pub fn find_isomorphism(
    source: &MultiGraph,
    target: &MultiGraph,
    pinned: &[(VertexId, VertexId)],
    pinned_edges: &[(EdgeId, EdgeId)],
    budget: &mut SearchBudget,
) -> Result<Option<Isomorphism>, AutomorphismError> {
    if source.vertex_count() != target.vertex_count() || source.edge_count() != target.edge_count()
    {
        return Ok(None);
    }
    let ps = Profile::new(source);
    let pt = Profile::new(target);
    let n = source.vertex_count();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for &(a, b) in pinned {
        match map[a.0] {
            Some(x) if x != b.0 => return Ok(None),
            Some(_) => continue,
            None => {}
        }
        if used[b.0] || !ps.compatible(&pt, a.0, b.0) {
            return Ok(None);
        }
        map[a.0] = Some(b.0);
        used[b.0] = true;
    }
    // consistency among pinned vertices
    for a in 0..n {
        for c in 0..n {
            if let (Some(x), Some(y)) = (map[a], map[c]) {
                if ps.multiplicity[a][c] != pt.multiplicity[x][y]
                    || ps.distances[a][c] != pt.distances[x][y]
                {
                    return Ok(None);
                }
            }
        }
    }
    let order = search_order(source, &map);
    if !assign(&ps, &pt, &order, 0, &mut map, &mut used, budget)? {
        return Ok(None);
    }
    let vertex_map: Vec<VertexId> = map.iter().map(|m| VertexId(m.unwrap())).collect();
    Ok(
        edge_map(source, target, &vertex_map, pinned_edges).map(|edge_map| Isomorphism {
            vertex_map,
            edge_map,
        }),
    )
}

/// Pinned vertices first, then BFS outward so each new vertex has mapped
/// neighbours to check against.
fn search_order(g: &MultiGraph, map: &[Option<usize>]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for v in 0..n {
        if map[v].is_some() {
            placed[v] = true;
        }
    }
    let mut queue: std::collections::VecDeque<usize> = (0..n).filter(|&v| placed[v]).collect();
    loop {
        while let Some(v) = queue.pop_front() {
            for w in g.neighbours(VertexId(v)) {
                if !placed[w.0] {
                    placed[w.0] = true;
                    order.push(w.0);
                    queue.push_back(w.0);
                }
            }
        }
        match (0..n).find(|&v| !placed[v]) {
            Some(v) => {
                placed[v] = true;
                order.push(v);
                queue.push_back(v);
            }
            None => break,
        }
    }
    order
}

fn assign(
    ps: &Profile,
    pt: &Profile,
    order: &[usize],
    depth: usize,
    map: &mut [Option<usize>],
    used: &mut [bool],
    budget: &mut SearchBudget,
) -> Result<bool, AutomorphismError> {
    let Some(&a) = order.get(depth) else {
        return Ok(true);
    };
    for b in 0..map.len() {
        if used[b] || !ps.compatible(pt, a, b) {
            continue;
        }
        budget.tick()?;
        let consistent = (0..map.len()).all(|c| match map[c] {
            Some(y) => {
                ps.multiplicity[a][c] == pt.multiplicity[b][y]
                    && ps.distances[a][c] == pt.distances[b][y]
            }
            None => true,
        });
        if !consistent {
            continue;
        }
        map[a] = Some(b);
        used[b] = true;
        if assign(ps, pt, order, depth + 1, map, used, budget)? {
            return Ok(true);
        }
        map[a] = None;
        used[b] = false;
    }
    Ok(false)
}

fn edge_map(
    source: &MultiGraph,
    target: &MultiGraph,
    vertex_map: &[VertexId],
    pinned_edges: &[(EdgeId, EdgeId)],
) -> Option<Vec<EdgeId>> {
    let key = |a: VertexId, b: VertexId| if a <= b { (a, b) } else { (b, a) };
    let mut classes: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
    for e in target.edge_ids() {
        let (a, b) = target.endpoints(e);
        classes.entry(key(a, b)).or_default().push(e);
    }
    let mut result = vec![None; source.edge_count()];
    let mut taken = vec![false; target.edge_count()];
    for &(e, f) in pinned_edges {
        let (a, b) = source.endpoints(e);
        let (c, d) = target.endpoints(f);
        if key(vertex_map[a.0], vertex_map[b.0]) != key(c, d) || taken[f.0] {
            return None;
        }
        if let Some(prev) = result[e.0] {
            if prev != f {
                return None;
            }
            continue;
        }
        result[e.0] = Some(f);
        taken[f.0] = true;
    }
    for e in source.edge_ids() {
        if result[e.0].is_some() {
            continue;
        }
        let (a, b) = source.endpoints(e);
        let class = classes.get(&key(vertex_map[a.0], vertex_map[b.0]))?;
        let f = *class.iter().find(|f| !taken[f.0])?;
        taken[f.0] = true;
        result[e.0] = Some(f);
    }
    result.into_iter().collect()
}

pub fn find_automorphism(
    g: &MultiGraph,
    pinned: &[(VertexId, VertexId)],
    pinned_edges: &[(EdgeId, EdgeId)],
    budget: &mut SearchBudget,
) -> Result<Option<Isomorphism>, AutomorphismError> {
    find_isomorphism(g, g, pinned, pinned_edges, budget)
}

/// Objects an automorphism can act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphObject {
    Vertex(VertexId),
    Edge(EdgeId),
    /// An unordered pair of distinct edges.
    Pair(EdgeId, EdgeId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectClass {
    Vertices,
    Edges,
    AdjacentPairs,
    DistancePairs(usize),
}

impl ObjectClass {
    pub fn objects(self, g: &MultiGraph) -> Vec<GraphObject> {
        match self {
            ObjectClass::Vertices => g.vertex_ids().map(GraphObject::Vertex).collect(),
            ObjectClass::Edges => g.edge_ids().map(GraphObject::Edge).collect(),
            ObjectClass::AdjacentPairs => {
                let mut out = Vec::new();
                for d in g.edge_ids() {
                    for e in g.edge_ids().filter(|&e| e > d) {
                        if g.adjacent(d, e) {
                            out.push(GraphObject::Pair(d, e));
                        }
                    }
                }
                out
            }
            ObjectClass::DistancePairs(0) => ObjectClass::AdjacentPairs.objects(g),
            ObjectClass::DistancePairs(k) => DistanceTable::new(g)
                .pairs_at(k)
                .into_iter()
                .map(|(d, e)| GraphObject::Pair(d, e))
                .collect(),
        }
    }
}

/// Finds an automorphism carrying `from` onto `to`.
pub fn map_object(
    g: &MultiGraph,
    from: GraphObject,
    to: GraphObject,
    budget: &mut SearchBudget,
) -> Result<Option<Isomorphism>, AutomorphismError> {
    for (pinned, pinned_edges) in candidate_pins(g, from, to) {
        if let Some(iso) = find_automorphism(g, &pinned, &pinned_edges, budget)? {
            return Ok(Some(iso));
        }
    }
    Ok(None)
}

type Pins = (Vec<(VertexId, VertexId)>, Vec<(EdgeId, EdgeId)>);

fn candidate_pins(g: &MultiGraph, from: GraphObject, to: GraphObject) -> Vec<Pins> {
    let edge_pins = |e: EdgeId, f: EdgeId| -> Vec<Vec<(VertexId, VertexId)>> {
        let (a, b) = g.endpoints(e);
        let (c, d) = g.endpoints(f);
        if (a == b) != (c == d) {
            return vec![];
        }
        if a == b {
            vec![vec![(a, c)]]
        } else {
            vec![vec![(a, c), (b, d)], vec![(a, d), (b, c)]]
        }
    };
    match (from, to) {
        (GraphObject::Vertex(a), GraphObject::Vertex(b)) => vec![(vec![(a, b)], vec![])],
        (GraphObject::Edge(e), GraphObject::Edge(f)) => edge_pins(e, f)
            .into_iter()
            .map(|p| (p, vec![(e, f)]))
            .collect(),
        (GraphObject::Pair(d, e), GraphObject::Pair(x, y)) => {
            let mut out = Vec::new();
            for (p, q) in [(x, y), (y, x)] {
                for first in edge_pins(d, p) {
                    for second in edge_pins(e, q) {
                        let mut pins = first.clone();
                        pins.extend(second);
                        out.push((pins, vec![(d, p), (e, q)]));
                    }
                }
            }
            out
        }
        _ => vec![],
    }
}

/// Outcome of a transitivity query.
#[derive(Clone, Debug)]
pub struct Transitivity {
    pub transitive: bool,
    pub base: Option<GraphObject>,
    /// For each reachable object, an automorphism carrying `base` onto it.
    pub witnesses: Vec<(GraphObject, Isomorphism)>,
    /// First object no automorphism reaches, when not transitive.
    pub unreachable: Option<GraphObject>,
}

/// Whether `Aut(g)` acts transitively on `class`, with witness maps from the
/// first object of the class. An empty class counts as transitive.
pub fn automorphism_orbit_transitive(
    g: &MultiGraph,
    class: ObjectClass,
    budget: &mut SearchBudget,
) -> Result<Transitivity, AutomorphismError> {
    let objects = class.objects(g);
    let Some(&base) = objects.first() else {
        return Ok(Transitivity {
            transitive: true,
            base: None,
            witnesses: vec![],
            unreachable: None,
        });
    };
    let mut witnesses = Vec::with_capacity(objects.len());
    for &target in &objects {
        match map_object(g, base, target, budget)? {
            Some(iso) => witnesses.push((target, iso)),
            None => {
                return Ok(Transitivity {
                    transitive: false,
                    base: Some(base),
                    witnesses,
                    unreachable: Some(target),
                })
            }
        }
    }
    Ok(Transitivity {
        transitive: true,
        base: Some(base),
        witnesses,
        unreachable: None,
    })
}

/// Partitions `objects` into automorphism orbits, preserving first-seen order.
pub fn orbits(
    g: &MultiGraph,
    objects: &[GraphObject],
    budget: &mut SearchBudget,
) -> Result<Vec<Vec<GraphObject>>, AutomorphismError> {
    let mut result: Vec<Vec<GraphObject>> = Vec::new();
    'next: for &obj in objects {
        for orbit in result.iter_mut() {
            if map_object(g, orbit[0], obj, budget)?.is_some() {
                orbit.push(obj);
                continue 'next;
            }
        }
        result.push(vec![obj]);
    }
    Ok(result)
}

/// Whether the pair is at the given edge distance (helper for callers that
/// classify orbit representatives).
pub fn pair_distance(g: &MultiGraph, d: EdgeId, e: EdgeId) -> EdgeDistance {
    DistanceTable::new(g).edge_distance(d, e)
}

/// Order of the automorphism group, by exhaustive enumeration.
pub fn group_order(g: &MultiGraph, budget: &mut SearchBudget) -> Result<u64, AutomorphismError> {
    let ps = Profile::new(g);
    let n = g.vertex_count();
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    let order = search_order(g, &map);
    let mut count = 0;
    count_all(&ps, &order, 0, &mut map, &mut used, budget, &mut count)?;
    Ok(count)
}

fn count_all(
    ps: &Profile,
    order: &[usize],
    depth: usize,
    map: &mut [Option<usize>],
    used: &mut [bool],
    budget: &mut SearchBudget,
    count: &mut u64,
) -> Result<(), AutomorphismError> {
    let Some(&a) = order.get(depth) else {
        *count += 1;
        return Ok(());
    };
    for b in 0..map.len() {
        if used[b] || !ps.compatible(ps, a, b) {
            continue;
        }
        budget.tick()?;
        let consistent = (0..map.len()).all(|c| match map[c] {
            Some(y) => {
                ps.multiplicity[a][c] == ps.multiplicity[b][y]
                    && ps.distances[a][c] == ps.distances[b][y]
            }
            None => true,
        });
        if !consistent {
            continue;
        }
        map[a] = Some(b);
        used[b] = true;
        count_all(ps, order, depth + 1, map, used, budget, count)?;
        map[a] = None;
        used[b] = false;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    #[test]
    fn group_orders() {
        let mut b = SearchBudget::default();
        assert_eq!(
            group_order(&NamedGraph::Petersen.build(), &mut b).unwrap(),
            120
        );
        assert_eq!(
            group_order(&NamedGraph::Heawood.build(), &mut b).unwrap(),
            336
        );
        assert_eq!(
            group_order(&NamedGraph::Complete(4).build(), &mut b).unwrap(),
            24
        );
        assert_eq!(
            group_order(&NamedGraph::CompleteBipartite(3, 3).build(), &mut b).unwrap(),
            72
        );
    }

    #[test]
    fn petersen_edges_transitive() {
        let g = NamedGraph::Petersen.build();
        let t = automorphism_orbit_transitive(&g, ObjectClass::Edges, &mut SearchBudget::default())
            .unwrap();
        assert!(t.transitive);
        assert_eq!(t.witnesses.len(), 15);
        let GraphObject::Edge(base) = t.base.unwrap() else {
            panic!()
        };
        for (obj, iso) in &t.witnesses {
            assert!(iso.verify(&g, &g));
            assert_eq!(GraphObject::Edge(iso.edge(base)), *obj);
        }
    }

    #[test]
    fn heawood_pair_classes_transitive() {
        let g = NamedGraph::Heawood.build();
        for class in [
            ObjectClass::AdjacentPairs,
            ObjectClass::DistancePairs(1),
            ObjectClass::DistancePairs(2),
        ] {
            let t = automorphism_orbit_transitive(&g, class, &mut SearchBudget::default()).unwrap();
            assert!(t.transitive, "{class:?}");
            let Some(GraphObject::Pair(d, e)) = t.base else {
                panic!()
            };
            for (obj, iso) in &t.witnesses {
                assert!(iso.verify(&g, &g));
                let GraphObject::Pair(x, y) = *obj else {
                    panic!()
                };
                let (p, q) = (iso.edge(d), iso.edge(e));
                assert!((p, q) == (x, y) || (p, q) == (y, x));
            }
        }
    }

    #[test]
    fn path_vertices_not_transitive() {
        let g = MultiGraph::new(
            ["a", "b", "c"],
            vec![
                ("ab".into(), "a".into(), "b".into()),
                ("bc".into(), "b".into(), "c".into()),
            ],
        )
        .unwrap();
        let t =
            automorphism_orbit_transitive(&g, ObjectClass::Vertices, &mut SearchBudget::default())
                .unwrap();
        assert!(!t.transitive);
        assert_eq!(t.unreachable, Some(GraphObject::Vertex(VertexId(1))));
    }

    #[test]
    fn parallel_edges_can_be_pinned() {
        let g = NamedGraph::MultipleTriangle(2).build();
        let t = automorphism_orbit_transitive(&g, ObjectClass::Edges, &mut SearchBudget::default())
            .unwrap();
        assert!(t.transitive);
        for (_, iso) in &t.witnesses {
            assert!(iso.verify(&g, &g));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = NamedGraph::Heawood.build();
        let err = group_order(&g, &mut SearchBudget::new(10)).unwrap_err();
        assert_eq!(err, AutomorphismError::BudgetExceeded(10));
    }

    #[test]
    fn isomorphism_between_relabelled_graphs() {
        let a = NamedGraph::Complete(4).build();
        let b = MultiGraph::new(
            ["p", "q", "r", "s"],
            vec![
                ("1".into(), "p".into(), "q".into()),
                ("2".into(), "r".into(), "q".into()),
                ("3".into(), "s".into(), "r".into()),
                ("4".into(), "p".into(), "s".into()),
                ("5".into(), "p".into(), "r".into()),
                ("6".into(), "q".into(), "s".into()),
            ],
        )
        .unwrap();
        let iso = find_isomorphism(&a, &b, &[], &[], &mut SearchBudget::default())
            .unwrap()
            .unwrap();
        assert!(iso.verify(&a, &b));
        let c = NamedGraph::CompleteBipartite(2, 2).build();
        assert!(
            find_isomorphism(&a, &c, &[], &[], &mut SearchBudget::default())
                .unwrap()
                .is_none()
        );
    }
}
