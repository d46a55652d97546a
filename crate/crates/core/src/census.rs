//! Cycle censuses: how many k-cycles pass through an edge or a pair of
//! edges (α), the coherent-minus-incoherent count for oriented disjoint
//! pairs (β), and the counting conditions these feed into.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::automorphism::{orbits, GraphObject, SearchBudget};
use crate::cycles::{enumerate_cycles, Cycle};
use crate::distance::{DistanceTable, EdgeDistance};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("edges `{0}` and `{1}` share a vertex; β is defined for disjoint pairs only")]
    NotDisjoint(String, String),
    #[error("modulus must be positive")]
    ZeroModulus,
}

/// An edge with a chosen orientation; `forward` means tail to head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub edge: EdgeId,
    pub forward: bool,
}

impl OrientedEdge {
    pub fn native(edge: EdgeId) -> Self {
        OrientedEdge {
            edge,
            forward: true,
        }
    }

    pub fn reversed(self) -> Self {
        OrientedEdge {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// All cycles of a graph, grouped by length, for repeated census queries.
#[derive(Clone, Debug)]
pub struct CycleIndex {
    by_length: BTreeMap<usize, Vec<Cycle>>,
}

impl CycleIndex {
    pub fn new(g: &MultiGraph) -> Self {
        let mut by_length: BTreeMap<usize, Vec<Cycle>> = BTreeMap::new();
        for c in enumerate_cycles(g, None) {
            by_length.entry(c.len()).or_default().push(c);
        }
        CycleIndex { by_length }
    }

    pub fn cycles(&self, k: usize) -> &[Cycle] {
        self.by_length.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_length.keys().copied()
    }

    pub fn all(&self) -> impl Iterator<Item = &Cycle> + '_ {
        self.by_length.values().flatten()
    }

    pub fn girth(&self) -> Option<usize> {
        self.lengths().next()
    }

    /// α_k: k-cycles containing every edge of `target`.
    pub fn alpha(&self, k: usize, target: &[EdgeId]) -> i64 {
        self.cycles(k)
            .iter()
            .filter(|c| target.iter().all(|&e| c.contains_edge(e)))
            .count() as i64
    }

    /// Splits the k-cycles through `d ∪ e` into coherent and incoherent ones.
    pub fn coherence(&self, k: usize, d: OrientedEdge, e: OrientedEdge) -> CoherenceSplit {
        let mut split = CoherenceSplit::default();
        for c in self.cycles(k) {
            let (Some(x), Some(y)) = (c.direction(d.edge), c.direction(e.edge)) else {
                continue;
            };
            // Coherent: one orientation of c runs along both chosen directions.
            if (x == d.forward) == (y == e.forward) {
                split.coherent.push(c.clone());
            } else {
                split.incoherent.push(c.clone());
            }
        }
        split
    }

    pub fn beta(&self, k: usize, d: OrientedEdge, e: OrientedEdge) -> i64 {
        self.coherence(k, d, e).beta()
    }
}

/// `C_k(d∪e)` and `I_k(d∪e)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoherenceSplit {
    pub coherent: Vec<Cycle>,
    pub incoherent: Vec<Cycle>,
}

impl CoherenceSplit {
    pub fn beta(&self) -> i64 {
        self.coherent.len() as i64 - self.incoherent.len() as i64
    }
}

/// α_k(target, G) for an edge (one id) or an edge pair (two ids).
pub fn alpha(g: &MultiGraph, k: usize, target: &[EdgeId]) -> i64 {
    CycleIndex::new(g).alpha(k, target)
}

/// β_k(d∪e, G) with the given orientations, plus the split behind it.
pub fn beta(
    g: &MultiGraph,
    k: usize,
    d: OrientedEdge,
    e: OrientedEdge,
) -> Result<(i64, CoherenceSplit), CensusError> {
    if g.adjacent(d.edge, e.edge) {
        return Err(CensusError::NotDisjoint(
            g.edge_name(d.edge).into(),
            g.edge_name(e.edge).into(),
        ));
    }
    let split = CycleIndex::new(g).coherence(k, d, e);
    Ok((split.beta(), split))
}

/// How the orientation of a disjoint pair was fixed for the β columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaNormalization {
    /// Oriented so that β at this length (the shortest length with β ≠ 0,
    /// normally the girth) is positive.
    PositiveAt(usize),
    /// β vanished at every length; native edge orientations used.
    Native,
}

impl fmt::Display for BetaNormalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaNormalization::PositiveAt(k) => write!(f, "positive-at-{k}"),
            BetaNormalization::Native => write!(f, "native"),
        }
    }
}

/// Orients the disjoint pair `(d, e)` per [`BetaNormalization`].
pub fn normalize_pair(
    index: &CycleIndex,
    d: EdgeId,
    e: EdgeId,
) -> (OrientedEdge, OrientedEdge, BetaNormalization) {
    let (od, oe) = (OrientedEdge::native(d), OrientedEdge::native(e));
    for k in index.lengths() {
        let b = index.beta(k, od, oe);
        if b != 0 {
            let oe = if b > 0 { oe } else { oe.reversed() };
            return (od, oe, BetaNormalization::PositiveAt(k));
        }
    }
    (od, oe, BetaNormalization::Native)
}

/// One census cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Value(i64),
    /// The object class is empty (e.g. no pairs at distance 2).
    Empty,
    /// Not constant over the class; see the per-orbit rows.
    Varies,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Value(v) => write!(f, "{v}"),
            Cell::Empty => write!(f, "-"),
            Cell::Varies => write!(f, "*"),
        }
    }
}

impl Cell {
    pub fn value(self) -> Option<i64> {
        match self {
            Cell::Value(v) => Some(v),
            _ => None,
        }
    }

    fn from_values(values: &[i64]) -> Cell {
        match values.first() {
            None => Cell::Empty,
            Some(&v) if values.iter().all(|&x| x == v) => Cell::Value(v),
            Some(_) => Cell::Varies,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Column {
    AlphaEdge,
    AlphaAdjacent,
    AlphaDist1,
    AlphaDist2,
    BetaDist1,
    BetaDist2,
}

impl Column {
    pub const ALL: [Column; 6] = [
        Column::AlphaEdge,
        Column::AlphaAdjacent,
        Column::AlphaDist1,
        Column::AlphaDist2,
        Column::BetaDist1,
        Column::BetaDist2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::AlphaEdge => "alpha_edge",
            Column::AlphaAdjacent => "alpha_d0",
            Column::AlphaDist1 => "alpha_d1",
            Column::AlphaDist2 => "alpha_d2",
            Column::BetaDist1 => "beta_d1",
            Column::BetaDist2 => "beta_d2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub k: usize,
    pub count: i64,
    pub count_times_k: i64,
    pub alpha_edge: Cell,
    pub alpha_adjacent: Cell,
    pub alpha_dist1: Cell,
    pub alpha_dist2: Cell,
    pub beta_dist1: Cell,
    pub beta_dist2: Cell,
}

impl CensusRow {
    pub fn cell(&self, column: Column) -> Cell {
        match column {
            Column::AlphaEdge => self.alpha_edge,
            Column::AlphaAdjacent => self.alpha_adjacent,
            Column::AlphaDist1 => self.alpha_dist1,
            Column::AlphaDist2 => self.alpha_dist2,
            Column::BetaDist1 => self.beta_dist1,
            Column::BetaDist2 => self.beta_dist2,
        }
    }

    /// The eight numeric columns after `k`, when all are constant.
    pub fn values(&self) -> Option<[i64; 8]> {
        let mut out = [self.count, self.count_times_k, 0, 0, 0, 0, 0, 0];
        for (i, c) in Column::ALL.iter().enumerate() {
            out[i + 2] = self.cell(*c).value()?;
        }
        Some(out)
    }
}

/// A value for one automorphism orbit of a non-constant column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRow {
    pub k: usize,
    pub column: Column,
    pub representative: GraphObject,
    pub orbit_size: usize,
    pub value: i64,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    pub orbit_rows: Vec<OrbitRow>,
    /// Orientation choice per disjoint pair `(d, e)` at distance 1 or 2.
    pub normalization: Vec<((EdgeId, EdgeId), BetaNormalization)>,
}

impl Census {
    pub const HEADER: [&'static str; 9] = [
        "k",
        "count",
        "count_times_k",
        "alpha_edge",
        "alpha_d0",
        "alpha_d1",
        "alpha_d2",
        "beta_d1",
        "beta_d2",
    ];

    pub fn to_tsv(&self) -> String {
        let mut out = Census::HEADER.join("\t");
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = [
                r.k.to_string(),
                r.count.to_string(),
                r.count_times_k.to_string(),
            ]
            .into_iter()
            .chain(Column::ALL.iter().map(|c| r.cell(*c).to_string()))
            .collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self, g: &MultiGraph) -> String {
        let mut lines = vec![Census::HEADER
            .iter()
            .map(|h| h.to_string())
            .collect::<Vec<_>>()];
        for r in &self.rows {
            lines.push(
                [
                    r.k.to_string(),
                    r.count.to_string(),
                    r.count_times_k.to_string(),
                ]
                .into_iter()
                .chain(Column::ALL.iter().map(|c| r.cell(*c).to_string()))
                .collect(),
            );
        }
        let widths: Vec<usize> = (0..9)
            .map(|i| lines.iter().map(|l| l[i].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for l in &lines {
            let cells: Vec<String> = l
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        for o in &self.orbit_rows {
            out.push_str(&format!(
                "  k={} {} orbit of {} ({} objects): {}\n",
                o.k,
                o.column.name(),
                describe(g, o.representative),
                o.orbit_size,
                o.value
            ));
        }
        let native = self
            .normalization
            .iter()
            .filter(|(_, n)| *n == BetaNormalization::Native)
            .count();
        if !self.normalization.is_empty() {
            out.push_str(&format!(
                "  beta orientation: {} pairs oriented by sign, {} native\n",
                self.normalization.len() - native,
                native
            ));
        }
        out
    }
}

fn describe(g: &MultiGraph, obj: GraphObject) -> String {
    match obj {
        GraphObject::Vertex(v) => g.vertex_name(v).to_string(),
        GraphObject::Edge(e) => g.edge_name(e).to_string(),
        GraphObject::Pair(d, e) => format!("{{{},{}}}", g.edge_name(d), g.edge_name(e)),
    }
}

/// Census rows for the given lengths (all cycle lengths when `ks` is empty).
///
/// Columns that are not constant over their object class are marked
/// [`Cell::Varies`] and broken down per automorphism orbit.
pub fn census_table(g: &MultiGraph, ks: &[usize]) -> Census {
    let index = CycleIndex::new(g);
    let table = DistanceTable::new(g);
    let ks: Vec<usize> = if ks.is_empty() {
        index.lengths().collect()
    } else {
        ks.to_vec()
    };
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let mut classes: [Vec<(EdgeId, EdgeId)>; 3] = Default::default();
    for (i, &d) in edges.iter().enumerate() {
        for &e in &edges[i + 1..] {
            if let EdgeDistance::Finite(k @ 0..=2) = table.edge_distance(d, e) {
                classes[k].push((d, e));
            }
        }
    }
    let mut normalization = Vec::new();
    let mut oriented: [Vec<(OrientedEdge, OrientedEdge)>; 2] = Default::default();
    for k in 1..=2 {
        for &(d, e) in &classes[k] {
            let (od, oe, how) = normalize_pair(&index, d, e);
            oriented[k - 1].push((od, oe));
            normalization.push(((d, e), how));
        }
    }
    let mut rows = Vec::new();
    let mut orbit_rows = Vec::new();
    for &k in &ks {
        let count = index.cycles(k).len() as i64;
        let mut values: BTreeMap<Column, (Vec<GraphObject>, Vec<i64>)> = BTreeMap::new();
        values.insert(
            Column::AlphaEdge,
            (
                edges.iter().map(|&e| GraphObject::Edge(e)).collect(),
                edges.iter().map(|&e| index.alpha(k, &[e])).collect(),
            ),
        );
        for (col, class) in [
            (Column::AlphaAdjacent, 0),
            (Column::AlphaDist1, 1),
            (Column::AlphaDist2, 2),
        ] {
            let pairs = &classes[class];
            values.insert(
                col,
                (
                    pairs
                        .iter()
                        .map(|&(d, e)| GraphObject::Pair(d, e))
                        .collect(),
                    pairs
                        .iter()
                        .map(|&(d, e)| index.alpha(k, &[d, e]))
                        .collect(),
                ),
            );
        }
        for (col, class) in [(Column::BetaDist1, 0), (Column::BetaDist2, 1)] {
            let pairs = &oriented[class];
            values.insert(
                col,
                (
                    pairs
                        .iter()
                        .map(|&(d, e)| GraphObject::Pair(d.edge, e.edge))
                        .collect(),
                    pairs.iter().map(|&(d, e)| index.beta(k, d, e)).collect(),
                ),
            );
        }
        let cell = |col: Column| Cell::from_values(&values[&col].1);
        let row = CensusRow {
            k,
            count,
            count_times_k: count * k as i64,
            alpha_edge: cell(Column::AlphaEdge),
            alpha_adjacent: cell(Column::AlphaAdjacent),
            alpha_dist1: cell(Column::AlphaDist1),
            alpha_dist2: cell(Column::AlphaDist2),
            beta_dist1: cell(Column::BetaDist1),
            beta_dist2: cell(Column::BetaDist2),
        };
        for col in Column::ALL {
            if row.cell(col) == Cell::Varies {
                let (objects, vals) = &values[&col];
                orbit_rows.extend(orbit_breakdown(g, k, col, objects, vals));
            }
        }
        rows.push(row);
    }
    Census {
        rows,
        orbit_rows,
        normalization,
    }
}

fn orbit_breakdown(
    g: &MultiGraph,
    k: usize,
    column: Column,
    objects: &[GraphObject],
    values: &[i64],
) -> Vec<OrbitRow> {
    let lookup: BTreeMap<GraphObject, i64> = objects
        .iter()
        .copied()
        .zip(values.iter().copied())
        .collect();
    // Fall back to grouping by value when the symmetry search is too large.
    let groups = orbits(g, objects, &mut SearchBudget::default()).unwrap_or_else(|_| {
        let mut by_value: BTreeMap<i64, Vec<GraphObject>> = BTreeMap::new();
        for (&o, &v) in objects.iter().zip(values) {
            by_value.entry(v).or_default().push(o);
        }
        by_value.into_values().collect()
    });
    groups
        .into_iter()
        .map(|orbit| OrbitRow {
            k,
            column,
            representative: orbit[0],
            orbit_size: orbit.len(),
            value: lookup[&orbit[0]],
        })
        .collect()
}

/// Which subgraphs a counting condition quantifies over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// All cycles of the listed lengths.
    Lengths(Vec<usize>),
    AllCycles,
    /// Arbitrary edge sets.
    Subgraphs(Vec<EdgeSet>),
}

impl Family {
    pub fn members(&self, g: &MultiGraph) -> Vec<EdgeSet> {
        match self {
            Family::Lengths(ks) => {
                let index = CycleIndex::new(g);
                ks.iter()
                    .flat_map(|&k| index.cycles(k).iter().map(|c| c.edge_set().clone()))
                    .collect()
            }
            Family::AllCycles => enumerate_cycles(g, None)
                .iter()
                .map(|c| c.edge_set().clone())
                .collect(),
            Family::Subgraphs(s) => s.clone(),
        }
    }

    fn is_cycle_family(&self) -> bool {
        !matches!(self, Family::Subgraphs(_))
    }
}

/// First violation of a counting condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Edge {
        edge: EdgeId,
        count: i64,
    },
    Pair {
        first: EdgeId,
        second: EdgeId,
        count: i64,
    },
    VertexEdge {
        vertex: VertexId,
        edge: EdgeId,
        sum: i64,
    },
}

impl Violation {
    pub fn describe(&self, g: &MultiGraph) -> String {
        match *self {
            Violation::Edge { edge, count } => {
                format!("edge {} lies in {count}", g.edge_name(edge))
            }
            Violation::Pair {
                first,
                second,
                count,
            } => {
                format!(
                    "pair {},{} lies in {count}",
                    g.edge_name(first),
                    g.edge_name(second)
                )
            }
            Violation::VertexEdge { vertex, edge, sum } => {
                format!(
                    "vertex {} with edge {} sums to {sum}",
                    g.vertex_name(vertex),
                    g.edge_name(edge)
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub holds: bool,
    pub violation: Option<Violation>,
}

impl Condition {
    fn from(violation: Option<Violation>) -> Self {
        Condition {
            holds: violation.is_none(),
            violation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop21Report {
    /// (1) every edge lies in a multiple of m members.
    pub edge_counts: Condition,
    /// (2) every pair of distinct edges lies in a multiple of m members.
    pub pair_counts: Condition,
}

impl Prop21Report {
    pub fn holds(&self) -> bool {
        self.edge_counts.holds && self.pair_counts.holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop23Report {
    pub edge_counts: Condition,
    pub doubled_pair_counts: Condition,
    pub vertex_edge_sums: Condition,
    pub adjacent_pair_counts: Condition,
    /// Condition (3) follows without computation (cycle family, m = 2).
    pub vertex_edge_by_parity: bool,
}

impl Prop23Report {
    pub fn conditions(&self) -> [bool; 4] {
        [
            self.edge_counts.holds,
            self.doubled_pair_counts.holds,
            self.vertex_edge_sums.holds,
            self.adjacent_pair_counts.holds,
        ]
    }

    pub fn holds(&self) -> bool {
        self.conditions().iter().all(|&c| c)
    }
}

fn count_containing(members: &[EdgeSet], edges: &[EdgeId]) -> i64 {
    members
        .iter()
        .filter(|m| edges.iter().all(|&e| m.contains(e)))
        .count() as i64
}

fn edge_violation(g: &MultiGraph, members: &[EdgeSet], m: i64) -> Option<Violation> {
    g.edge_ids()
        .map(|e| (e, count_containing(members, &[e])))
        .find(|&(_, c)| c % m != 0)
        .map(|(edge, count)| Violation::Edge { edge, count })
}

fn pair_violation(
    g: &MultiGraph,
    members: &[EdgeSet],
    m: i64,
    factor: i64,
    only_adjacent: bool,
) -> Option<Violation> {
    for d in g.edge_ids() {
        for e in g.edge_ids().filter(|&e| e > d) {
            if only_adjacent && !g.adjacent(d, e) {
                continue;
            }
            let count = count_containing(members, &[d, e]);
            if (factor * count) % m != 0 {
                return Some(Violation::Pair {
                    first: d,
                    second: e,
                    count,
                });
            }
        }
    }
    None
}

/// Condition (3): for each vertex v and edge e, the sum over the edge-ends
/// at v (a loop contributes both ends; e itself counts when incident) of
/// the number of members containing e and that edge.
fn vertex_edge_violation(g: &MultiGraph, members: &[EdgeSet], m: i64) -> Option<Violation> {
    for v in g.vertex_ids() {
        for e in g.edge_ids() {
            let sum: i64 = g
                .incident(v)
                .iter()
                .map(|&x| {
                    let ends = if g.edge(x).is_loop() { 2 } else { 1 };
                    ends * count_containing(members, &[e, x])
                })
                .sum();
            if sum % m != 0 {
                return Some(Violation::VertexEdge {
                    vertex: v,
                    edge: e,
                    sum,
                });
            }
        }
    }
    None
}

/// Conditions (1) and (2) of the sufficient criterion for
/// `Σ_λ c(f(λ)) ≡ 0 (mod m)` over every immersion.
pub fn check_prop21(g: &MultiGraph, family: &Family, m: u32) -> Result<Prop21Report, CensusError> {
    if m == 0 {
        return Err(CensusError::ZeroModulus);
    }
    let members = family.members(g);
    let m = m as i64;
    Ok(Prop21Report {
        edge_counts: Condition::from(edge_violation(g, &members, m)),
        pair_counts: Condition::from(pair_violation(g, &members, m, 1, false)),
    })
}

/// Conditions (1)–(4) characterising when `Σ_λ c(f(λ)) mod m` is the same
/// for every immersion. Condition (3) is always computed; for cycle
/// families with m = 2 it is also known to hold by parity, and the report
/// records that.
pub fn check_prop23(g: &MultiGraph, family: &Family, m: u32) -> Result<Prop23Report, CensusError> {
    if m == 0 {
        return Err(CensusError::ZeroModulus);
    }
    let members = family.members(g);
    let by_parity = family.is_cycle_family() && m == 2;
    let m = m as i64;
    let report = Prop23Report {
        edge_counts: Condition::from(edge_violation(g, &members, m)),
        doubled_pair_counts: Condition::from(pair_violation(g, &members, m, 2, false)),
        vertex_edge_sums: Condition::from(vertex_edge_violation(g, &members, m)),
        adjacent_pair_counts: Condition::from(pair_violation(g, &members, m, 1, true)),
        vertex_edge_by_parity: by_parity,
    };
    debug_assert!(
        !by_parity || report.vertex_edge_sums.holds,
        "parity argument contradicted"
    );
    Ok(report)
}

/// Cycle lengths selected for a TB sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lengths {
    One(usize),
    All,
}

impl Lengths {
    fn alpha(&self, index: &CycleIndex, target: &[EdgeId]) -> i64 {
        match self {
            Lengths::One(k) => index.alpha(*k, target),
            Lengths::All => index.lengths().map(|k| index.alpha(k, target)).sum(),
        }
    }

    fn beta(&self, index: &CycleIndex, d: OrientedEdge, e: OrientedEdge) -> i64 {
        match self {
            Lengths::One(k) => index.beta(*k, d, e),
            Lengths::All => index.lengths().map(|k| index.beta(k, d, e)).sum(),
        }
    }
}

/// The rational q with α_k = q·α_j on edges and adjacent pairs and
/// β_k = q·β_j on oriented disjoint pairs, if it exists.
pub fn tb_ratio(g: &MultiGraph, j: usize, k: usize) -> Option<Ratio<i64>> {
    tb_ratio_lengths(g, &Lengths::One(j), &Lengths::One(k))
}

pub fn tb_ratio_lengths(g: &MultiGraph, j: &Lengths, k: &Lengths) -> Option<Ratio<i64>> {
    let index = CycleIndex::new(g);
    // (denominator-side, numerator-side) pairs that must share one ratio.
    let mut constraints: Vec<(i64, i64)> = Vec::new();
    for e in g.edge_ids() {
        constraints.push((j.alpha(&index, &[e]), k.alpha(&index, &[e])));
    }
    for d in g.edge_ids() {
        for e in g.edge_ids().filter(|&e| e > d) {
            if g.adjacent(d, e) {
                constraints.push((j.alpha(&index, &[d, e]), k.alpha(&index, &[d, e])));
            } else {
                // Reversing either orientation negates both sides.
                let (od, oe) = (OrientedEdge::native(d), OrientedEdge::native(e));
                constraints.push((j.beta(&index, od, oe), k.beta(&index, od, oe)));
            }
        }
    }
    let q = constraints
        .iter()
        .find(|(a, _)| *a != 0)
        .map(|&(a, b)| Ratio::new(b, a))?;
    constraints
        .iter()
        .all(|&(a, b)| Ratio::from_integer(b) == q * a)
        .then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    fn row(g: &MultiGraph, k: usize) -> CensusRow {
        census_table(g, &[k]).rows.remove(0)
    }

    #[test]
    fn petersen_table_rows() {
        let g = NamedGraph::Petersen.build();
        assert_eq!(row(&g, 8).values(), Some([15, 120, 8, 4, 4, 4, 2, 0]));
        assert_eq!(row(&g, 5).values(), Some([12, 60, 4, 2, 1, 0, 1, 0]));
    }

    #[test]
    fn heawood_table_row() {
        let g = NamedGraph::Heawood.build();
        assert_eq!(row(&g, 12).values(), Some([56, 672, 32, 16, 16, 20, 8, 4]));
    }

    #[test]
    fn k4_row() {
        let g = NamedGraph::Complete(4).build();
        let r = row(&g, 3);
        assert_eq!(r.count, 4);
        assert_eq!(r.alpha_edge, Cell::Value(2));
        assert_eq!(r.alpha_adjacent, Cell::Value(1));
        assert_eq!(r.alpha_dist1, Cell::Value(0));
        assert_eq!(r.alpha_dist2, Cell::Empty);
    }

    #[test]
    fn beta_flips_with_orientation() {
        let g = NamedGraph::Petersen.build();
        let d = OrientedEdge::native(g.edge_by_name("u1u2").unwrap());
        let e = OrientedEdge::native(g.edge_by_name("u3u4").unwrap());
        let (b, split) = beta(&g, 5, d, e).unwrap();
        assert_eq!(b.abs(), 1);
        assert_eq!(split.coherent.len() + split.incoherent.len(), 1);
        assert_eq!(beta(&g, 5, d.reversed(), e).unwrap().0, -b);
        assert!(beta(
            &g,
            5,
            d,
            OrientedEdge::native(g.edge_by_name("u2u3").unwrap())
        )
        .is_err());
    }

    #[test]
    fn below_girth_is_zero() {
        let g = NamedGraph::Petersen.build();
        assert_eq!(alpha(&g, 4, &[EdgeId(0)]), 0);
    }

    #[test]
    fn non_uniform_graph_gets_orbit_rows() {
        // a triangle with a pendant path: edges are not all alike
        let g = MultiGraph::new(
            ["a", "b", "c", "d"],
            vec![
                ("ab".into(), "a".into(), "b".into()),
                ("bc".into(), "b".into(), "c".into()),
                ("ca".into(), "c".into(), "a".into()),
                ("cd".into(), "c".into(), "d".into()),
            ],
        )
        .unwrap();
        let c = census_table(&g, &[3]);
        assert_eq!(c.rows[0].alpha_edge, Cell::Varies);
        let rows: Vec<&OrbitRow> = c
            .orbit_rows
            .iter()
            .filter(|o| o.column == Column::AlphaEdge)
            .collect();
        let sizes: Vec<(usize, i64)> = rows.iter().map(|o| (o.orbit_size, o.value)).collect();
        assert_eq!(sizes, vec![(1, 1), (2, 1), (1, 0)]);
    }

    #[test]
    fn prop21_examples() {
        let pg = NamedGraph::Petersen.build();
        assert!(check_prop21(&pg, &Family::Lengths(vec![8]), 4)
            .unwrap()
            .holds());
        let hg = NamedGraph::Heawood.build();
        assert!(check_prop21(&hg, &Family::Lengths(vec![14]), 2)
            .unwrap()
            .holds());
        let k4 = NamedGraph::Complete(4).build();
        let r = check_prop21(&k4, &Family::AllCycles, 3).unwrap();
        assert!(!r.edge_counts.holds);
        assert_eq!(
            r.edge_counts.violation,
            Some(Violation::Edge {
                edge: EdgeId(0),
                count: 4
            })
        );
    }

    #[test]
    fn prop23_examples() {
        let k33 = NamedGraph::CompleteBipartite(3, 3).build();
        let r = check_prop23(&k33, &Family::Lengths(vec![4]), 2).unwrap();
        assert_eq!(r.conditions(), [true; 4]);
        assert!(r.vertex_edge_by_parity);
        let k4 = NamedGraph::Complete(4).build();
        let r = check_prop23(&k4, &Family::Lengths(vec![3]), 2).unwrap();
        assert!(!r.adjacent_pair_counts.holds);
        let r = check_prop23(&k4, &Family::Lengths(vec![3, 4]), 2).unwrap();
        assert!(r.adjacent_pair_counts.holds);
    }

    #[test]
    fn vertex_edge_condition_can_fail_for_non_cycles() {
        // a single path of two edges as the family, m = 2: the vertex at the
        // far end of the path sees edge count 1
        let g = NamedGraph::Complete(3).build();
        let fam = Family::Subgraphs(vec![EdgeSet::from_edges(3, [EdgeId(0), EdgeId(1)])]);
        let r = check_prop23(&g, &fam, 2).unwrap();
        assert!(!r.vertex_edge_sums.holds);
        assert!(!r.vertex_edge_by_parity);
    }

    #[test]
    fn tb_ratios() {
        let pg = NamedGraph::Petersen.build();
        assert_eq!(tb_ratio(&pg, 5, 9), Some(Ratio::from_integer(3)));
        let hg = NamedGraph::Heawood.build();
        assert_eq!(tb_ratio(&hg, 6, 10), Some(Ratio::from_integer(5)));
        assert_eq!(tb_ratio(&hg, 6, 14), Some(Ratio::from_integer(2)));
        assert_eq!(
            tb_ratio_lengths(&hg, &Lengths::One(6), &Lengths::All),
            Some(Ratio::from_integer(13))
        );
        // K4: the two 4-cycles through opposite edges cancel in β
        let k4 = NamedGraph::Complete(4).build();
        assert_eq!(tb_ratio(&k4, 3, 4), Some(Ratio::from_integer(1)));
        assert_eq!(tb_ratio(&pg, 4, 5), None);
        let diamond = MultiGraph::new(
            ["a", "b", "c", "d"],
            vec![
                ("ab".into(), "a".into(), "b".into()),
                ("ac".into(), "a".into(), "c".into()),
                ("bc".into(), "b".into(), "c".into()),
                ("bd".into(), "b".into(), "d".into()),
                ("cd".into(), "c".into(), "d".into()),
            ],
        )
        .unwrap();
        assert_eq!(tb_ratio(&diamond, 3, 4), None);
    }
}
