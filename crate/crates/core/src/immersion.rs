//! Plane immersions of graphs with polyline edges: genericity validation,
//! crossings, per-cycle crossing counts and rotation numbers.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::cycles::{enumerate_cycles, Cycle, Step};
use crate::distance::{DistanceTable, EdgeDistance};
use crate::geometry::{contact, cross, dot, on_segment, Bbox, Contact, Point};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::scalar::{sign_of, Scalar};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ImmersionError {
    #[error("expected {expected} {what}, got {got}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("immersion is not generic: {0}")]
    NotGeneric(String),
    #[error("cycle does not belong to this graph")]
    ForeignCycle,
    #[error("rotation number is not close to an integer (turning sum {0})")]
    Turning(f64),
}

/// A segment of an edge polyline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentRef {
    pub edge: EdgeId,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    EmptyPolyline,
    EndpointMismatch,
    CoincidentVertices,
    ZeroLengthSegment,
    /// Consecutive segments of one polyline turn back by exactly 180°.
    Cusp,
    /// A turn within 1e-9 rad of 180°, which makes rotation numbers fragile.
    NearCusp,
    Overlap,
    /// Three or more strands through one point.
    MultiplePoint,
    /// A curve passes through a polyline breakpoint of another strand.
    BreakpointOnCurve,
    /// A curve passes through a vertex image it is not attached to.
    VertexOnCurve,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::EmptyPolyline => "empty polyline",
            ViolationKind::EndpointMismatch => "endpoint mismatch",
            ViolationKind::CoincidentVertices => "coincident vertices",
            ViolationKind::ZeroLengthSegment => "zero-length segment",
            ViolationKind::Cusp => "cusp",
            ViolationKind::NearCusp => "near cusp",
            ViolationKind::Overlap => "overlap",
            ViolationKind::MultiplePoint => "triple point",
            ViolationKind::BreakpointOnCurve => "breakpoint on curve",
            ViolationKind::VertexOnCurve => "vertex on curve",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation<T> {
    pub kind: ViolationKind,
    pub segments: Vec<SegmentRef>,
    pub vertices: Vec<VertexId>,
    pub point: Option<Point<T>>,
}

impl<T: Scalar + fmt::Display> Violation<T> {
    pub fn describe(&self, g: &MultiGraph) -> String {
        let mut s = self.kind.name().to_string();
        for seg in &self.segments {
            s.push_str(&format!(" {}[{}]", g.edge_name(seg.edge), seg.index));
        }
        for v in &self.vertices {
            s.push_str(&format!(" {}", g.vertex_name(*v)));
        }
        if let Some(p) = &self.point {
            s.push_str(&format!(" at {p}"));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenericityReport<T> {
    pub ok: bool,
    pub violations: Vec<Violation<T>>,
}

/// One strand of a crossing: position along an edge polyline.
#[derive(Clone, Debug, PartialEq)]
pub struct Strand<T> {
    pub edge: EdgeId,
    pub segment: usize,
    /// Parameter in (0, 1) along the segment.
    pub t: T,
}

impl<T: Scalar> Strand<T> {
    fn position_cmp(&self, o: &Strand<T>) -> std::cmp::Ordering {
        self.segment
            .cmp(&o.segment)
            .then(self.t.partial_cmp(&o.t).unwrap_or(Ordering::Equal))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingKind {
    SelfCrossing,
    Adjacent,
    Disjoint,
}

/// Stable crossing identifier: edge pair (in global edge order) and the
/// 1-based rank of the crossing along the first edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingId {
    pub first: EdgeId,
    pub second: EdgeId,
    pub rank: usize,
}

impl CrossingId {
    /// `first~second#rank` with edge names.
    pub fn label(&self, g: &MultiGraph) -> String {
        format!(
            "{}~{}#{}",
            g.edge_name(self.first),
            g.edge_name(self.second),
            self.rank
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossingRecord<T> {
    pub id: CrossingId,
    pub point: Point<T>,
    pub first: Strand<T>,
    pub second: Strand<T>,
    /// Sign of det[tangent of first, tangent of second] under the edges'
    /// own orientations.
    pub sign: i8,
    pub kind: CrossingKind,
    /// Edge distance of the pair; zero for self and adjacent crossings.
    pub distance: EdgeDistance,
}

impl<T> CrossingRecord<T> {
    pub fn edges(&self) -> (EdgeId, EdgeId) {
        (self.id.first, self.id.second)
    }

    pub fn involves(&self, e: EdgeId) -> bool {
        self.id.first == e || self.id.second == e
    }
}

#[derive(Clone, Debug)]
struct Analysis<T> {
    report: GenericityReport<T>,
    crossings: Vec<CrossingRecord<T>>,
    labels: HashMap<String, usize>,
}

/// A plane immersion: vertex positions and one polyline per edge, running
/// from the tail's position to the head's.
#[derive(Clone, Debug)]
pub struct PlaneImmersion<T: Scalar = Rational> {
    graph: MultiGraph,
    positions: Vec<Point<T>>,
    polylines: Vec<Vec<Point<T>>>,
    analysis: OnceLock<Analysis<T>>,
    /// Total turning inside each polyline, traversed tail to head.
    edge_turning: OnceLock<Vec<f64>>,
}

impl<T: Scalar> PartialEq for PlaneImmersion<T> {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.positions == other.positions
            && self.polylines == other.polylines
    }
}

impl<T: Scalar> PlaneImmersion<T> {
    /// Builds an immersion from full polylines (endpoints included). Only the
    /// counts are checked here; geometry is checked by [`validate`](Self::validate).
    pub fn new(
        graph: MultiGraph,
        positions: Vec<Point<T>>,
        polylines: Vec<Vec<Point<T>>>,
    ) -> Result<Self, ImmersionError> {
        if positions.len() != graph.vertex_count() {
            return Err(ImmersionError::CountMismatch {
                what: "vertex positions",
                expected: graph.vertex_count(),
                got: positions.len(),
            });
        }
        if polylines.len() != graph.edge_count() {
            return Err(ImmersionError::CountMismatch {
                what: "edge polylines",
                expected: graph.edge_count(),
                got: polylines.len(),
            });
        }
        Ok(PlaneImmersion {
            graph,
            positions,
            polylines,
            analysis: OnceLock::new(),
            edge_turning: OnceLock::new(),
        })
    }

    /// Builds polylines from interior breakpoints only.
    pub fn from_interior(
        graph: MultiGraph,
        positions: Vec<Point<T>>,
        interior: Vec<Vec<Point<T>>>,
    ) -> Result<Self, ImmersionError> {
        if interior.len() != graph.edge_count() || positions.len() != graph.vertex_count() {
            return Self::new(graph, positions, interior);
        }
        let polylines = graph
            .edge_ids()
            .zip(interior)
            .map(|(e, mid)| {
                let (t, h) = graph.endpoints(e);
                let mut line = Vec::with_capacity(mid.len() + 2);
                line.push(positions[t.0].clone());
                line.extend(mid);
                line.push(positions[h.0].clone());
                line
            })
            .collect();
        Self::new(graph, positions, polylines)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn position(&self, v: VertexId) -> &Point<T> {
        &self.positions[v.0]
    }

    pub fn positions(&self) -> &[Point<T>] {
        &self.positions
    }

    pub fn polyline(&self, e: EdgeId) -> &[Point<T>] {
        &self.polylines[e.0]
    }

    pub fn polylines(&self) -> &[Vec<Point<T>>] {
        &self.polylines
    }

    pub fn segment(&self, s: SegmentRef) -> (&Point<T>, &Point<T>) {
        let line = &self.polylines[s.edge.0];
        (&line[s.index], &line[s.index + 1])
    }

    pub fn segment_count(&self, e: EdgeId) -> usize {
        self.polylines[e.0].len().saturating_sub(1)
    }

    /// Converts coordinates to another scalar type.
    pub fn map_scalar<U: Scalar>(&self) -> PlaneImmersion<U> {
        PlaneImmersion {
            graph: self.graph.clone(),
            positions: self.positions.iter().map(Point::map).collect(),
            polylines: self
                .polylines
                .iter()
                .map(|l| l.iter().map(Point::map).collect())
                .collect(),
            analysis: OnceLock::new(),
            edge_turning: OnceLock::new(),
        }
    }

    /// Inserts the midpoint of one segment as a new breakpoint.
    pub fn refine(&self, s: SegmentRef) -> Self {
        let mut polylines = self.polylines.clone();
        let line = &mut polylines[s.edge.0];
        let mid = line[s.index].midpoint(&line[s.index + 1]);
        line.insert(s.index + 1, mid);
        PlaneImmersion {
            graph: self.graph.clone(),
            positions: self.positions.clone(),
            polylines,
            analysis: OnceLock::new(),
            edge_turning: OnceLock::new(),
        }
    }

    fn analysis(&self) -> &Analysis<T> {
        self.analysis.get_or_init(|| analyse(self))
    }

    pub fn validate(&self) -> &GenericityReport<T> {
        &self.analysis().report
    }

    fn require_generic(&self) -> Result<&Analysis<T>, ImmersionError> {
        let a = self.analysis();
        if a.report.ok {
            Ok(a)
        } else {
            let v = &a.report.violations[0];
            Err(ImmersionError::NotGeneric(format!(
                "{} ({} violations)",
                v.kind.name(),
                a.report.violations.len()
            )))
        }
    }

    /// All crossings, ordered by id.
    pub fn crossings(&self) -> Result<&[CrossingRecord<T>], ImmersionError> {
        Ok(&self.require_generic()?.crossings)
    }

    pub fn crossing_by_label(&self, label: &str) -> Option<&CrossingRecord<T>> {
        let a = self.analysis();
        a.labels.get(label).map(|&i| &a.crossings[i])
    }

    /// c(f(γ)): crossings with both strands on edges of γ.
    pub fn cycle_crossing_number(&self, cycle: &Cycle) -> Result<usize, ImmersionError> {
        self.check_cycle(cycle.steps())?;
        Ok(self
            .crossings()?
            .iter()
            .filter(|c| cycle.contains_edge(c.id.first) && cycle.contains_edge(c.id.second))
            .count())
    }

    /// Σ over k-cycles (all cycles when `k` is `None`) of c(f(γ)).
    pub fn sum_crossing(&self, k: Option<usize>) -> Result<usize, ImmersionError> {
        let cycles = enumerate_cycles(&self.graph, k);
        self.sum_crossing_over(&cycles)
    }

    pub fn sum_crossing_over(&self, cycles: &[Cycle]) -> Result<usize, ImmersionError> {
        let crossings = self.crossings()?;
        Ok(cycles
            .iter()
            .map(|c| {
                crossings
                    .iter()
                    .filter(|x| c.contains_edge(x.id.first) && c.contains_edge(x.id.second))
                    .count()
            })
            .sum())
    }

    /// κ_k: crossings between pairs of edges at distance exactly `k`.
    pub fn kappa(&self, k: usize) -> Result<usize, ImmersionError> {
        Ok(self
            .crossings()?
            .iter()
            .filter(|c| {
                c.kind != CrossingKind::SelfCrossing && c.distance == EdgeDistance::Finite(k)
            })
            .count())
    }

    fn check_cycle(&self, steps: &[Step]) -> Result<(), ImmersionError> {
        Cycle::new(&self.graph, steps.to_vec())
            .map(|_| ())
            .map_err(|_| ImmersionError::ForeignCycle)
    }

    /// The closed polygon traced by a walk, without repeated joints.
    pub fn walk_polygon(&self, steps: &[Step]) -> Vec<Point<T>> {
        let mut pts: Vec<Point<T>> = Vec::new();
        for s in steps {
            let line = &self.polylines[s.edge.0];
            let n = line.len();
            // drop the final point: it is the next step's first
            if s.forward {
                pts.extend(line[..n - 1].iter().cloned());
            } else {
                pts.extend(line[1..].iter().rev().cloned());
            }
        }
        pts
    }

    /// Rotation number of γ in its canonical orientation.
    pub fn rotation_number(&self, cycle: &Cycle) -> Result<i64, ImmersionError> {
        self.rotation_number_of_walk(cycle.steps())
    }

    /// Rotation (turning) number of the closed curve traced by `steps`;
    /// counterclockwise is positive.
    pub fn rotation_number_of_walk(&self, steps: &[Step]) -> Result<i64, ImmersionError> {
        self.check_cycle(steps)?;
        self.require_generic()?;
        let inner = self.edge_turning.get_or_init(|| {
            self.polylines
                .iter()
                .map(|line| {
                    line.windows(3)
                        .map(|w| turn_angle(&w[1].sub(&w[0]), &w[2].sub(&w[1])))
                        .sum()
                })
                .collect()
        });
        // Leaving direction of a step, and its arriving direction at the end.
        let leave = |s: &Step| {
            let line = &self.polylines[s.edge.0];
            let n = line.len();
            if s.forward {
                line[1].sub(&line[0])
            } else {
                line[n - 2].sub(&line[n - 1])
            }
        };
        let arrive = |s: &Step| {
            let line = &self.polylines[s.edge.0];
            let n = line.len();
            if s.forward {
                line[n - 1].sub(&line[n - 2])
            } else {
                line[0].sub(&line[1])
            }
        };
        let mut total = 0.0;
        for (i, s) in steps.iter().enumerate() {
            let turning = inner[s.edge.0];
            total += if s.forward { turning } else { -turning };
            total += turn_angle(&arrive(s), &leave(&steps[(i + 1) % steps.len()]));
        }
        let turns = total / (2.0 * PI);
        let rounded = turns.round();
        if (turns - rounded).abs() >= 1e-6 {
            return Err(ImmersionError::Turning(turns));
        }
        Ok(rounded as i64)
    }
}

/// Signed angle from direction `u` to direction `v`, in (−π, π].
pub(crate) fn turn_angle<T: Scalar>(u: &Point<T>, v: &Point<T>) -> f64 {
    let c = cross(u, v).to_f64();
    let d = dot(u, v).to_f64();
    if c == 0.0 && d == 0.0 {
        // Exact components underflowed in f64; fall back to coordinates.
        let (ux, uy) = u.to_f64();
        let (vx, vy) = v.to_f64();
        return (ux * vy - uy * vx).atan2(ux * vx + uy * vy);
    }
    c.atan2(d)
}

fn angle_between<T: Scalar>(u: &Point<T>, v: &Point<T>) -> f64 {
    turn_angle(u, v).abs()
}

/// Crossing point, both strands and geometric sign, before ranking.
type RawCrossing<T> = (Point<T>, Strand<T>, Strand<T>, i8);

struct Seg<'a, T> {
    r: SegmentRef,
    a: &'a Point<T>,
    b: &'a Point<T>,
    last: bool,
    bbox: Bbox,
}

fn analyse<T: Scalar>(imm: &PlaneImmersion<T>) -> Analysis<T> {
    let g = &imm.graph;
    let mut violations: Vec<Violation<T>> = Vec::new();
    let mut push =
        |kind, segments: Vec<SegmentRef>, vertices: Vec<VertexId>, point: Option<Point<T>>| {
            violations.push(Violation {
                kind,
                segments,
                vertices,
                point,
            })
        };

    // Structure: polylines present and anchored at their vertices.
    let mut structurally_ok = true;
    for e in g.edge_ids() {
        let line = &imm.polylines[e.0];
        let (t, h) = g.endpoints(e);
        if line.len() < 2 {
            push(
                ViolationKind::EmptyPolyline,
                vec![SegmentRef { edge: e, index: 0 }],
                vec![],
                None,
            );
            structurally_ok = false;
            continue;
        }
        if line[0] != imm.positions[t.0] || line[line.len() - 1] != imm.positions[h.0] {
            push(
                ViolationKind::EndpointMismatch,
                vec![SegmentRef { edge: e, index: 0 }],
                vec![t, h],
                None,
            );
            structurally_ok = false;
        }
    }
    for a in g.vertex_ids() {
        for b in g.vertex_ids().filter(|&b| b > a) {
            if imm.positions[a.0] == imm.positions[b.0] {
                push(
                    ViolationKind::CoincidentVertices,
                    vec![],
                    vec![a, b],
                    Some(imm.positions[a.0].clone()),
                );
            }
        }
    }
    if !structurally_ok {
        return Analysis {
            report: GenericityReport {
                ok: false,
                violations,
            },
            crossings: vec![],
            labels: HashMap::new(),
        };
    }

    let mut segs: Vec<Seg<T>> = Vec::new();
    for e in g.edge_ids() {
        let line = &imm.polylines[e.0];
        for i in 0..line.len() - 1 {
            let r = SegmentRef { edge: e, index: i };
            if line[i] == line[i + 1] {
                push(
                    ViolationKind::ZeroLengthSegment,
                    vec![r],
                    vec![],
                    Some(line[i].clone()),
                );
            }
            segs.push(Seg {
                r,
                a: &line[i],
                b: &line[i + 1],
                last: i + 2 == line.len(),
                bbox: Bbox::of(&line[i], &line[i + 1]),
            });
        }
    }

    // Near-cusps at breakpoints (and at the base of a loop), and between
    // edge ends sharing a vertex.
    for e in g.edge_ids() {
        let line = &imm.polylines[e.0];
        let n = line.len();
        let mut joints: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
        if g.edge(e).is_loop() && n > 2 {
            joints.push((n - 2, 0));
        }
        for (i, j) in joints {
            let d1 = line[i + 1].sub(&line[i]);
            let d2 = line[j + 1].sub(&line[j]);
            if (i + 1 == j)
                && cross(&d1, &d2).is_zero()
                && sign_of(&dot(&d1, &d2)) == Ordering::Less
            {
                continue; // exact cusp, reported with the overlap scan
            }
            if angle_between(&d1, &d2) > PI - 1e-9 {
                push(
                    ViolationKind::NearCusp,
                    vec![
                        SegmentRef { edge: e, index: i },
                        SegmentRef { edge: e, index: j },
                    ],
                    vec![],
                    Some(line[j].clone()),
                );
            }
        }
    }
    for v in g.vertex_ids() {
        // outgoing directions of every edge end at v
        let mut ends: Vec<(SegmentRef, Point<T>)> = Vec::new();
        for &e in g.incident(v) {
            let line = &imm.polylines[e.0];
            let n = line.len();
            let (t, h) = g.endpoints(e);
            if t == v {
                ends.push((SegmentRef { edge: e, index: 0 }, line[1].sub(&line[0])));
            }
            if h == v {
                ends.push((
                    SegmentRef {
                        edge: e,
                        index: n - 2,
                    },
                    line[n - 2].sub(&line[n - 1]),
                ));
            }
        }
        for i in 0..ends.len() {
            for j in i + 1..ends.len() {
                let (u, w) = (&ends[i].1, &ends[j].1);
                let exact_same = cross(u, w).is_zero() && sign_of(&dot(u, w)) == Ordering::Greater;
                if !exact_same && angle_between(u, w) < 1e-9 {
                    push(
                        ViolationKind::NearCusp,
                        vec![ends[i].0, ends[j].0],
                        vec![v],
                        Some(imm.positions[v.0].clone()),
                    );
                }
            }
        }
    }

    // Pairwise segment contacts.
    let vertex_at = |p: &Point<T>| g.vertex_ids().find(|v| imm.positions[v.0] == *p);
    let mut raw: Vec<RawCrossing<T>> = Vec::new();
    let mut touched: Vec<Point<T>> = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (s, o) = (&segs[i], &segs[j]);
            if !s.bbox.meets(&o.bbox) {
                continue;
            }
            let same_edge = s.r.edge == o.r.edge;
            let consecutive = same_edge && o.r.index == s.r.index + 1;
            let loop_closure = same_edge && g.edge(s.r.edge).is_loop() && s.r.index == 0 && o.last;
            match contact(s.a, s.b, o.a, o.b) {
                Contact::None => {}
                Contact::Proper { t, u, point } => {
                    let sign = sign_of(&cross(&s.b.sub(s.a), &o.b.sub(o.a)));
                    let sign = if sign == Ordering::Greater { 1 } else { -1 };
                    raw.push((
                        point,
                        Strand {
                            edge: s.r.edge,
                            segment: s.r.index,
                            t,
                        },
                        Strand {
                            edge: o.r.edge,
                            segment: o.r.index,
                            t: u,
                        },
                        sign,
                    ));
                }
                Contact::Overlap => {
                    let kind = if consecutive || loop_closure {
                        ViolationKind::Cusp
                    } else {
                        ViolationKind::Overlap
                    };
                    push(kind, vec![s.r, o.r], vec![], None);
                }
                Contact::Touch(p) => {
                    if consecutive && p == *s.b {
                        continue;
                    }
                    if loop_closure && p == *s.a {
                        continue;
                    }
                    let at_vertex_end = |seg: &Seg<T>| -> Option<VertexId> {
                        let (t, h) = g.endpoints(seg.r.edge);
                        if seg.r.index == 0 && *seg.a == p {
                            return Some(t);
                        }
                        if seg.last && *seg.b == p {
                            return Some(h);
                        }
                        None
                    };
                    match (at_vertex_end(s), at_vertex_end(o)) {
                        (Some(v), Some(w)) if v == w => continue,
                        _ => {}
                    }
                    // a breakpoint lying on a curve touches from both of its segments
                    if touched.contains(&p) {
                        continue;
                    }
                    touched.push(p.clone());
                    match vertex_at(&p) {
                        Some(v) => push(
                            ViolationKind::VertexOnCurve,
                            vec![s.r, o.r],
                            vec![v],
                            Some(p),
                        ),
                        None => push(
                            ViolationKind::BreakpointOnCurve,
                            vec![s.r, o.r],
                            vec![],
                            Some(p),
                        ),
                    }
                }
            }
        }
    }
    // Isolated vertices are not segment endpoints; check them directly.
    for v in g.vertex_ids().filter(|&v| g.incident(v).is_empty()) {
        let p = &imm.positions[v.0];
        for s in &segs {
            if on_segment(s.a, s.b, p) {
                push(
                    ViolationKind::VertexOnCurve,
                    vec![s.r],
                    vec![v],
                    Some(p.clone()),
                );
            }
        }
    }
    // Concurrent crossings.
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| raw[a].0.lex_cmp(&raw[b].0));
    for w in order.windows(2) {
        if raw[w[0]].0 == raw[w[1]].0 {
            let segsets = vec![
                SegmentRef {
                    edge: raw[w[0]].1.edge,
                    index: raw[w[0]].1.segment,
                },
                SegmentRef {
                    edge: raw[w[0]].2.edge,
                    index: raw[w[0]].2.segment,
                },
                SegmentRef {
                    edge: raw[w[1]].1.edge,
                    index: raw[w[1]].1.segment,
                },
                SegmentRef {
                    edge: raw[w[1]].2.edge,
                    index: raw[w[1]].2.segment,
                },
            ];
            let mut segsets = segsets;
            segsets.sort();
            segsets.dedup();
            push(
                ViolationKind::MultiplePoint,
                segsets,
                vec![],
                Some(raw[w[0]].0.clone()),
            );
        }
    }

    let ok = violations.is_empty();
    let crossings = if ok {
        build_records(g, raw)
    } else {
        Vec::new()
    };
    let labels = crossings
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id.label(g), i))
        .collect();
    Analysis {
        report: GenericityReport { ok, violations },
        crossings,
        labels,
    }
}

fn build_records<T: Scalar>(g: &MultiGraph, raw: Vec<RawCrossing<T>>) -> Vec<CrossingRecord<T>> {
    let table = DistanceTable::new(g);
    let mut pending: Vec<RawCrossing<T>> = raw
        .into_iter()
        .map(|(p, a, b, sign)| {
            // first strand: smaller edge; for self crossings the earlier strand
            let swap =
                b.edge < a.edge || (a.edge == b.edge && b.position_cmp(&a) == Ordering::Less);
            if swap {
                (p, b, a, -sign)
            } else {
                (p, a, b, sign)
            }
        })
        .collect();
    pending.sort_by(|x, y| {
        (x.1.edge, x.2.edge)
            .cmp(&(y.1.edge, y.2.edge))
            .then_with(|| x.1.position_cmp(&y.1))
    });
    let mut out: Vec<CrossingRecord<T>> = Vec::with_capacity(pending.len());
    for (point, first, second, sign) in pending {
        let rank = match out.last() {
            Some(prev) if prev.id.first == first.edge && prev.id.second == second.edge => {
                prev.id.rank + 1
            }
            _ => 1,
        };
        let (kind, distance) = if first.edge == second.edge {
            (CrossingKind::SelfCrossing, EdgeDistance::Finite(0))
        } else if g.adjacent(first.edge, second.edge) {
            (CrossingKind::Adjacent, EdgeDistance::Finite(0))
        } else {
            (
                CrossingKind::Disjoint,
                table.edge_distance(first.edge, second.edge),
            )
        };
        out.push(CrossingRecord {
            id: CrossingId {
                first: first.edge,
                second: second.edge,
                rank,
            },
            point,
            first,
            second,
            sign,
            kind,
            distance,
        });
    }
    out
}
