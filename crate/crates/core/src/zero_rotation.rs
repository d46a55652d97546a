//! Immersions in which every cycle has rotation number zero, for graphs
//! without a K₄ minor.
//!
//! Each block is decomposed into series and parallel pieces between two
//! terminals and drawn inside the diamond `|x| ≤ min(y, 1 − y)` with the low
//! terminal at `(0, 0)` and the high one at `(0, 1)`. Every edge is strictly
//! increasing in `y`. Parallel pieces are sheared along core polylines
//! `(0,0) → (c, 1/3) → (−c', 2/3) → (0,1)` whose left-to-right order flips
//! between the bottom and the top, so any two branches cross an odd number
//! of times: a cycle made of two `y`-monotone arcs that cross oddly has
//! rotation number zero. Series pieces are stacked. Loops become
//! figure-eight curls. Blocks are glued at cut vertices inside free angular
//! gaps, scaled below the local clearance.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_traits::FromPrimitive;
use thiserror::Error;

use crate::blocks::block_decomposition;
use crate::cycles::{enumerate_cycles, Cycle};
use crate::geometry::{dot, Point};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::immersion::{ImmersionError, PlaneImmersion};
use crate::minor::{has_k4_minor, k4_minor_witness, K4Minor};
use crate::Rational;

type P = Point<Rational>;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZeroRotationError {
    #[error("graph has a K4 minor, so some cycle has nonzero rotation in every immersion; witness: {description}")]
    HasK4Minor {
        witness: Box<K4Minor>,
        description: String,
    },
    #[error("not series-parallel between {low} and {high}")]
    NotSeriesParallel { low: String, high: String },
    #[error("loops cannot be decomposed between terminals")]
    Loop,
    #[error("construction produced an invalid immersion: {0}")]
    Construction(String),
    #[error(transparent)]
    Immersion(#[from] ImmersionError),
}

impl ZeroRotationError {
    fn refusal(g: &MultiGraph) -> Self {
        let witness = k4_minor_witness(g).expect("has_k4_minor and k4_minor_witness agree");
        let description = witness.witness.display(g).to_string();
        ZeroRotationError::HasK4Minor {
            witness: Box::new(witness),
            description,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpNode {
    Leaf(EdgeId),
    /// Children in order from the low terminal; `cuts` are the shared
    /// vertices between consecutive children.
    Series {
        children: Vec<SpTree>,
        cuts: Vec<VertexId>,
    },
    Parallel(Vec<SpTree>),
}

/// Series-parallel decomposition between two terminals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpTree {
    pub node: SpNode,
    pub low: VertexId,
    pub high: VertexId,
}

impl SpTree {
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<EdgeId>) {
        match &self.node {
            SpNode::Leaf(e) => out.push(*e),
            SpNode::Series { children, .. } | SpNode::Parallel(children) => {
                children.iter().for_each(|c| c.collect(out))
            }
        }
    }

    pub fn depth(&self) -> usize {
        match &self.node {
            SpNode::Leaf(_) => 0,
            SpNode::Series { children, .. } | SpNode::Parallel(children) => {
                1 + children.iter().map(SpTree::depth).max().unwrap_or(0)
            }
        }
    }

    pub fn display<'a>(&'a self, g: &'a MultiGraph) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a SpTree, &'a MultiGraph);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let Show(t, g) = self;
                match &t.node {
                    SpNode::Leaf(e) => write!(f, "{}", g.edge_name(*e)),
                    SpNode::Series { children, .. } | SpNode::Parallel(children) => {
                        let tag = if matches!(t.node, SpNode::Series { .. }) {
                            "S"
                        } else {
                            "P"
                        };
                        write!(f, "{tag}(")?;
                        for (i, c) in children.iter().enumerate() {
                            if i > 0 {
                                f.write_str(" ")?;
                            }
                            write!(f, "{}", Show(c, g))?;
                        }
                        f.write_str(")")
                    }
                }
            }
        }
        Show(self, g)
    }
}

/// Decomposes a loopless graph between `low` and `high`. Refuses when the
/// graph plus an edge `low–high` has a K₄ minor.
pub fn sp_decompose(
    g: &MultiGraph,
    low: VertexId,
    high: VertexId,
) -> Result<SpTree, ZeroRotationError> {
    if g.edge_ids().any(|e| g.edge(e).is_loop()) {
        return Err(ZeroRotationError::Loop);
    }
    let mut closed = g.clone();
    let mut name = String::from("terminal-edge");
    while closed.edge_by_name(&name).is_some() {
        name.push('\'');
    }
    closed
        .add_edge(name, g.vertex_name(low), g.vertex_name(high))
        .expect("terminals are vertices of the graph");
    if has_k4_minor(&closed) {
        return Err(ZeroRotationError::refusal(&closed));
    }
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    split(g, &edges, low, high)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

fn not_sp(g: &MultiGraph, low: VertexId, high: VertexId) -> ZeroRotationError {
    ZeroRotationError::NotSeriesParallel {
        low: g.vertex_name(low).into(),
        high: g.vertex_name(high).into(),
    }
}

/// BFS distances from `from` over `edges`, never entering `avoid`.
fn bfs(
    g: &MultiGraph,
    edges: &[EdgeId],
    from: VertexId,
    avoid: Option<VertexId>,
) -> HashMap<VertexId, usize> {
    let mut adj: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for &e in edges {
        let (a, b) = g.endpoints(e);
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut dist = HashMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &w in adj.get(&v).into_iter().flatten() {
            if Some(w) != avoid && !dist.contains_key(&w) {
                dist.insert(w, dist[&v] + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

fn split(
    g: &MultiGraph,
    edges: &[EdgeId],
    low: VertexId,
    high: VertexId,
) -> Result<SpTree, ZeroRotationError> {
    let tree = |node| SpTree { node, low, high };
    if let [e] = edges {
        let (a, b) = g.endpoints(*e);
        return if (a, b) == (low, high) || (a, b) == (high, low) {
            Ok(tree(SpNode::Leaf(*e)))
        } else {
            Err(not_sp(g, low, high))
        };
    }
    let terminal = |v: VertexId| v == low || v == high;

    // Parallel split: components of the graph minus both terminals, plus
    // each direct terminal-terminal edge on its own.
    let mut uf = UnionFind::new(g.vertex_count());
    for &e in edges {
        let (a, b) = g.endpoints(e);
        if !terminal(a) && !terminal(b) {
            uf.union(a.0, b.0);
        }
    }
    let mut groups: Vec<(Option<usize>, Vec<EdgeId>)> = Vec::new();
    for &e in edges {
        let (a, b) = g.endpoints(e);
        let key = [a, b]
            .into_iter()
            .find(|&v| !terminal(v))
            .map(|v| uf.find(v.0));
        match key.and_then(|k| groups.iter_mut().find(|(gk, _)| *gk == Some(k))) {
            Some((_, group)) => group.push(e),
            None => groups.push((key, vec![e])),
        }
    }
    if groups.len() > 1 {
        let children = groups
            .into_iter()
            .map(|(_, group)| split(g, &group, low, high))
            .collect::<Result<_, _>>()?;
        return Ok(tree(SpNode::Parallel(children)));
    }

    // Series split at every vertex separating the terminals.
    let reach = bfs(g, edges, low, None);
    if !reach.contains_key(&high) {
        return Err(not_sp(g, low, high));
    }
    let mut cuts: Vec<VertexId> = reach
        .keys()
        .copied()
        .filter(|&x| !terminal(x) && !bfs(g, edges, low, Some(x)).contains_key(&high))
        .collect();
    if cuts.is_empty() {
        return Err(not_sp(g, low, high));
    }
    cuts.sort_by_key(|x| (reach[x], x.0));
    let chain: Vec<VertexId> = std::iter::once(low)
        .chain(cuts.iter().copied())
        .chain(std::iter::once(high))
        .collect();
    let index_of = |v: VertexId| chain.iter().position(|&c| c == v);
    let mut uf = UnionFind::new(g.vertex_count());
    for &e in edges {
        let (a, b) = g.endpoints(e);
        if index_of(a).is_none() && index_of(b).is_none() {
            uf.union(a.0, b.0);
        }
    }
    // chain indices touched by each component
    let mut touches: HashMap<usize, Vec<usize>> = HashMap::new();
    for &e in edges {
        let (a, b) = g.endpoints(e);
        match (index_of(a), index_of(b)) {
            (Some(i), None) => touches.entry(uf.find(b.0)).or_default().push(i),
            (None, Some(i)) => touches.entry(uf.find(a.0)).or_default().push(i),
            _ => {}
        }
    }
    let mut segments: Vec<Vec<EdgeId>> = vec![Vec::new(); chain.len() - 1];
    for &e in edges {
        let (a, b) = g.endpoints(e);
        let (lo, hi) = match (index_of(a), index_of(b)) {
            (Some(i), Some(j)) => (i.min(j), i.max(j)),
            _ => {
                let inner = if index_of(a).is_none() { a } else { b };
                let t = touches
                    .get(&uf.find(inner.0))
                    .ok_or_else(|| not_sp(g, low, high))?;
                (*t.iter().min().unwrap(), *t.iter().max().unwrap())
            }
        };
        if hi != lo + 1 {
            return Err(not_sp(g, low, high));
        }
        segments[lo].push(e);
    }
    let mut children = Vec::with_capacity(segments.len());
    for (k, seg) in segments.iter().enumerate() {
        if seg.is_empty() {
            return Err(not_sp(g, low, high));
        }
        children.push(split(g, seg, chain[k], chain[k + 1])?);
    }
    Ok(tree(SpNode::Series { children, cuts }))
}

/// A drawing in local coordinates; polylines run from the low end upward.
#[derive(Clone, Debug, Default)]
struct Layout {
    pos: HashMap<VertexId, P>,
    lines: Vec<(EdgeId, VertexId, Vec<P>)>,
}

impl Layout {
    fn map(mut self, f: impl Fn(&P) -> P) -> Layout {
        for p in self.pos.values_mut() {
            *p = f(p);
        }
        for (_, _, line) in &mut self.lines {
            for p in line.iter_mut() {
                *p = f(p);
            }
        }
        self
    }

    fn absorb(&mut self, other: Layout) {
        self.pos.extend(other.pos);
        self.lines.extend(other.lines);
    }
}

#[derive(Clone, Debug)]
struct Params {
    /// Spread of the top core offsets.
    eta_scale: i64,
    /// Child strip width, as 1/shear_den.
    shear_den: i64,
}

fn split_at_height(line: &mut Vec<P>, h: &Rational) {
    let mut out = Vec::with_capacity(line.len() + 1);
    for w in line.windows(2) {
        out.push(w[0].clone());
        if w[0].y < *h && *h < w[1].y {
            let t = (h - &w[0].y) / (&w[1].y - &w[0].y);
            out.push(w[0].add(&w[1].sub(&w[0]).scale(&t)));
        }
    }
    out.push(line.last().expect("non-empty").clone());
    *line = out;
}

fn realize(tree: &SpTree, params: &Params) -> Layout {
    match &tree.node {
        SpNode::Leaf(e) => Layout {
            pos: HashMap::from([
                (tree.low, Point::from_i64(0, 0)),
                (tree.high, Point::from_i64(0, 1)),
            ]),
            lines: vec![(
                *e,
                tree.low,
                vec![Point::from_i64(0, 0), Point::from_i64(0, 1)],
            )],
        },
        SpNode::Series { children, .. } => {
            let m = children.len() as i64;
            let mut out = Layout::default();
            for (k, child) in children.iter().enumerate() {
                let k = Rational::from_integer(BigInt::from(k));
                let inv = q(1, m);
                let placed =
                    realize(child, params).map(|p| Point::new(&p.x * &inv, (&k + &p.y) * &inv));
                out.absorb(placed);
            }
            out
        }
        SpNode::Parallel(children) => {
            let n = children.len() as i64;
            let third = q(1, 3);
            let two_thirds = q(2, 3);
            let s = q(1, params.shear_den);
            let eta = q(1, params.eta_scale * n * n);
            let mut out = Layout::default();
            let mut widest = Rational::from_integer(BigInt::from(0));
            for (i, child) in children.iter().enumerate() {
                let i = Rational::from_integer(BigInt::from(i as i64 + 1));
                let c = i.clone();
                let c_top = &i * (q(1, 1) + &i * &eta);
                if c_top > widest {
                    widest = c_top.clone();
                }
                let mut local = realize(child, params);
                for (_, _, line) in &mut local.lines {
                    split_at_height(line, &third);
                    split_at_height(line, &two_thirds);
                }
                let core = |y: &Rational| -> Rational {
                    let three = q(3, 1);
                    if *y <= third {
                        &c * &three * y
                    } else if *y <= two_thirds {
                        &c - (y - &third) * &three * (&c + &c_top)
                    } else {
                        -(&c_top * &three * (q(1, 1) - y))
                    }
                };
                out.absorb(local.map(|p| Point::new(core(&p.y) + &s * &p.x, p.y.clone())));
            }
            let k = q(3, 1) * (widest + s);
            out.map(|p| Point::new(&p.x / &k, p.y.clone()))
        }
    }
}

/// Figure-eight curl inside the unit diamond: one self crossing.
fn curl() -> Vec<P> {
    [(0, 0), (1, 2), (-1, 4), (0, 6), (1, 4), (-1, 2), (0, 0)]
        .iter()
        .map(|&(x, y)| Point::new(q(x, 6), q(y, 6)))
        .collect()
}

/// Height data for one block: along `axis`, measured from `origin` (the
/// image of `low`), every edge increases from its low end and the block
/// spans exactly [h(low), h(high)].
#[derive(Clone, Debug, PartialEq)]
pub struct BlockHeight {
    pub low: VertexId,
    pub high: VertexId,
    pub origin: P,
    pub axis: P,
    /// Edge and whether its tail is the low end.
    pub edges: Vec<(EdgeId, bool)>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct HeightCertificate {
    pub blocks: Vec<BlockHeight>,
}

impl HeightCertificate {
    /// Re-checks monotonicity on every breakpoint of the immersion.
    pub fn verify(&self, imm: &PlaneImmersion) -> Result<(), String> {
        let g = imm.graph();
        for b in &self.blocks {
            let h = |p: &P| dot(&p.sub(&b.origin), &b.axis);
            let (lo, hi) = (h(imm.position(b.low)), h(imm.position(b.high)));
            for &(e, tail_low) in &b.edges {
                let line = imm.polyline(e);
                let mut heights: Vec<Rational> = line.iter().map(h).collect();
                if !tail_low {
                    heights.reverse();
                }
                if heights.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(format!("edge {} is not monotone in height", g.edge_name(e)));
                }
                if heights.iter().any(|x| *x < lo || *x > hi) {
                    return Err(format!(
                        "edge {} leaves the height range of its block",
                        g.edge_name(e)
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub immersion: PlaneImmersion,
    pub certificate: HeightCertificate,
    /// Decomposition used for each cyclic loopless block.
    pub trees: Vec<SpTree>,
}

/// Builds an immersion with every cycle of rotation number zero, or refuses
/// with a K₄ minor witness.
pub fn construct_zero_rotation(g: &MultiGraph) -> Result<Construction, ZeroRotationError> {
    if has_k4_minor(g) {
        return Err(ZeroRotationError::refusal(g));
    }
    let mut last = String::new();
    for attempt in 0..6 {
        let params = Params {
            eta_scale: 8 + 3 * attempt,
            shear_den: 4 + attempt,
        };
        let built = assemble(g, &params)?;
        let report = built.immersion.validate();
        if !report.ok {
            last = report.violations[0].describe(g);
            continue;
        }
        built
            .certificate
            .verify(&built.immersion)
            .map_err(ZeroRotationError::Construction)?;
        if let Some((cycle, rot)) = verify_zero(&built.immersion)? {
            return Err(ZeroRotationError::Construction(format!(
                "cycle {} has rotation number {rot}",
                cycle.display(g)
            )));
        }
        return Ok(built);
    }
    Err(ZeroRotationError::Construction(last))
}

/// The first cycle with nonzero rotation number, if any.
pub fn verify_zero(imm: &PlaneImmersion) -> Result<Option<(Cycle, i64)>, ImmersionError> {
    for c in enumerate_cycles(imm.graph(), None) {
        let r = imm.rotation_number(&c)?;
        if r != 0 {
            return Ok(Some((c, r)));
        }
    }
    Ok(None)
}

fn to_f64(p: &P) -> (f64, f64) {
    p.to_f64()
}

/// Distance from `p` to segment `ab`, in floating point.
fn seg_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.0 + t * dx - p.0, a.1 + t * dy - p.1);
    (cx * cx + cy * cy).sqrt()
}

fn assemble(g: &MultiGraph, params: &Params) -> Result<Construction, ZeroRotationError> {
    let bd = block_decomposition(g);
    let mut pos: Vec<Option<P>> = vec![None; g.vertex_count()];
    let mut lines: Vec<Option<Vec<P>>> = vec![None; g.edge_count()];
    let mut done = vec![false; bd.blocks.len()];
    let mut certificate = HeightCertificate::default();
    let mut trees = Vec::new();
    let mut offset = Rational::from_integer(BigInt::from(0));

    for start in g.vertex_ids() {
        if pos[start.0].is_some() {
            continue;
        }
        // Place one component around the origin, then shift it right.
        let mut comp_vertices: Vec<VertexId> = Vec::new();
        let mut comp_edges: Vec<EdgeId> = Vec::new();
        let mut queue: VecDeque<(usize, VertexId)> = bd
            .blocks_at(start)
            .into_iter()
            .take(1)
            .map(|b| (b, start))
            .collect();
        pos[start.0] = Some(Point::from_i64(0, 0));
        comp_vertices.push(start);
        while let Some((bi, at)) = queue.pop_front() {
            if done[bi] {
                continue;
            }
            done[bi] = true;
            let block = &bd.blocks[bi];
            let anchor = pos[at.0].clone().expect("attachment vertex placed");
            let (layout, high) = block_layout(g, &block.edges, at, params, &mut trees)?;

            // Frame: local y along `axis`, local x along its right normal.
            let (axis, normal) = frame(g, &pos, &lines, &comp_edges, &comp_vertices, at, &anchor);
            let place = |p: &P| anchor.add(&axis.scale(&p.y)).add(&normal.scale(&p.x));
            for (&v, p) in &layout.pos {
                if v != at {
                    debug_assert!(pos[v.0].is_none());
                    pos[v.0] = Some(place(p));
                    comp_vertices.push(v);
                }
            }
            let mut heights = Vec::new();
            for (e, from, line) in &layout.lines {
                let mut world: Vec<P> = line.iter().map(place).collect();
                let tail_low = g.endpoints(*e).0 == *from;
                if !tail_low {
                    world.reverse();
                }
                lines[e.0] = Some(world);
                comp_edges.push(*e);
                heights.push((*e, tail_low));
            }
            if let Some(high) = high {
                certificate.blocks.push(BlockHeight {
                    low: at,
                    high,
                    origin: anchor.clone(),
                    axis: axis.clone(),
                    edges: heights,
                });
            }
            for &v in &block.vertices {
                for b in bd.blocks_at(v) {
                    if !done[b] {
                        queue.push_back((b, v));
                    }
                }
            }
        }
        // shift right of everything placed so far
        let xs = comp_vertices
            .iter()
            .map(|v| pos[v.0].as_ref().unwrap().x.clone())
            .chain(
                comp_edges
                    .iter()
                    .flat_map(|e| lines[e.0].as_ref().unwrap().iter().map(|p| p.x.clone())),
            );
        let (mut lo, mut hi) = (None::<Rational>, None::<Rational>);
        for x in xs {
            if lo.as_ref().is_none_or(|l| x < *l) {
                lo = Some(x.clone());
            }
            if hi.as_ref().is_none_or(|h| x > *h) {
                hi = Some(x);
            }
        }
        let (lo, hi) = (lo.unwrap(), hi.unwrap());
        let shift = Point::new(&offset - &lo, Rational::from_integer(BigInt::from(0)));
        for v in &comp_vertices {
            let p = pos[v.0].take().unwrap();
            pos[v.0] = Some(p.add(&shift));
        }
        for e in &comp_edges {
            let line = lines[e.0].take().unwrap();
            lines[e.0] = Some(line.iter().map(|p| p.add(&shift)).collect());
        }
        for b in certificate
            .blocks
            .iter_mut()
            .filter(|b| comp_vertices.contains(&b.low))
        {
            b.origin = b.origin.add(&shift);
        }
        offset = &offset + (hi - lo) + q(1, 1);
    }

    let positions: Vec<P> = pos
        .into_iter()
        .map(|p| p.expect("every vertex placed"))
        .collect();
    let polylines: Vec<Vec<P>> = lines
        .into_iter()
        .map(|l| l.expect("every edge placed"))
        .collect();
    let immersion = PlaneImmersion::new(g.clone(), positions, polylines)?;
    Ok(Construction {
        immersion,
        certificate,
        trees,
    })
}

/// Local drawing of one block with `at` as its low terminal. Returns the
/// high terminal for cyclic loopless blocks.
fn block_layout(
    g: &MultiGraph,
    edges: &[EdgeId],
    at: VertexId,
    params: &Params,
    trees: &mut Vec<SpTree>,
) -> Result<(Layout, Option<VertexId>), ZeroRotationError> {
    match edges {
        [] => Ok((
            Layout {
                pos: HashMap::from([(at, Point::from_i64(0, 0))]),
                lines: vec![],
            },
            None,
        )),
        [e] if g.edge(*e).is_loop() => Ok((
            Layout {
                pos: HashMap::from([(at, Point::from_i64(0, 0))]),
                lines: vec![(*e, at, curl())],
            },
            None,
        )),
        [e] => {
            let other = g.edge(*e).other(at);
            let tree = SpTree {
                node: SpNode::Leaf(*e),
                low: at,
                high: other,
            };
            Ok((realize(&tree, params), None))
        }
        _ => {
            let first = *edges
                .iter()
                .find(|&&e| g.edge(e).touches(at))
                .expect("block edge at its vertex");
            let high = g.edge(first).other(at);
            let tree = split(g, edges, at, high)?;
            let layout = realize(&tree, params);
            trees.push(tree);
            Ok((layout, Some(high)))
        }
    }
}

/// Part of segment `ab` inside the wedge at `apex` spanned by unit rays
/// `r1` (counterclockwise side) and `r2`, if any. The wedge is narrower
/// than a half-plane.
fn clip_to_wedge(
    apex: (f64, f64),
    r1: (f64, f64),
    r2: (f64, f64),
    a: (f64, f64),
    b: (f64, f64),
) -> Option<((f64, f64), (f64, f64))> {
    let side = |r: (f64, f64), p: (f64, f64)| r.0 * (p.1 - apex.1) - r.1 * (p.0 - apex.0);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    // inside: clockwise of r1 and counterclockwise of r2
    for (fa, fb) in [(-side(r1, a), -side(r1, b)), (side(r2, a), side(r2, b))] {
        if fa < 0.0 && fb < 0.0 {
            return None;
        }
        if fa < 0.0 || fb < 0.0 {
            let t = fa / (fa - fb);
            if fa < 0.0 {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
    }
    if lo > hi {
        return None;
    }
    let at = |t: f64| (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
    Some((at(lo), at(hi)))
}

/// Picks a direction into the widest free angular gap at `at`, then a
/// scale that keeps the block inside a wedge around that direction and
/// within a third of the distance to anything already drawn in the wedge.
/// Geometry outside the wedge is irrelevant, so chains of blocks do not
/// shrink geometrically.
fn frame(
    g: &MultiGraph,
    pos: &[Option<P>],
    lines: &[Option<Vec<P>>],
    placed: &[EdgeId],
    vertices: &[VertexId],
    at: VertexId,
    anchor: &P,
) -> (P, P) {
    let a = to_f64(anchor);
    let mut angles: Vec<f64> = Vec::new();
    let mut obstacles: Vec<((f64, f64), (f64, f64))> = Vec::new();
    for &e in placed {
        let line = lines[e.0].as_ref().expect("placed edge");
        let n = line.len();
        let (t, h) = g.endpoints(e);
        if t == at {
            let p = to_f64(&line[1]);
            angles.push((p.1 - a.1).atan2(p.0 - a.0));
        }
        if h == at {
            let p = to_f64(&line[n - 2]);
            angles.push((p.1 - a.1).atan2(p.0 - a.0));
        }
        for (i, w) in line.windows(2).enumerate() {
            let touches_anchor = (i == 0 && t == at) || (i == n - 2 && h == at);
            if !touches_anchor {
                obstacles.push((to_f64(&w[0]), to_f64(&w[1])));
            }
        }
    }
    for p in vertices.iter().filter_map(|v| pos[v.0].as_ref()) {
        if p != anchor {
            obstacles.push((to_f64(p), to_f64(p)));
        }
    }
    let (direction, gap) = if angles.is_empty() {
        (PI / 2.0, 2.0 * PI)
    } else {
        angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut best = (
            angles[0] + 2.0 * PI - angles[angles.len() - 1],
            angles[angles.len() - 1],
        );
        for w in angles.windows(2) {
            if w[1] - w[0] > best.0 {
                best = (w[1] - w[0], w[0]);
            }
        }
        (best.1 + best.0 / 2.0, best.0)
    };
    // integer direction of length about 1000
    let dx = (direction.cos() * 1000.0).round() as i64;
    let dy = (direction.sin() * 1000.0).round() as i64;
    let len = ((dx * dx + dy * dy) as f64).sqrt();
    let half = (gap / 4.0).min(PI / 4.0);
    // local x is squeezed by 1/m so the block stays within ±half of the axis
    let m = (1.0 / half.tan()).ceil().max(1.0) as i64;

    // Obstacles are collected in a slightly wider wedge to absorb rounding.
    let (theta, wide) = (
        (dy as f64).atan2(dx as f64),
        (half * 1.25).min(PI / 2.0 - 1e-3),
    );
    let r1 = ((theta + wide).cos(), (theta + wide).sin());
    let r2 = ((theta - wide).cos(), (theta - wide).sin());
    let mut clearance = f64::INFINITY;
    for &(p, q) in &obstacles {
        if let Some((u, v)) = clip_to_wedge(a, r1, r2, p, q) {
            clearance = clearance.min(seg_distance(a, u, v));
        }
    }
    if !clearance.is_finite() {
        clearance = 1.0;
    }

    // whole block within a third of the clearance
    let reach = len * (1.0 + 1.0 / (m * m) as f64).sqrt();
    let scale = BigInt::from_f64((3.0 * reach / clearance).ceil().max(1.0)).expect("finite scale");
    let squeezed = &scale * BigInt::from(m);
    let frac = |n: i64, d: &BigInt| Rational::new(BigInt::from(n), d.clone());
    let axis = Point::new(frac(dx, &scale), frac(dy, &scale));
    let normal = Point::new(frac(dy, &squeezed), frac(-dx, &squeezed));
    (axis, normal)
}
