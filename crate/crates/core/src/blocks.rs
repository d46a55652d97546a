//! Blocks (maximal 2-connected pieces) and cut vertices.

use crate::graph::{EdgeId, MultiGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Sorted edge ids. Empty for an isolated vertex.
    pub edges: Vec<EdgeId>,
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
}

impl Block {
    pub fn subgraph(&self, g: &MultiGraph) -> MultiGraph {
        g.subgraph(&self.edges, &self.vertices)
    }

    /// A block that contains a cycle (anything but a bridge or isolated vertex).
    pub fn is_cyclic(&self, g: &MultiGraph) -> bool {
        self.edges.len() > 1 || self.edges.iter().any(|&e| g.edge(e).is_loop())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<VertexId>,
}

impl BlockDecomposition {
    /// Indices of blocks containing `v`.
    pub fn blocks_at(&self, v: VertexId) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.blocks[i].vertices.binary_search(&v).is_ok())
            .collect()
    }

    pub fn block_of_edge(&self, e: EdgeId) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.edges.binary_search(&e).is_ok())
    }
}

/// Tarjan's biconnected components, keyed on edge ids so parallel edges
/// land in a common block. Loops form their own blocks; isolated vertices
/// form trivial ones. Blocks come out sorted by their smallest edge (then
/// vertex).
pub fn block_decomposition(g: &MultiGraph) -> BlockDecomposition {
    let n = g.vertex_count();
    let mut state = Tarjan {
        g,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in g.vertex_ids() {
        if state.disc[v.0] != usize::MAX {
            continue;
        }
        state.visit(v, None);
    }
    let mut blocks: Vec<Block> = Vec::new();
    for mut edges in std::mem::take(&mut state.blocks) {
        edges.sort();
        edges.dedup();
        let mut vertices: Vec<VertexId> = edges
            .iter()
            .flat_map(|&e| {
                let (a, b) = g.endpoints(e);
                [a, b]
            })
            .collect();
        vertices.sort();
        vertices.dedup();
        if !edges.is_empty() {
            blocks.push(Block { edges, vertices });
        }
    }
    for v in g.vertex_ids() {
        if g.incident(v).iter().all(|&e| g.edge(e).is_loop()) {
            blocks.push(Block {
                edges: vec![],
                vertices: vec![v],
            });
        }
    }
    for e in g.edge_ids().filter(|&e| g.edge(e).is_loop()) {
        let (v, _) = g.endpoints(e);
        blocks.push(Block {
            edges: vec![e],
            vertices: vec![v],
        });
    }
    blocks.sort_by(|a, b| (a.edges.first(), &a.vertices).cmp(&(b.edges.first(), &b.vertices)));
    // Cut vertices are those lying in two or more blocks; loop blocks count.
    let cut_vertices: Vec<VertexId> = g
        .vertex_ids()
        .filter(|&v| {
            blocks
                .iter()
                .filter(|b| b.vertices.binary_search(&v).is_ok())
                .count()
                > 1
        })
        .collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
    }
}

struct Tarjan<'a> {
    g: &'a MultiGraph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<EdgeId>,
    blocks: Vec<Vec<EdgeId>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: VertexId, parent_edge: Option<EdgeId>) {
        self.disc[v.0] = self.time;
        self.low[v.0] = self.time;
        self.time += 1;
        for &e in self.g.incident(v) {
            if Some(e) == parent_edge || self.g.edge(e).is_loop() {
                continue;
            }
            let w = self.g.edge(e).other(v);
            if self.disc[w.0] == usize::MAX {
                self.stack.push(e);
                self.visit(w, Some(e));
                self.low[v.0] = self.low[v.0].min(self.low[w.0]);
                if self.low[w.0] >= self.disc[v.0] {
                    let mut block = Vec::new();
                    while let Some(f) = self.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if self.disc[w.0] < self.disc[v.0] {
                self.stack.push(e);
                self.low[v.0] = self.low[v.0].min(self.disc[w.0]);
            }
        }
    }
}
