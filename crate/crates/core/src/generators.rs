//! Graph families used for exhaustive and randomized checks: all small
//! simple graphs up to isomorphism, all small trees, and random
//! series-parallel graphs.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::MultiGraph;

/// Upper-triangle adjacency bitmask of a simple graph on `n ≤ 11` vertices.
type Mask = u64;

fn bit(n: usize, i: usize, j: usize) -> u32 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

fn degrees(n: usize, mask: Mask) -> Vec<usize> {
    let mut deg = vec![0; n];
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit(n, i, j) & 1 == 1 {
                deg[i] += 1;
                deg[j] += 1;
            }
        }
    }
    deg
}

/// Minimum relabelled mask over permutations that list vertices by
/// decreasing degree (ties permuted freely).
fn canonical(n: usize, mask: Mask) -> Mask {
    let deg = degrees(n, mask);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last_mut() {
            Some(g) if deg[g[0]] == deg[v] => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut best = Mask::MAX;
    let mut perm = Vec::with_capacity(n);
    permute_groups(n, mask, &groups, 0, &mut perm, &mut best);
    best
}

fn permute_groups(
    n: usize,
    mask: Mask,
    groups: &[Vec<usize>],
    gi: usize,
    perm: &mut Vec<usize>,
    best: &mut Mask,
) {
    if gi == groups.len() {
        // perm[new] = old
        let mut out = 0;
        for a in 0..n {
            for b in a + 1..n {
                if mask >> bit(n, perm[a], perm[b]) & 1 == 1 {
                    out |= 1 << bit(n, a, b);
                }
            }
        }
        *best = (*best).min(out);
        return;
    }
    let mut group = groups[gi].clone();
    heap_permutations(&mut group, &mut |p| {
        let len = perm.len();
        perm.extend_from_slice(p);
        permute_groups(n, mask, groups, gi + 1, perm, best);
        perm.truncate(len);
    });
}

fn heap_permutations(items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            visit(items);
            return;
        }
        go(k - 1, items, visit);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
            go(k - 1, items, visit);
        }
    }
    let k = items.len();
    go(k, items, visit);
}

fn mask_graph(n: usize, mask: Mask) -> MultiGraph {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit(n, i, j) & 1 == 1 {
                edges.push((
                    format!("{}{}", names[i], names[j]),
                    names[i].clone(),
                    names[j].clone(),
                ));
            }
        }
    }
    MultiGraph::new(names, edges).expect("generated graph")
}

/// All simple graphs on `n` vertices up to isomorphism (connected or not),
/// by edge augmentation with canonical deduplication.
pub fn simple_graphs(n: usize) -> Vec<MultiGraph> {
    assert!(n <= 8, "simple_graphs is meant for tiny n");
    let slots = n * n.saturating_sub(1) / 2;
    let mut all: BTreeSet<Mask> = BTreeSet::new();
    let mut level: HashSet<Mask> = HashSet::from([0]);
    while !level.is_empty() {
        all.extend(level.iter().copied());
        let mut next = HashSet::new();
        for &mask in &level {
            for s in 0..slots {
                if mask >> s & 1 == 0 {
                    next.insert(canonical(n, mask | 1 << s));
                }
            }
        }
        level = next;
    }
    all.into_iter().map(|m| mask_graph(n, m)).collect()
}

/// All trees on `n` vertices up to isomorphism.
pub fn trees(n: usize) -> Vec<MultiGraph> {
    assert!((1..=10).contains(&n));
    if n == 1 {
        return vec![MultiGraph::new(["x1"], Vec::new()).expect("single vertex")];
    }
    // Enumerate labelled trees through Prüfer sequences; dedupe by the
    // centre-rooted canonical string.
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let len = n - 2;
    let total = n.pow(len as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % n);
            c /= n;
        }
        let edges = prufer_edges(n, &seq);
        let key = tree_key(n, &edges);
        if seen.insert(key) {
            let mut mask = 0;
            for &(a, b) in &edges {
                mask |= 1 << bit(n, a, b);
            }
            out.push(mask_graph(n, mask));
        }
    }
    out
}

fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn tree_key(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    // centres by repeated leaf stripping
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut remaining = n;
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    fn encode(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut parts: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| encode(adj, w, v))
            .collect();
        parts.sort();
        format!("({})", parts.concat())
    }
    layer
        .iter()
        .map(|&c| encode(&adj, c, usize::MAX))
        .min()
        .unwrap()
}

/// A random series-parallel graph between two terminals, possibly with
/// further blocks and pendant edges hung off its vertices. The result never
/// has a K₄ minor and may have multi-edges.
pub fn random_series_parallel(seed: u64, max_depth: usize) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder {
        vertices: 2,
        edges: Vec::new(),
    };
    b.grow(&mut rng, 0, 1, max_depth);
    let extra_blocks = rng.gen_range(0..3);
    for _ in 0..extra_blocks {
        let at = rng.gen_range(0..b.vertices);
        let t = b.vertex();
        b.grow(&mut rng, at, t, max_depth.saturating_sub(1));
    }
    for _ in 0..rng.gen_range(0..3) {
        let at = rng.gen_range(0..b.vertices);
        let leaf = b.vertex();
        b.edges.push((at, leaf));
    }
    let names: Vec<String> = (0..b.vertices).map(|i| format!("n{i}")).collect();
    let edges = b
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| (format!("e{i}"), names[s].clone(), names[t].clone()));
    MultiGraph::new(names.clone(), edges).expect("generated graph")
}

struct Builder {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    fn grow(&mut self, rng: &mut ChaCha8Rng, s: usize, t: usize, depth: usize) {
        let choice = if depth == 0 { 0 } else { rng.gen_range(0..5) };
        match choice {
            0 => self.edges.push((s, t)),
            1 | 2 => {
                let parts = rng.gen_range(2..=3);
                let mut at = s;
                for k in 0..parts {
                    let next = if k + 1 == parts { t } else { self.vertex() };
                    self.grow(rng, at, next, depth - 1);
                    at = next;
                }
            }
            _ => {
                for _ in 0..rng.gen_range(2..=3) {
                    self.grow(rng, s, t, depth - 1);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::enumerate_cycles;

    #[test]
    fn graph_counts_match_known_sequence() {
        // number of graphs on n unlabelled vertices: 1, 2, 4, 11, 34, 156
        let counts: Vec<usize> = (1..=6).map(|n| simple_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn tree_counts_match_known_sequence() {
        let counts: Vec<usize> = (1..=8).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
        for t in trees(6) {
            assert_eq!(t.edge_count(), 5);
            assert!(enumerate_cycles(&t, None).is_empty());
        }
    }

    #[test]
    fn random_sp_is_deterministic() {
        assert_eq!(random_series_parallel(5, 4), random_series_parallel(5, 4));
    }
}
