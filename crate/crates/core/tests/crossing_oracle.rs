//! Random immersions live on an integer grid, so an independent quadratic
//! crossing count can use plain `i128` predicates.

use std::collections::BTreeMap;

use immersa::cycles::enumerate_cycles;
use immersa::graph::NamedGraph;
use immersa::immersion::SegmentRef;
use immersa::random::random_immersion;
use immersa::{EdgeId, ExactImmersion, MultiGraph};
use num_traits::ToPrimitive;

type P = (i128, i128);

fn grid(imm: &ExactImmersion, e: EdgeId) -> Vec<P> {
    imm.polyline(e)
        .iter()
        .map(|p| {
            assert!(p.x.is_integer() && p.y.is_integer());
            (
                p.x.to_integer().to_i128().unwrap(),
                p.y.to_integer().to_i128().unwrap(),
            )
        })
        .collect()
}

fn orient(a: P, b: P, c: P) -> i128 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

/// Proper crossing of two segments: each strictly separates the other.
fn proper(a: P, b: P, c: P, d: P) -> bool {
    orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0
}

/// Crossings per unordered edge pair (self pairs included), brute force.
fn oracle(imm: &ExactImmersion) -> BTreeMap<(EdgeId, EdgeId), usize> {
    let g = imm.graph();
    let lines: Vec<Vec<P>> = g.edge_ids().map(|e| grid(imm, e)).collect();
    let mut counts = BTreeMap::new();
    for d in g.edge_ids() {
        for e in g.edge_ids().filter(|&e| e >= d) {
            let mut n = 0;
            for (i, s) in lines[d.0].windows(2).enumerate() {
                for (j, t) in lines[e.0].windows(2).enumerate() {
                    if d == e && j <= i {
                        continue;
                    }
                    n += proper(s[0], s[1], t[0], t[1]) as usize;
                }
            }
            if n > 0 {
                counts.insert((d, e), n);
            }
        }
    }
    counts
}

fn library(imm: &ExactImmersion) -> BTreeMap<(EdgeId, EdgeId), usize> {
    let mut counts = BTreeMap::new();
    for c in imm.crossings().unwrap() {
        *counts.entry((c.id.first, c.id.second)).or_insert(0) += 1;
    }
    counts
}

fn graphs() -> Vec<MultiGraph> {
    [
        NamedGraph::Complete(4),
        NamedGraph::Complete(5),
        NamedGraph::CompleteBipartite(3, 3),
        NamedGraph::Petersen,
        NamedGraph::MultipleTriangle(3),
    ]
    .into_iter()
    .map(NamedGraph::build)
    .collect()
}

#[test]
fn crossings_match_brute_force() {
    for g in graphs() {
        for seed in 0..15 {
            let imm = random_immersion(&g, seed).unwrap();
            assert_eq!(library(&imm), oracle(&imm), "seed {seed}");
        }
    }
}

#[test]
fn refinement_preserves_crossings_and_rotation() {
    let g = NamedGraph::CompleteBipartite(3, 3).build();
    let cycles = enumerate_cycles(&g, None);
    for seed in 0..10 {
        let imm = random_immersion(&g, seed).unwrap();
        let refined = imm.refine(SegmentRef {
            edge: EdgeId(seed as usize % 9),
            index: 0,
        });
        assert!(refined.validate().ok);
        assert_eq!(library(&imm), library(&refined));
        for c in &cycles {
            assert_eq!(
                imm.rotation_number(c).unwrap(),
                refined.rotation_number(c).unwrap()
            );
        }
    }
}

#[test]
fn reversing_a_cycle_negates_rotation() {
    let g = NamedGraph::Petersen.build();
    let imm = random_immersion(&g, 4).unwrap();
    for c in enumerate_cycles(&g, Some(5)) {
        let forward = imm.rotation_number(&c).unwrap();
        assert_eq!(
            imm.rotation_number_of_walk(&c.reversed_steps()).unwrap(),
            -forward
        );
    }
}

#[test]
fn exact_and_float_agree_on_grid_immersions() {
    let g = NamedGraph::Complete(5).build();
    for seed in 0..5 {
        let imm = random_immersion(&g, seed).unwrap();
        let float = imm.map_scalar::<f64>();
        assert!(float.validate().ok);
        assert_eq!(
            imm.crossings().unwrap().len(),
            float.crossings().unwrap().len()
        );
        assert_eq!(
            imm.sum_crossing(None).unwrap(),
            float.sum_crossing(None).unwrap()
        );
    }
}
