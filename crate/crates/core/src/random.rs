//! Seeded random generic immersions on an integer grid.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::Point;
use crate::graph::{EdgeId, MultiGraph};
use crate::immersion::PlaneImmersion;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RandomError {
    #[error("no generic immersion after {0} perturbation rounds")]
    RetryBudget(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomOptions {
    /// Inclusive range of interior breakpoints per edge.
    pub breakpoints: (usize, usize),
    /// Vertices are drawn from `[0, size]²`.
    pub size: i64,
    /// Breakpoint jitter as a fraction `1/jitter_den` of `size`.
    pub jitter_den: i64,
    pub max_retries: usize,
}

impl Default for RandomOptions {
    fn default() -> Self {
        RandomOptions {
            breakpoints: (3, 5),
            size: 1000,
            jitter_den: 5,
            max_retries: 64,
        }
    }
}

/// A random generic immersion, deterministic in `seed`.
pub fn random_immersion(g: &MultiGraph, seed: u64) -> Result<PlaneImmersion, RandomError> {
    random_immersion_with(g, seed, &RandomOptions::default())
}

pub fn random_immersion_with(
    g: &MultiGraph,
    seed: u64,
    opts: &RandomOptions,
) -> Result<PlaneImmersion, RandomError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = opts.size;
    let jitter = (size / opts.jitter_den).max(1);

    let mut taken = HashSet::new();
    let mut pos: Vec<(i64, i64)> = Vec::with_capacity(g.vertex_count());
    for _ in g.vertex_ids() {
        loop {
            let p = (rng.gen_range(0..=size), rng.gen_range(0..=size));
            if taken.insert(p) {
                pos.push(p);
                break;
            }
        }
    }
    let mut interior: Vec<Vec<(i64, i64)>> = g
        .edge_ids()
        .map(|e| initial_breakpoints(g, e, &pos, opts, jitter, &mut rng))
        .collect();

    for round in 0..=opts.max_retries {
        let imm = build(g, &pos, &interior);
        let report = imm.validate();
        if report.ok {
            return Ok(imm);
        }
        // Fresh offsets, shrinking each round, on every edge involved.
        let magnitude = (jitter >> (round / 4 + 1)).max(2);
        let mut bad: HashSet<EdgeId> = HashSet::new();
        for v in &report.violations {
            bad.extend(v.segments.iter().map(|s| s.edge));
        }
        for e in bad {
            let line = &mut interior[e.0];
            if line.is_empty() {
                *line = initial_breakpoints(g, e, &pos, opts, jitter, &mut rng);
            }
            for p in line.iter_mut() {
                p.0 += rng.gen_range(-magnitude..=magnitude);
                p.1 += rng.gen_range(-magnitude..=magnitude);
            }
        }
    }
    Err(RandomError::RetryBudget(opts.max_retries))
}

fn initial_breakpoints(
    g: &MultiGraph,
    e: EdgeId,
    pos: &[(i64, i64)],
    opts: &RandomOptions,
    jitter: i64,
    rng: &mut ChaCha8Rng,
) -> Vec<(i64, i64)> {
    let (t, h) = g.endpoints(e);
    let k = rng.gen_range(opts.breakpoints.0..=opts.breakpoints.1);
    let (a, b) = (pos[t.0], pos[h.0]);
    if t == h {
        // a small polygon through the vertex, angles increasing
        let r = jitter as f64;
        let start: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let k = k.max(3);
        return (1..=k)
            .map(|j| {
                let theta = start + std::f64::consts::TAU * j as f64 / (k + 1) as f64;
                let radius = r * rng.gen_range(0.6..1.0);
                (
                    a.0 + (radius * theta.cos()).round() as i64,
                    a.1 + (radius * theta.sin()).round() as i64,
                )
            })
            .collect();
    }
    (1..=k)
        .map(|j| {
            let x = a.0 + (b.0 - a.0) * j as i64 / (k as i64 + 1);
            let y = a.1 + (b.1 - a.1) * j as i64 / (k as i64 + 1);
            (
                x + rng.gen_range(-jitter..=jitter),
                y + rng.gen_range(-jitter..=jitter),
            )
        })
        .collect()
}

fn build(g: &MultiGraph, pos: &[(i64, i64)], interior: &[Vec<(i64, i64)>]) -> PlaneImmersion {
    let p = |&(x, y): &(i64, i64)| Point::<Rational>::from_i64(x, y);
    PlaneImmersion::from_interior(
        g.clone(),
        pos.iter().map(p).collect(),
        interior.iter().map(|l| l.iter().map(p).collect()).collect(),
    )
    .expect("counts match the graph")
}
