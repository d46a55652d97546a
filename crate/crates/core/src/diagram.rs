//! Diagrams: immersions with over/under data, signed crossing counts,
//! the ε-weighted invariants ℒ, writhe and Thurston–Bennequin sums.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::census::OrientedEdge;
use crate::cycles::{enumerate_cycles, Cycle};
use crate::epsilon::{EpsilonTable, Target};
use crate::immersion::{CrossingId, CrossingKind, CrossingRecord, ImmersionError, PlaneImmersion};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagramError {
    #[error(transparent)]
    Immersion(#[from] ImmersionError),
    #[error("expected over/under data for {expected} crossings, got {got}")]
    CountMismatch { expected: usize, got: usize },
    #[error("no crossing {0}")]
    UnknownCrossing(String),
    #[error("diagram is over a different graph than {0}")]
    WrongGraph(Target),
    #[error("edges must differ")]
    SameEdge,
    #[error("cycle does not belong to this graph")]
    ForeignCycle,
}

/// An immersion together with the over strand at each crossing.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagram<T: Scalar = Rational> {
    immersion: PlaneImmersion<T>,
    /// Aligned with `immersion.crossings()`: whether the first strand is over.
    first_over: Vec<bool>,
}

impl<T: Scalar> Diagram<T> {
    pub fn new(immersion: PlaneImmersion<T>, first_over: Vec<bool>) -> Result<Self, DiagramError> {
        let expected = immersion.crossings()?.len();
        if first_over.len() != expected {
            return Err(DiagramError::CountMismatch {
                expected,
                got: first_over.len(),
            });
        }
        Ok(Diagram {
            immersion,
            first_over,
        })
    }

    /// Uniformly random over/under choices, deterministic per seed.
    pub fn random_lift(immersion: PlaneImmersion<T>, seed: u64) -> Result<Self, DiagramError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = immersion.crossings()?.len();
        let first_over = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        Diagram::new(immersion, first_over)
    }

    pub fn immersion(&self) -> &PlaneImmersion<T> {
        &self.immersion
    }

    pub fn crossings(&self) -> &[CrossingRecord<T>] {
        self.immersion
            .crossings()
            .expect("validated at construction")
    }

    pub fn first_over(&self) -> &[bool] {
        &self.first_over
    }

    pub fn index_of(&self, id: &CrossingId) -> Option<usize> {
        self.crossings().binary_search_by(|c| c.id.cmp(id)).ok()
    }

    /// Crossing sign under the edges' native orientations: positive when
    /// det[tangent of over strand, tangent of under strand] > 0.
    pub fn sign(&self, index: usize) -> i64 {
        let geometric = self.crossings()[index].sign as i64;
        if self.first_over[index] {
            geometric
        } else {
            -geometric
        }
    }

    /// The same diagram with over and under exchanged at `id`.
    pub fn crossing_change(&self, id: &CrossingId) -> Result<Self, DiagramError> {
        let i = self
            .index_of(id)
            .ok_or_else(|| DiagramError::UnknownCrossing(id.label(self.immersion.graph())))?;
        let mut next = self.clone();
        next.first_over[i] = !next.first_over[i];
        Ok(next)
    }

    /// ℓ_D(d, e): positive minus negative crossings between two distinct
    /// oriented edges.
    pub fn ell(&self, d: OrientedEdge, e: OrientedEdge) -> Result<i64, DiagramError> {
        if d.edge == e.edge {
            return Err(DiagramError::SameEdge);
        }
        let dir = |o: OrientedEdge| if o.forward { 1 } else { -1 };
        let mut total = 0;
        for (i, c) in self.crossings().iter().enumerate() {
            let (a, b) = c.edges();
            if (a, b) == (d.edge, e.edge) || (a, b) == (e.edge, d.edge) {
                total += self.sign(i);
            }
        }
        Ok(total * dir(d) * dir(e))
    }

    /// ℒ for diagrams over the labelled Petersen or Heawood graph.
    pub fn l_invariant(&self, target: Target) -> Result<i64, DiagramError> {
        let table = EpsilonTable::standard(target);
        if self.immersion.graph() != table.graph() {
            return Err(DiagramError::WrongGraph(target));
        }
        let mut total = 0;
        for (i, c) in self.crossings().iter().enumerate() {
            if c.kind != CrossingKind::Disjoint {
                continue;
            }
            if let Some(w) = table.weight(c.id.first, c.id.second) {
                total += w * self.sign(i);
            }
        }
        Ok(total)
    }

    /// Sum of crossing signs over crossings internal to γ, with each
    /// strand oriented along γ. Independent of the direction of γ.
    pub fn writhe(&self, cycle: &Cycle) -> Result<i64, DiagramError> {
        let g = self.immersion.graph();
        if Cycle::new(g, cycle.steps().to_vec()).is_err() {
            return Err(DiagramError::ForeignCycle);
        }
        let mut total = 0;
        for (i, c) in self.crossings().iter().enumerate() {
            let (a, b) = c.edges();
            let (Some(da), Some(db)) = (cycle.direction(a), cycle.direction(b)) else {
                continue;
            };
            let flip = if da == db { 1 } else { -1 };
            total += self.sign(i) * flip;
        }
        Ok(total)
    }

    /// TB_k: writhe summed over all k-cycles (all cycles when `k` is `None`).
    pub fn tb(&self, k: Option<usize>) -> i64 {
        let cycles = enumerate_cycles(self.immersion.graph(), k);
        self.tb_over(&cycles)
    }

    pub fn tb_over(&self, cycles: &[Cycle]) -> i64 {
        cycles
            .iter()
            .map(|c| self.writhe(c).expect("cycles from this graph"))
            .sum()
    }
}
