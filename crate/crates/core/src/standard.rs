//! Reference immersions shipped with the library, each re-checked against
//! its expected crossing pattern when loaded.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::distance::EdgeDistance;
use crate::graph::NamedGraph;
use crate::immersion::{CrossingKind, PlaneImmersion};
use crate::io::parse_immersion;
use crate::zero_rotation::construct_zero_rotation;

const PG_FIG1: &str = include_str!("../data/PG-fig1.imm");
const PG_FIG9: &str = include_str!("../data/PG-fig9.imm");
const HG_FIG4: &str = include_str!("../data/HG-fig4.imm");
const K33_FIG8: &str = include_str!("../data/K33-fig8.imm");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardFigure {
    /// Petersen graph: pentagon, pentagram and spokes; five crossings, all
    /// between distance-1 pairs.
    PetersenStar,
    /// Petersen graph with two crossings, at distances 1 and 2.
    PetersenTwoCrossings,
    /// Heawood graph on a 14-gon with seven inner chords; seven crossings at
    /// distance 1 and seven at distance 2.
    HeawoodChords,
    /// K₃,₃ with a single crossing.
    K33OneCrossing,
    /// θ_n drawn with every cycle of rotation number zero.
    Theta(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StandardError {
    #[error("unknown standard immersion `{0}` (try PG-fig1, PG-fig9, HG-fig4, K33-fig8, theta-5)")]
    Unknown(String),
    #[error("standard immersion {name} failed its self-check: {message}")]
    SelfCheck { name: String, message: String },
}

impl StandardFigure {
    pub const ALL_FIXED: [StandardFigure; 4] = [
        StandardFigure::PetersenStar,
        StandardFigure::PetersenTwoCrossings,
        StandardFigure::HeawoodChords,
        StandardFigure::K33OneCrossing,
    ];

    pub fn name(self) -> String {
        match self {
            StandardFigure::PetersenStar => "PG-fig1".into(),
            StandardFigure::PetersenTwoCrossings => "PG-fig9".into(),
            StandardFigure::HeawoodChords => "HG-fig4".into(),
            StandardFigure::K33OneCrossing => "K33-fig8".into(),
            StandardFigure::Theta(n) => format!("theta-{n}"),
        }
    }

    /// Expected (crossing count, distance of each disjoint crossing).
    fn expected(self) -> Option<(usize, Vec<(usize, usize)>)> {
        match self {
            StandardFigure::PetersenStar => Some((5, vec![(1, 5)])),
            StandardFigure::PetersenTwoCrossings => Some((2, vec![(1, 1), (2, 1)])),
            StandardFigure::HeawoodChords => Some((14, vec![(1, 7), (2, 7)])),
            StandardFigure::K33OneCrossing => Some((1, vec![(1, 1)])),
            StandardFigure::Theta(_) => None,
        }
    }

    pub fn load(self) -> Result<PlaneImmersion, StandardError> {
        let fail = |message: String| StandardError::SelfCheck {
            name: self.name(),
            message,
        };
        let text = match self {
            StandardFigure::PetersenStar => PG_FIG1,
            StandardFigure::PetersenTwoCrossings => PG_FIG9,
            StandardFigure::HeawoodChords => HG_FIG4,
            StandardFigure::K33OneCrossing => K33_FIG8,
            StandardFigure::Theta(n) => {
                let g = NamedGraph::Theta(n).build();
                return construct_zero_rotation(&g)
                    .map(|c| c.immersion)
                    .map_err(|e| fail(e.to_string()));
            }
        };
        let imm: PlaneImmersion = parse_immersion(text).map_err(|e| fail(e.to_string()))?;
        let crossings = imm.crossings().map_err(|e| fail(e.to_string()))?;
        let (count, by_distance) = self.expected().expect("fixed figure");
        if crossings.len() != count {
            return Err(fail(format!(
                "{} crossings, expected {count}",
                crossings.len()
            )));
        }
        for (k, n) in by_distance {
            let seen = crossings
                .iter()
                .filter(|c| {
                    c.kind == CrossingKind::Disjoint && c.distance == EdgeDistance::Finite(k)
                })
                .count();
            if seen != n {
                return Err(fail(format!(
                    "{seen} crossings at distance {k}, expected {n}"
                )));
            }
        }
        Ok(imm)
    }
}

impl fmt::Display for StandardFigure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for StandardFigure {
    type Err = StandardError;

    /// Accepts `PG-fig1`, `@PG-fig1`, `theta-5`, `theta5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().trim_start_matches('@');
        match key {
            "PG-fig1" => Ok(StandardFigure::PetersenStar),
            "PG-fig9" => Ok(StandardFigure::PetersenTwoCrossings),
            "HG-fig4" => Ok(StandardFigure::HeawoodChords),
            "K33-fig8" => Ok(StandardFigure::K33OneCrossing),
            _ => key
                .strip_prefix("theta")
                .map(|n| n.trim_start_matches(['-', '_']))
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .map(StandardFigure::Theta)
                .ok_or_else(|| StandardError::Unknown(s.to_string())),
        }
    }
}

/// Loads a standard immersion by name.
pub fn standard_immersion(name: &str) -> Result<PlaneImmersion, StandardError> {
    name.parse::<StandardFigure>()?.load()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::enumerate_cycles;

    #[test]
    fn fixed_figures_load() {
        for f in StandardFigure::ALL_FIXED {
            let imm = f.load().unwrap_or_else(|e| panic!("{e}"));
            assert!(imm.validate().ok, "{f}");
        }
    }

    #[test]
    fn names_parse() {
        assert_eq!(
            "@PG-fig1".parse::<StandardFigure>().unwrap(),
            StandardFigure::PetersenStar
        );
        assert_eq!(
            "theta-5".parse::<StandardFigure>().unwrap(),
            StandardFigure::Theta(5)
        );
        assert_eq!(
            "theta5".parse::<StandardFigure>().unwrap(),
            StandardFigure::Theta(5)
        );
        assert!("PG-fig2".parse::<StandardFigure>().is_err());
    }

    #[test]
    fn theta_has_zero_rotation_two_cycles() {
        let imm = standard_immersion("theta-5").unwrap();
        let cycles = enumerate_cycles(imm.graph(), None);
        assert_eq!(cycles.len(), 10);
        for c in &cycles {
            assert_eq!(imm.rotation_number(c).unwrap(), 0);
        }
    }
}
