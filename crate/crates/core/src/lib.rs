//! Crossing numbers, rotation numbers, cycle censuses and Simon-type
//! invariants of plane immersed graphs.

pub mod automorphism;
pub mod blocks;
pub mod census;
pub mod cycles;
pub mod diagram;
pub mod distance;
pub mod epsilon;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod immersion;
pub mod io;
pub mod minor;
pub mod random;
pub mod report;
pub mod scalar;
pub mod standard;
pub mod svg;
pub mod zero_rotation;

pub use cycles::{enumerate_cycles, girth, Cycle, Step};
pub use distance::{distance_class, edge_distance, EdgeDistance};
pub use graph::{build_named, EdgeId, MultiGraph, NamedGraph, VertexId};
pub use scalar::Scalar;

/// Exact coordinates.
pub type Rational = num_rational::BigRational;

/// Exact-coordinate plane immersion.
pub type ExactImmersion = immersion::PlaneImmersion<Rational>;
/// Floating-point plane immersion.
pub type FloatImmersion = immersion::PlaneImmersion<f64>;
/// Exact-coordinate diagram.
pub type ExactDiagram = diagram::Diagram<Rational>;
