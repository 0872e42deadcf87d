//! Exact arithmetic for the Chamanara surface and its hyperbolic
//! automorphism.
//!
//! The library models the unit square with its dyadic boundary gluings,
//! the piecewise-affine automorphism with derivative `diag(1/2, 2)`, the
//! equivalent one-digit shuffle on binary expansions, and the construction
//! of points whose full orbit is discrete — certified with exact rational
//! lower bounds rather than floating point.
//!
//! Everything is exact: dyadic rationals with arbitrary-precision spill,
//! lazily memoized infinite digit streams with finite descriptions, and
//! interval enclosures over exact rationals.

pub mod cli;
pub mod dyadic;
pub mod dynamics;
pub mod error;
pub mod metric;
pub mod orbit;
pub mod rational;
pub mod render;
pub mod report;
pub mod sequence;
pub mod stream;
pub mod surface;
pub mod verify;

pub use dyadic::Dyadic;
pub use dynamics::{
    baker, baker_digit_step, baker_inverse, iterate, periodic_points, transpose, verify_isolation,
    IsolationReport, MapDescriptor, MapName, PeriodicPoint,
};
pub use error::{Error, Result};
pub use metric::{
    bound_between, distance_lower_bound, DistanceBound, Enclosure, Separation, DEFAULT_EDGE_LIMIT,
};
pub use orbit::{
    accumulation_clusters, build_punctured_surface, certified_separation, make_special_point,
    orbit_digits, orbit_streams, stabilizer_proxy_check, AccumulationReport, Cluster,
    LimitCandidate, LimitFamily, OrbitPointDigits, OrbitReport, PuncturedSurfaceDescription,
    SpecialPoint, StabilizerCertificate,
};
pub use rational::{RatInterval, Rational};
pub use sequence::{parse_sequence_spec, SequenceSpec, SparseSequence};
pub use stream::{Description, DigitStream};
pub use surface::{
    canonical_rep, classify_point, edge_catalog, identify_edge, Coord, EdgeFamily, EdgeId,
    EdgeSegment, EdgeSide, PointClass, RemovedReason, SquarePoint,
};
