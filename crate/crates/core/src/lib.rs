//! Polygonal knots from arc presentations.
//!
//! Given an arc presentation with `n` chords, [`construct::build_full`]
//! produces an embedded polygon in 3-space with exact rational vertices and
//! at most `3(n-1)/2` sticks, together with a [`construct::Certificate`]
//! recording how the count was reached and whether the knot invariants of
//! the input diagram and the output polygon agree.
//!
//! The geometric kernel in [`geom`] is generic over the scalar field; the
//! pipeline itself runs on [`Rational`] so every verdict is exact.

pub mod arcpres;
pub mod bounds;
pub mod construct;
pub mod diagram;
pub mod error;
pub mod geom;
pub mod invariants;
pub mod scalar;

pub use arcpres::{ArcPresentation, BetaCounts, ChordType};
pub use construct::{Certificate, StickKnot};
pub use diagram::Diagram;
pub use error::{Error, Result};
pub use invariants::LaurentPoly;
pub use scalar::Scalar;

/// Exact rational scalar used by the pipeline.
pub type Rational = num_rational::BigRational;

pub type Point2 = geom::Point2<Rational>;
pub type Point3 = geom::Point3<Rational>;
pub type Segment3 = geom::Segment3<Rational>;
pub type Triangle3 = geom::Triangle3<Rational>;

/// Floating point points, for previews and export only.
pub type Point3f = geom::Point3<f64>;
