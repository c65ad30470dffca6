//! Geometry of the 3-periodic orbit family in an elliptic billiard and the
//! loci of triangle centers over that family.
//!
//! The crate is organized around the pipeline used throughout:
//!
//! - [`billiard`]: the billiard shape, orbit vertices in closed form, and the
//!   family's invariants (constant perimeter, reflection law, isosceles
//!   parameters).
//! - [`centers`]: triangle-center functions h(s1,s2,s3), trilinear-to-Cartesian
//!   conversion, and derived-triangle vertices (medial, intouch, extouch,
//!   excentral).
//! - [`locus`]: sampling a center's locus, least-squares ellipse fits,
//!   elliptic/non-elliptic classification, winding numbers, self-intersections.
//! - [`axes`]: closed-form semi-axes for the 29 elliptic loci, similarity
//!   classes, and special aspect ratios.
//! - [`quartic`]: the quartic locus of the symmedian point X6.
//! - [`highprec`]: software-float re-verification (>= 50 significant digits)
//!   of the golden-table quantities.
//! - [`report`]: CSV / JSON / SVG / table output shared by the CLI.

pub mod axes;
pub mod billiard;
pub mod centers;
pub mod highprec;
pub mod locus;
pub mod quartic;
pub mod report;

pub use billiard::{BilliardShape, OrbitTriangle, ShapeError};
pub use centers::{CenterError, CenterSet, CenterSpec, DerivedTriangle, TrilinearTriple};
pub use locus::{EllipseFit, LocusClass, LocusError, LocusSamples};

/// A point in the billiard plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}
