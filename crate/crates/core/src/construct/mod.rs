//! From an arc presentation to a reduced polygon.
//!
//! The cylinder polygon `K1` stacks chord `i` as a horizontal stick at
//! height `i` and joins consecutive chords by vertical sticks over their
//! shared binding point, `2n` sticks in all. `K2` lifts the horizontals to
//! the heights of [`assign_heights`] so that every type II/III chord spans
//! an empty vertical triangle with the vertical stick below it. Replacing
//! each such pair of sticks by the triangle's third side, and finally
//! swapping the five sticks around the top chord for three sticks outside
//! the cylinder, leaves `n + beta1 - 1` sticks.

mod export;
mod heights;
mod reduce;

use std::fmt;

pub use export::{format_obj, parse_polygon_json, rational_string, PolygonJson};
pub use heights::{assign_heights, HeightAssignment, TriangleConstraint};
pub use reduce::{top_reduction, triangle_reductions, Reduction, TopReductionStatus};

use crate::arcpres::{ArcPresentation, BetaCounts};
use crate::error::{invalid, verification, Result};
use crate::geom::{polygon_edges, polygon_embedded, Embeddedness};
use crate::invariants::{project, KnotInvariants};
use crate::scalar::Scalar;
use crate::{Point3, Rational, Segment3};

/// Largest extension length tried by the top reduction unless overridden.
pub const DEFAULT_MAX_EXTENSION: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    Horizontal,
    Vertical,
    Hypotenuse,
    Extension,
    Connector,
}

impl EdgeRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            EdgeRole::Horizontal => "horizontal",
            EdgeRole::Vertical => "vertical",
            EdgeRole::Hypotenuse => "hypotenuse",
            EdgeRole::Extension => "extension",
            EdgeRole::Connector => "connector",
        }
    }

    pub fn parse(s: &str) -> Option<EdgeRole> {
        Some(match s {
            "horizontal" => EdgeRole::Horizontal,
            "vertical" => EdgeRole::Vertical,
            "hypotenuse" => EdgeRole::Hypotenuse,
            "extension" => EdgeRole::Extension,
            "connector" => EdgeRole::Connector,
            _ => return None,
        })
    }
}

impl fmt::Display for EdgeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Closed polygon; edge `i` runs from vertex `i` to vertex `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StickKnot {
    pub vertices: Vec<Point3>,
    pub roles: Vec<EdgeRole>,
}

impl StickKnot {
    pub fn new(vertices: Vec<Point3>, roles: Vec<EdgeRole>) -> Result<Self> {
        if vertices.len() != roles.len() {
            return Err(invalid("one role per edge required"));
        }
        Ok(StickKnot { vertices, roles })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> Vec<Segment3> {
        polygon_edges(&self.vertices)
    }

    pub fn embedded(&self) -> Result<Embeddedness> {
        polygon_embedded(&self.vertices)
    }

    pub fn stick_count(&self) -> usize {
        stick_count(&self.vertices)
    }
}

/// Number of maximal runs of collinear consecutive edges.
pub fn stick_count(vertices: &[Point3]) -> usize {
    let k = vertices.len();
    let zero = Rational::from_int(0);
    (0..k)
        .filter(|&i| {
            let prev = &vertices[(i + k - 1) % k];
            let next = &vertices[(i + 1) % k];
            let u = vertices[i].sub(prev);
            let w = next.sub(&vertices[i]);
            !(u.cross(&w).is_origin() && u.dot(&w) > zero)
        })
        .count()
}

/// Polygon over the chord layout with horizontal `i` at height `z[i]`.
pub fn build_k2(ap: &ArcPresentation, heights: &HeightAssignment) -> Result<StickKnot> {
    let steps = ap.traversal()?;
    if heights.z.len() != ap.n() {
        return Err(invalid("one height per chord required"));
    }
    let pts = &heights.layout.points;
    let mut vertices = Vec::with_capacity(2 * ap.n());
    let mut roles = Vec::with_capacity(2 * ap.n());
    for s in steps {
        let z = heights.height(s.chord);
        vertices.push(pts[s.from - 1].at_height(z.clone()));
        vertices.push(pts[s.to - 1].at_height(z));
        roles.push(EdgeRole::Horizontal);
        roles.push(EdgeRole::Vertical);
    }
    StickKnot::new(vertices, roles)
}

/// The `2n`-stick cylinder polygon whose projection is the chord diagram.
pub fn build_k1(ap: &ArcPresentation) -> Result<StickKnot> {
    ap.require_valid()?;
    let layout = ap.layout()?;
    build_k2(ap, &HeightAssignment::identity(ap, layout)?)
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub top_reduction: bool,
    pub max_extension: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            top_reduction: true,
            max_extension: DEFAULT_MAX_EXTENSION,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub n: usize,
    /// Type counts of the normalized presentation.
    pub beta: BetaCounts,
    pub shift: usize,
    pub sticks_k1: usize,
    pub sticks_k2: usize,
    pub sticks_k3: usize,
    pub reductions: Vec<Reduction>,
    pub top_reduction: TopReductionStatus,
    /// `3(n-1)/2`.
    pub bound: Rational,
    pub bound_satisfied: bool,
    pub embedded_k1: Embeddedness,
    pub embedded_k2: Embeddedness,
    pub embedded_k3: Embeddedness,
    pub input_invariants: KnotInvariants,
    pub output_invariants: KnotInvariants,
    /// Determinant and Alexander polynomial agree. A necessary condition for
    /// knot equivalence only.
    pub invariants_match: bool,
    /// Projection direction index used for the output diagram.
    pub projection_attempt: usize,
}

impl Certificate {
    pub fn embedded(&self) -> bool {
        self.embedded_k1.is_embedded()
            && self.embedded_k2.is_embedded()
            && self.embedded_k3.is_embedded()
    }

    /// Stick count the accounting predicts for this certificate's outcome.
    pub fn expected_sticks(&self) -> usize {
        let base = self.n + self.beta.beta1;
        match self.top_reduction {
            TopReductionStatus::Applied { .. } => base - 1,
            TopReductionStatus::Skipped(_) => base + 1,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "chords: {} (shift {})", self.n, self.shift)?;
        writeln!(
            f,
            "types: beta1={} beta2={} beta3={}",
            self.beta.beta1, self.beta.beta2, self.beta.beta3
        )?;
        writeln!(
            f,
            "sticks: K1={} K2={} K3={}",
            self.sticks_k1, self.sticks_k2, self.sticks_k3
        )?;
        writeln!(f, "triangle reductions: {}", self.reductions.len())?;
        writeln!(f, "top reduction: {}", self.top_reduction)?;
        writeln!(
            f,
            "bound 3(n-1)/2 = {}: {}",
            self.bound,
            if self.bound_satisfied {
                "satisfied"
            } else {
                "exceeded"
            }
        )?;
        writeln!(f, "embedded: {}", self.embedded_k3)?;
        write!(
            f,
            "invariants: {} (det {}, Alexander {})",
            if self.invariants_match {
                "consistent"
            } else {
                "inconsistent"
            },
            self.output_invariants.determinant,
            self.output_invariants.alexander
        )
    }
}

/// `3(n-1)/2` as an exact rational.
pub fn stick_bound(n: usize) -> Rational {
    Rational::new((3 * (n as i64 - 1)).into(), 2.into())
}

/// Runs the whole construction with default options.
pub fn build_full(ap: &ArcPresentation) -> Result<(StickKnot, Certificate)> {
    build_full_with(ap, &BuildOptions::default())
}

pub fn build_full_with(
    ap: &ArcPresentation,
    opts: &BuildOptions,
) -> Result<(StickKnot, Certificate)> {
    ap.require_valid()?;
    let n = ap.n();
    if n < 3 {
        return Err(invalid("construction needs at least 3 chords"));
    }
    let (norm, shift) = ap.normalize()?;
    let (_, beta) = norm.classify()?;
    let heights = assign_heights(&norm)?;

    let k1 = build_k2(
        &norm,
        &HeightAssignment::identity(&norm, heights.layout.clone())?,
    )?;
    let embedded_k1 = k1.embedded()?;
    let k2 = build_k2(&norm, &heights)?;
    let embedded_k2 = k2.embedded()?;
    if !embedded_k2.is_embedded() {
        return Err(verification(format!(
            "lifted polygon not embedded: {embedded_k2}"
        )));
    }

    let (reduced, reductions) = triangle_reductions(&norm, &k2, &heights)?;
    let (k3, top) = if opts.top_reduction {
        top_reduction(&reduced, opts.max_extension)?
    } else {
        (reduced, TopReductionStatus::Skipped("disabled".into()))
    };
    let embedded_k3 = k3.embedded()?;
    if !embedded_k3.is_embedded() {
        return Err(verification(format!(
            "reduced polygon not embedded: {embedded_k3}"
        )));
    }

    let sticks_k3 = k3.stick_count();
    let bound = stick_bound(n);
    let bound_satisfied = Rational::from_int(sticks_k3 as i64) <= bound;

    let input_invariants = KnotInvariants::of(&ap.diagram()?)?;
    let projected = project(&k3.vertices)?;
    let output_invariants = KnotInvariants::of(&projected.diagram)?;
    let invariants_match = input_invariants.consistent_with(&output_invariants);

    let cert = Certificate {
        n,
        beta,
        shift,
        sticks_k1: k1.stick_count(),
        sticks_k2: k2.stick_count(),
        sticks_k3,
        reductions,
        top_reduction: top,
        bound,
        bound_satisfied,
        embedded_k1,
        embedded_k2,
        embedded_k3,
        input_invariants,
        output_invariants,
        invariants_match,
        projection_attempt: projected.attempt,
    };
    Ok((k3, cert))
}
