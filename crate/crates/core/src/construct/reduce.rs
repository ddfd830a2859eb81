//! Stick-removing moves. Every move is an elementary triangle move: a vertex
//! is deleted (or inserted) only after checking exactly that the triangle it
//! spans with its neighbours meets the rest of the polygon nowhere but at
//! those neighbours.

use std::fmt;

use super::{EdgeRole, HeightAssignment, StickKnot};
use crate::arcpres::{ArcPresentation, ChordType};
use crate::error::{verification, Result};
use crate::geom::{triangle_pierced, Triangle3};
use num_traits::{Signed, Zero};

use crate::scalar::Scalar;
use crate::{Point3, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// 1-based chord index.
    pub chord: usize,
    /// Corner removed: the top of the vertical stick below the chord.
    pub removed: Point3,
    pub hypotenuse: (Point3, Point3),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopReductionStatus {
    Applied {
        /// Extension lengths used on the two sides of the top chord.
        extensions: [Rational; 2],
        /// Which diagonal triangulated the swept hexagon.
        diagonal: u8,
    },
    Skipped(String),
}

impl TopReductionStatus {
    pub fn is_applied(&self) -> bool {
        matches!(self, TopReductionStatus::Applied { .. })
    }
}

impl fmt::Display for TopReductionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopReductionStatus::Applied { .. } => write!(f, "applied"),
            TopReductionStatus::Skipped(reason) => write!(f, "skipped:{reason}"),
        }
    }
}

fn prev_index(k: usize, i: usize) -> usize {
    (i + k - 1) % k
}

/// Whether the triangle `(a, b, c)` meets the polygon only where allowed.
/// Edges listed in `skip` are the ones the move replaces.
fn triangle_clear(
    knot: &StickKnot,
    tri: &Triangle3<Rational>,
    skip: &[usize],
    ignore: &[Point3],
) -> bool {
    if tri.is_degenerate() {
        return false;
    }
    knot.edges()
        .iter()
        .enumerate()
        .filter(|(e, _)| !skip.contains(e))
        .all(|(_, s)| !triangle_pierced(tri, s, ignore).expect("non-degenerate"))
}

/// Deletes vertex `i` if its triangle is clear; the merged edge gets `role`.
fn remove_vertex(knot: &mut StickKnot, i: usize, role: EdgeRole, checked: bool) -> bool {
    let k = knot.len();
    let p = prev_index(k, i);
    let nx = (i + 1) % k;
    if checked {
        let tri = Triangle3::new(
            knot.vertices[p].clone(),
            knot.vertices[i].clone(),
            knot.vertices[nx].clone(),
        );
        let ignore = [knot.vertices[p].clone(), knot.vertices[nx].clone()];
        if !triangle_clear(knot, &tri, &[p, i], &ignore) {
            return false;
        }
    }
    knot.vertices.remove(i);
    knot.roles.remove(i);
    let p = if i == 0 { knot.len() - 1 } else { i - 1 };
    knot.roles[p] = role;
    true
}

/// Inserts `point` into edge `e` if the triangle it spans with the edge is
/// clear.
fn insert_vertex(
    knot: &mut StickKnot,
    e: usize,
    point: Point3,
    roles: (EdgeRole, EdgeRole),
) -> bool {
    let k = knot.len();
    let a = knot.vertices[e].clone();
    let b = knot.vertices[(e + 1) % k].clone();
    let tri = Triangle3::new(a.clone(), point.clone(), b.clone());
    if !triangle_clear(knot, &tri, &[e], &[a, b]) {
        return false;
    }
    knot.vertices.insert(e + 1, point);
    knot.roles[e] = roles.0;
    knot.roles.insert(e + 1, roles.1);
    true
}

fn index_of(knot: &StickKnot, p: &Point3) -> Option<usize> {
    knot.vertices.iter().position(|v| v == p)
}

/// Replaces the horizontal and downward vertical of every type II/III chord
/// `2..n-1` by the hypotenuse of their triangle, in ascending chord order.
pub fn triangle_reductions(
    ap: &ArcPresentation,
    k2: &StickKnot,
    heights: &HeightAssignment,
) -> Result<(StickKnot, Vec<Reduction>)> {
    let n = ap.n();
    let mut knot = k2.clone();
    let mut trace = Vec::new();
    for i in 1..n.saturating_sub(1) {
        if heights.types[i] == ChordType::I {
            continue;
        }
        let tri = heights
            .constraint_for(i)
            .ok_or_else(|| verification(format!("no triangle recorded for chord {}", i + 1)))?;
        let pts = &heights.layout.points;
        let corner = pts[tri.apex - 1].at_height(heights.height(i));
        let far = pts[tri.far - 1].at_height(heights.height(i));
        let foot = pts[tri.apex - 1].at_height(heights.height(tri.anchor));
        let idx = index_of(&knot, &corner)
            .ok_or_else(|| verification(format!("corner of chord {} missing", i + 1)))?;
        let k = knot.len();
        let (p, nx) = (
            &knot.vertices[prev_index(k, idx)],
            &knot.vertices[(idx + 1) % k],
        );
        if !((p == &far && nx == &foot) || (p == &foot && nx == &far)) {
            return Err(verification(format!(
                "unexpected neighbours at chord {}",
                i + 1
            )));
        }
        if !remove_vertex(&mut knot, idx, EdgeRole::Hypotenuse, true) {
            return Err(verification(format!(
                "triangle of chord {} is pierced",
                i + 1
            )));
        }
        trace.push(Reduction {
            chord: i + 1,
            removed: corner,
            hypotenuse: (far, foot),
        });
    }
    Ok((knot, trace))
}

/// `anchor + (anchor - from) * (len / horizontal extent)`.
fn extend(from: &Point3, anchor: &Point3, len: &Rational) -> Option<Point3> {
    let d = anchor.sub(from);
    let h = if d.x.abs() >= d.y.abs() {
        d.x.abs()
    } else {
        d.y.abs()
    };
    if h.is_zero() {
        return None;
    }
    Some(anchor.add(&d.scale(&(len / h))))
}

struct TopPath {
    far_a: Point3,
    low_a: Point3,
    top_a: Point3,
    top_b: Point3,
    low_b: Point3,
    far_b: Point3,
}

fn top_path(knot: &StickKnot) -> Result<TopPath> {
    let k = knot.len();
    if k < 5 {
        return Err(verification("top reduction needs at least 5 sticks"));
    }
    let zmax = knot.vertices.iter().map(|v| &v.z).max().expect("nonempty");
    let tops: Vec<usize> = (0..k).filter(|&i| &knot.vertices[i].z == zmax).collect();
    if tops.len() != 2 {
        return Err(verification("top chord is not a single horizontal stick"));
    }
    let a = if (tops[0] + 1) % k == tops[1] {
        tops[0]
    } else {
        tops[1]
    };
    if (a + 1) % k != tops[0] && (a + 1) % k != tops[1] {
        return Err(verification("top vertices are not adjacent"));
    }
    let at = |i: usize| knot.vertices[i % k].clone();
    let path = TopPath {
        far_a: at(a + k - 2),
        low_a: at(a + k - 1),
        top_a: at(a),
        top_b: at(a + 1),
        low_b: at(a + 2),
        far_b: at(a + 3),
    };
    if path.low_a.xy() != path.top_a.xy() || path.low_b.xy() != path.top_b.xy() {
        return Err(verification("top chord is not joined by vertical sticks"));
    }
    Ok(path)
}

fn attempt(
    knot: &StickKnot,
    path: &TopPath,
    [len_a, len_b]: &[Rational; 2],
    diagonal: u8,
) -> Option<StickKnot> {
    let ti = extend(&path.far_a, &path.low_a, len_a)?;
    let tj = extend(&path.far_b, &path.low_b, len_b)?;
    let mut w = knot.clone();
    use EdgeRole::{Connector, Extension};

    let e = index_of(&w, &path.low_a)?;
    if !insert_vertex(&mut w, e, ti.clone(), (Extension, Connector)) {
        return None;
    }
    let e = index_of(&w, &path.top_b)?;
    if !insert_vertex(&mut w, e, tj.clone(), (Connector, Extension)) {
        return None;
    }
    let order = if diagonal == 0 {
        [&path.top_a, &path.top_b]
    } else {
        [&path.top_b, &path.top_a]
    };
    for v in order {
        let i = index_of(&w, v)?;
        if !remove_vertex(&mut w, i, Connector, true) {
            return None;
        }
    }
    // collinear corners left on the extended sticks
    let i = index_of(&w, &path.low_a)?;
    remove_vertex(&mut w, i, Extension, false);
    let i = index_of(&w, &path.low_b)?;
    remove_vertex(&mut w, i, Extension, false);
    w.embedded().ok()?.is_embedded().then_some(w)
}

/// Smallest extension exponent of the fallback search, `2^-6`.
const MIN_FALLBACK_EXPONENT: i32 = -6;

fn power_of_two(e: i32) -> Rational {
    let two = Rational::from_int(2);
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        num_traits::pow(two, (-e) as usize).recip()
    }
}

/// Candidate extension exponent pairs. First equal lengths `4, 8, ...` up to
/// `max_extension`, each followed by the pairs with one side shorter, so the
/// two extensions can stop short of each other when they converge outside
/// the cylinder. Then, as a fallback, pairs involving the fractional lengths
/// `2^-6 .. 2`, for extensions that converge right next to the cylinder.
fn extension_exponents(max_extension: u64) -> Vec<[i32; 2]> {
    let top = (2..63).take_while(|&e| 1u64 << e <= max_extension).last();
    let Some(top) = top else {
        return Vec::new();
    };
    let mut pairs = Vec::new();
    for long in 2..=top {
        pairs.push([long, long]);
        for short in (2..long).rev() {
            pairs.push([short, long]);
            pairs.push([long, short]);
        }
    }
    let mut fallback: Vec<[i32; 2]> = (MIN_FALLBACK_EXPONENT..=top)
        .flat_map(|a| (MIN_FALLBACK_EXPONENT..=top).map(move |b| [a, b]))
        .filter(|p| p[0] < 2 || p[1] < 2)
        .collect();
    fallback.sort_by_key(|&[a, b]| (a.max(b), a.min(b), a < b));
    pairs.extend(fallback);
    pairs
}

/// Swaps the five sticks around the top chord for two extended sticks and a
/// connector, searching extension lengths on each side as in
/// [`extension_exponents`]. On failure the polygon is returned unchanged with a skip
/// reason.
pub fn top_reduction(
    knot: &StickKnot,
    max_extension: u64,
) -> Result<(StickKnot, TopReductionStatus)> {
    let path = top_path(knot)?;
    for [a, b] in extension_exponents(max_extension) {
        let extensions = [power_of_two(a), power_of_two(b)];
        for diagonal in 0..2 {
            if let Some(w) = attempt(knot, &path, &extensions, diagonal) {
                return Ok((
                    w,
                    TopReductionStatus::Applied {
                        extensions,
                        diagonal,
                    },
                ));
            }
        }
    }
    Ok((
        knot.clone(),
        TopReductionStatus::Skipped(format!(
            "no certified connector with extension up to {max_extension}"
        )),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_search_order() {
        assert!(extension_exponents(3).is_empty());
        let p = extension_exponents(16);
        assert_eq!(
            &p[..9],
            &[
                [2, 2],
                [3, 3],
                [2, 3],
                [3, 2],
                [4, 4],
                [3, 4],
                [4, 3],
                [2, 4],
                [4, 2]
            ]
        );
        // fallback: every pair over -6..=4 not already tried, each once
        assert_eq!(p.len(), 11 * 11);
        assert_eq!(p[9], [-6, -6]);
        let mut sorted = p.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), p.len());
        assert_eq!(power_of_two(-3), Rational::new(1.into(), 8.into()));
        assert_eq!(power_of_two(4), Rational::from_int(16));
    }
}
