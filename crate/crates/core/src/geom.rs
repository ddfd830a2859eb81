//! Exact 2D/3D geometric kernel.
//!
//! Every routine here is generic over [`Scalar`]; with [`crate::Rational`]
//! all predicates are exact and no tolerance parameter exists anywhere.

use std::fmt;

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(T::from_int(x), T::from_int(y))
    }

    /// Lift to 3-space at height `z`.
    pub fn at_height(&self, z: T) -> Point3<T> {
        Point3::new(self.x.clone(), self.y.clone(), z)
    }

    pub fn lerp(&self, other: &Self, t: &T) -> Self {
        Point2::new(
            self.x.clone() + (other.x.clone() - &self.x) * t,
            self.y.clone() + (other.y.clone() - &self.y) * t,
        )
    }
}

impl<T: Scalar> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(T::from_int(x), T::from_int(y), T::from_int(z))
    }

    /// The projection `(x, y, z) -> (x, y)`.
    pub fn xy(&self) -> Point2<T> {
        Point2::new(self.x.clone(), self.y.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point3::new(
            self.x.clone() - &o.x,
            self.y.clone() - &o.y,
            self.z.clone() - &o.z,
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Point3::new(
            self.x.clone() + &o.x,
            self.y.clone() + &o.y,
            self.z.clone() + &o.z,
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Point3::new(self.x.clone() * s, self.y.clone() * s, self.z.clone() * s)
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * &o.x + self.y.clone() * &o.y + self.z.clone() * &o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        Point3::new(
            self.y.clone() * &o.z - self.z.clone() * &o.y,
            self.z.clone() * &o.x - self.x.clone() * &o.z,
            self.x.clone() * &o.y - self.y.clone() * &o.x,
        )
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Self, t: &T) -> Self {
        self.add(&other.sub(self).scale(t))
    }
}

impl<T: fmt::Display> fmt::Display for Point3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment3<T> {
    pub a: Point3<T>,
    pub b: Point3<T>,
}

impl<T: Scalar> Segment3<T> {
    pub fn new(a: Point3<T>, b: Point3<T>) -> Result<Self> {
        if a == b {
            return Err(invalid("segment endpoints coincide"));
        }
        Ok(Segment3 { a, b })
    }

    pub fn has_endpoint(&self, p: &Point3<T>) -> bool {
        &self.a == p || &self.b == p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle3<T> {
    pub a: Point3<T>,
    pub b: Point3<T>,
    pub c: Point3<T>,
}

impl<T: Scalar> Triangle3<T> {
    pub fn new(a: Point3<T>, b: Point3<T>, c: Point3<T>) -> Self {
        Triangle3 { a, b, c }
    }

    pub fn normal(&self) -> Point3<T> {
        self.b.sub(&self.a).cross(&self.c.sub(&self.a))
    }

    pub fn is_degenerate(&self) -> bool {
        self.normal().is_origin()
    }

    pub fn vertices(&self) -> [&Point3<T>; 3] {
        [&self.a, &self.b, &self.c]
    }
}

/// Parameter of the binding point `k` (1-based) before any perturbation.
fn base_parameter<T: Scalar>(n: usize, k: usize) -> T {
    T::from_int(2 * k as i64 - n as i64 - 1) / T::from_int(2)
}

/// Rational point of the unit circle with tan-half-angle parameter `t`.
pub fn circle_point<T: Scalar>(t: &T) -> Point2<T> {
    let t2 = t.clone() * t;
    let denom = T::one() + &t2;
    Point2::new((T::one() - &t2) / &denom, T::from_int(2) * t / &denom)
}

/// `n` rational points on the unit circle in strictly increasing angle.
pub fn binding_points<T: Scalar>(n: usize) -> Result<Vec<Point2<T>>> {
    binding_points_perturbed(n, 0)
}

/// Binding points after `retries` rounds of the genericity perturbation.
///
/// Round `m` adds `k^2 / (100 + m)` to the parameter of point `k`. The offset
/// must be non-affine in `k`: an affine change of all parameters is a Moebius
/// map of the circle, which maps concurrent chords to concurrent chords.
pub fn binding_points_perturbed<T: Scalar>(n: usize, retries: usize) -> Result<Vec<Point2<T>>> {
    if n < 2 {
        return Err(invalid(format!("need at least 2 binding points, got {n}")));
    }
    Ok((1..=n)
        .map(|k| {
            let mut t = base_parameter::<T>(n, k);
            let k2 = T::from_int((k * k) as i64);
            for m in 0..retries {
                t = t + k2.clone() / T::from_int(100 + m as i64);
            }
            circle_point(&t)
        })
        .collect())
}

/// Sign of `det(b - a, c - a)`: +1 counterclockwise, 0 collinear, -1 clockwise.
pub fn orient2d<T: Scalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> i32 {
    cross2(a, b, c).sign_of()
}

pub(crate) fn cross2<T: Scalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> T {
    (b.x.clone() - &a.x) * (c.y.clone() - &a.y) - (b.y.clone() - &a.y) * (c.x.clone() - &a.x)
}

/// Intersection set of two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet<T> {
    Empty,
    Point(Point3<T>),
    Overlap(Point3<T>, Point3<T>),
}

pub fn segment_meet<T: Scalar>(s1: &Segment3<T>, s2: &Segment3<T>) -> Meet<T> {
    let (p, q, r, s) = (&s1.a, &s1.b, &s2.a, &s2.b);
    let u = q.sub(p);
    let v = s.sub(r);
    let w = r.sub(p);
    let n = u.cross(&v);
    if !n.is_origin() {
        if !n.dot(&w).is_zero() {
            return Meet::Empty;
        }
        let nn = n.dot(&n);
        let t = w.cross(&v).dot(&n) / &nn;
        let t2 = w.cross(&u).dot(&n) / &nn;
        let unit = T::zero()..=T::one();
        if unit.contains(&t) && unit.contains(&t2) {
            Meet::Point(p.lerp(q, &t))
        } else {
            Meet::Empty
        }
    } else {
        if !w.cross(&u).is_origin() {
            return Meet::Empty;
        }
        let uu = u.dot(&u);
        let tr = w.dot(&u) / &uu;
        let ts = s.sub(p).dot(&u) / &uu;
        let (mut lo, mut hi) = if tr <= ts { (tr, ts) } else { (ts, tr) };
        if lo < T::zero() {
            lo = T::zero();
        }
        if hi > T::one() {
            hi = T::one();
        }
        if lo > hi {
            Meet::Empty
        } else if lo == hi {
            Meet::Point(p.lerp(q, &lo))
        } else {
            Meet::Overlap(p.lerp(q, &lo), p.lerp(q, &hi))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegRelation {
    Disjoint,
    /// The segments meet in exactly one point, an endpoint of both.
    SharedEndpoint,
    /// Any other contact: crossing, overlap, T-contact.
    Improper,
}

pub fn seg3_relation<T: Scalar>(s1: &Segment3<T>, s2: &Segment3<T>) -> SegRelation {
    match segment_meet(s1, s2) {
        Meet::Empty => SegRelation::Disjoint,
        Meet::Point(x) if s1.has_endpoint(&x) && s2.has_endpoint(&x) => SegRelation::SharedEndpoint,
        _ => SegRelation::Improper,
    }
}

/// Parameter interval `[lo, hi]` along `s` of its intersection with the
/// closed triangle, or `None` when they miss.
pub fn triangle_segment_interval<T: Scalar>(
    tri: &Triangle3<T>,
    s: &Segment3<T>,
) -> Result<Option<(T, T)>> {
    let n = tri.normal();
    if n.is_origin() {
        return Err(invalid("degenerate triangle"));
    }
    let d0 = n.dot(&s.a.sub(&tri.a));
    let d1 = n.dot(&s.b.sub(&tri.a));
    let edges = [(&tri.a, &tri.b), (&tri.b, &tri.c), (&tri.c, &tri.a)];
    // Signed side of `p` against edge (e0, e1), positive inside.
    let side = |e0: &Point3<T>, e1: &Point3<T>, p: &Point3<T>| -> T {
        e1.sub(e0).cross(&p.sub(e0)).dot(&n)
    };

    if !(d0.is_zero() && d1.is_zero()) {
        if d0.sign_of() * d1.sign_of() > 0 {
            return Ok(None);
        }
        let t = d0.clone() / (d0 - d1);
        let x = s.a.lerp(&s.b, &t);
        let inside = edges.iter().all(|(e0, e1)| !side(e0, e1, &x).is_negative());
        return Ok(inside.then(|| (t.clone(), t)));
    }

    let (mut lo, mut hi) = (T::zero(), T::one());
    for (e0, e1) in edges {
        let f0 = side(e0, e1, &s.a);
        let f1 = side(e0, e1, &s.b);
        match (f0.is_negative(), f1.is_negative()) {
            (true, true) => return Ok(None),
            (false, false) => {}
            (true, false) => {
                let t = f0.clone() / (f0 - f1);
                if t > lo {
                    lo = t;
                }
            }
            (false, true) => {
                let t = f0.clone() / (f0 - f1);
                if t < hi {
                    hi = t;
                }
            }
        }
    }
    Ok((lo <= hi).then_some((lo, hi)))
}

/// Whether `s` touches the closed triangle anywhere outside `ignore`.
pub fn triangle_pierced<T: Scalar>(
    tri: &Triangle3<T>,
    s: &Segment3<T>,
    ignore: &[Point3<T>],
) -> Result<bool> {
    Ok(match triangle_segment_interval(tri, s)? {
        None => false,
        Some((lo, hi)) if lo == hi => {
            let x = s.a.lerp(&s.b, &lo);
            !ignore.contains(&x)
        }
        Some(_) => true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embeddedness {
    Embedded,
    /// Offending edge pair, 0-based; edge `i` joins vertex `i` and `i + 1`.
    SelfIntersecting {
        first: usize,
        second: usize,
    },
}

impl Embeddedness {
    pub fn is_embedded(&self) -> bool {
        matches!(self, Embeddedness::Embedded)
    }
}

impl fmt::Display for Embeddedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Embeddedness::Embedded => write!(f, "ok"),
            Embeddedness::SelfIntersecting { first, second } => {
                write!(f, "edges {} and {} intersect", first + 1, second + 1)
            }
        }
    }
}

pub fn polygon_edges<T: Scalar>(vertices: &[Point3<T>]) -> Vec<Segment3<T>> {
    let k = vertices.len();
    (0..k)
        .map(|i| Segment3 {
            a: vertices[i].clone(),
            b: vertices[(i + 1) % k].clone(),
        })
        .collect()
}

/// Checks that the closed polygon through `vertices` is a simple closed curve.
pub fn polygon_embedded<T: Scalar>(vertices: &[Point3<T>]) -> Result<Embeddedness> {
    let k = vertices.len();
    if k < 3 {
        return Err(invalid(format!(
            "polygon needs at least 3 vertices, got {k}"
        )));
    }
    for i in 0..k {
        if vertices[i] == vertices[(i + 1) % k] {
            return Err(invalid(format!("repeated consecutive vertex at index {i}")));
        }
    }
    let edges = polygon_edges(vertices);
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            let rel = seg3_relation(&edges[i], &edges[j]);
            let ok = if consecutive {
                rel == SegRelation::SharedEndpoint
            } else {
                rel == SegRelation::Disjoint
            };
            if !ok {
                return Ok(Embeddedness::SelfIntersecting {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(Embeddedness::Embedded)
}
