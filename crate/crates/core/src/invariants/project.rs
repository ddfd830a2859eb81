//! Generic parallel projection of a polygon to a planar diagram.

use crate::diagram::{Degeneracy, Diagram, Strand};
use crate::error::{invalid, verification, Result};
use crate::geom::Point2;
use crate::scalar::Scalar;
use crate::{Point3, Rational};

/// Highest index of the candidate direction sequence.
pub const MAX_DIRECTION: usize = 64;

#[derive(Clone, Debug)]
pub struct ProjectedDiagram {
    pub diagram: Diagram,
    /// Index `m` of the direction used.
    pub attempt: usize,
    pub direction: Point3,
    /// Genericity checks passed, in order.
    pub checks: Vec<&'static str>,
}

/// Candidate direction `m`: `(1/(7+m), 1/(11+2m), 1)`.
pub fn projection_direction(m: usize) -> Point3 {
    Point3::new(
        Rational::new(1.into(), (7 + m as i64).into()),
        Rational::new(1.into(), (11 + 2 * m as i64).into()),
        Rational::from_int(1),
    )
}

/// Drops vertices lying on the segment between their neighbours.
pub fn merge_collinear(vertices: &[Point3]) -> Vec<Point3> {
    let mut v = vertices.to_vec();
    loop {
        let k = v.len();
        if k <= 3 {
            return v;
        }
        let drop = (0..k).find(|&i| {
            let prev = &v[(i + k - 1) % k];
            let next = &v[(i + 1) % k];
            v[i].sub(prev).cross(&next.sub(&v[i])).is_origin()
                && v[i].sub(prev).dot(&next.sub(&v[i])) > Rational::from_int(0)
        });
        match drop {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

/// Projects along candidate direction `m`, reporting why it is not generic.
pub fn project_with(
    vertices: &[Point3],
    m: usize,
) -> std::result::Result<ProjectedDiagram, Degeneracy> {
    let d = projection_direction(m);
    let flat = |p: &Point3| {
        Point2::new(
            p.x.clone() - d.x.clone() * &p.z,
            p.y.clone() - d.y.clone() * &p.z,
        )
    };
    let k = vertices.len();
    let strands: Vec<Strand> = (0..k)
        .map(|i| {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % k]);
            Strand {
                label: i,
                start: flat(a),
                end: flat(b),
                z_start: a.z.clone(),
                z_end: b.z.clone(),
            }
        })
        .collect();
    let diagram = Diagram::from_strands(&strands)?;
    Ok(ProjectedDiagram {
        diagram,
        attempt: m,
        direction: d,
        checks: vec![
            "no edge parallel to the direction",
            "no collinear neighbouring edges",
            "no vertex on a non-incident edge",
            "no triple points",
            "crossings transversal with distinct depths",
        ],
    })
}

/// First generic projection among the candidate directions.
pub fn project(vertices: &[Point3]) -> Result<ProjectedDiagram> {
    let v = merge_collinear(vertices);
    if v.len() < 3 {
        return Err(invalid("polygon needs at least 3 vertices"));
    }
    let mut last = None;
    for m in 0..=MAX_DIRECTION {
        match project_with(&v, m) {
            Ok(p) => return Ok(p),
            Err(e) => last = Some(e),
        }
    }
    Err(verification(format!(
        "no generic projection among {} directions; last failure: {}",
        MAX_DIRECTION + 1,
        last.expect("at least one attempt")
    )))
}
