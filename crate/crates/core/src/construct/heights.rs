//! Heights of the lifted horizontal sticks.
//!
//! Chord `i` of type II or III is lifted high enough that the vertical
//! triangle spanned by its horizontal stick and the vertical stick down to
//! its anchor chord `j` is missed by every lower chord. At a lower chord `k`
//! crossing chord `i` at fraction `t` from the apex, the triangle's lower
//! edge sits at `z_j + t (z_i - z_j)`, which must exceed `z_k`.

use num_bigint::BigInt;
use num_integer::Integer;

use super::super::arcpres::{chord_crossing, ArcPresentation, ChordLayout, ChordType};
use crate::error::{invalid, verification, Result};
use crate::Rational;

/// Emptiness constraints of one reducible triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleConstraint {
    /// 0-based chord index.
    pub chord: usize,
    /// Lower neighbour joined by the vertical edge of the triangle.
    pub anchor: usize,
    /// Binding point shared with the anchor.
    pub apex: usize,
    /// The chord's other binding point.
    pub far: usize,
    /// Lower chords crossing this one, with the crossing's fraction of the
    /// way from `apex` to `far`.
    pub crossings: Vec<(usize, Rational)>,
}

#[derive(Clone, Debug)]
pub struct HeightAssignment {
    /// Height of chord `i` (0-based); strictly increasing, starting 1, 2.
    pub z: Vec<BigInt>,
    pub constraints: Vec<TriangleConstraint>,
    pub types: Vec<ChordType>,
    pub layout: ChordLayout,
}

impl HeightAssignment {
    /// Plain stacking `z_i = i`, as in the cylinder polygon.
    pub fn identity(ap: &ArcPresentation, layout: ChordLayout) -> Result<Self> {
        let types = if ap.n() >= 3 {
            ap.classify()?.0
        } else {
            Vec::new()
        };
        Ok(HeightAssignment {
            z: (1..=ap.n()).map(BigInt::from).collect(),
            constraints: Vec::new(),
            types,
            layout,
        })
    }

    pub fn height(&self, chord: usize) -> Rational {
        Rational::from_integer(self.z[chord].clone())
    }

    pub fn constraint_for(&self, chord: usize) -> Option<&TriangleConstraint> {
        self.constraints.iter().find(|c| c.chord == chord)
    }

    /// Re-checks monotonicity and every triangle inequality exactly.
    pub fn check(&self) -> Result<()> {
        let one = BigInt::from(1);
        if self.z.first() != Some(&one) || self.z.get(1) != Some(&BigInt::from(2)) {
            return Err(verification("heights must start 1, 2"));
        }
        if self.z.windows(2).any(|w| w[0] >= w[1]) {
            return Err(verification("heights are not strictly increasing"));
        }
        for c in &self.constraints {
            let zi = self.height(c.chord);
            let zj = self.height(c.anchor);
            for (k, t) in &c.crossings {
                let lower_edge = zj.clone() + t * (zi.clone() - &zj);
                if lower_edge <= self.height(*k) {
                    return Err(verification(format!(
                        "chord {} crosses the triangle of chord {}",
                        k + 1,
                        c.chord + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Triangle data for chord `i` given its type, or `None` for type I.
fn triangle_for(
    ap: &ArcPresentation,
    layout: &ChordLayout,
    i: usize,
    ty: ChordType,
) -> Option<TriangleConstraint> {
    let [a, b] = ap.neighbours(i);
    let anchor = match ty {
        ChordType::I => return None,
        ChordType::II => a.min(b),
        ChordType::III => a.max(b),
    };
    let apex = ap
        .shared_point(i, anchor)
        .expect("neighbours share a point");
    let (p, q) = ap.chords[i];
    let far = if p == apex { q } else { p };
    let crossings = (0..i)
        .filter(|&k| super::super::arcpres::chords_interleave(ap.chords[k], ap.chords[i]))
        .map(|k| {
            let (t, _) = chord_crossing(&layout.points, (apex, far), ap.chords[k]);
            (k, t)
        })
        .collect();
    Some(TriangleConstraint {
        chord: i,
        anchor,
        apex,
        far,
        crossings,
    })
}

/// Smallest integer heights making every type II/III triangle reducible.
pub fn assign_heights(ap: &ArcPresentation) -> Result<HeightAssignment> {
    ap.require_valid()?;
    let n = ap.n();
    if n < 3 {
        return Err(invalid("height assignment needs at least 3 chords"));
    }
    let layout = ap.layout()?;
    let (types, _) = ap.classify()?;
    let mut z: Vec<BigInt> = vec![BigInt::from(1), BigInt::from(2)];
    let mut constraints = Vec::new();
    for i in 1..n {
        let tri = triangle_for(ap, &layout, i, types[i]);
        if i >= 2 {
            let mut zi = &z[i - 1] + 1;
            if let Some(tri) = &tri {
                let zj = Rational::from_integer(z[tri.anchor].clone());
                for (k, t) in &tri.crossings {
                    let zk = Rational::from_integer(z[*k].clone());
                    if zk > zj {
                        let needed = zj.clone() + (zk - &zj) / t;
                        let candidate = needed.numer().div_floor(needed.denom()) + 1;
                        if candidate > zi {
                            zi = candidate;
                        }
                    }
                }
            }
            z.push(zi);
        }
        constraints.extend(tri);
    }
    let h = HeightAssignment {
        z,
        constraints,
        types,
        layout,
    };
    h.check()?;
    Ok(h)
}
