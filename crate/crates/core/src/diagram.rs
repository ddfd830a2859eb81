//! Planar knot diagrams: crossings with over/under and sign, the Gauss
//! sequence, and the over-arc decomposition.

use std::collections::HashSet;

use crate::error::{invalid, Result};
use crate::geom::{cross2, orient2d, Point2};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Label of the strand passing over.
    pub over: usize,
    /// Label of the strand passing under.
    pub under: usize,
    /// +1 or -1.
    pub sign: i8,
    pub point: Point2<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
}

/// Maximal over-arc: runs from the under-visit at gauss position `start` to
/// the next under-visit at position `end` (cyclically).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub start: usize,
    pub end: usize,
}

/// Arc incidence at a crossing, as used by the Wirtinger relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingArcs {
    pub over: usize,
    pub incoming: usize,
    pub outgoing: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    pub gauss: Vec<Visit>,
    pub arcs: Vec<Arc>,
}

/// One straight piece of a closed curve, with heights at its endpoints used
/// to decide over/under. Consecutive strands must share endpoints.
#[derive(Clone, Debug)]
pub struct Strand {
    pub label: usize,
    pub start: Point2<Rational>,
    pub end: Point2<Rational>,
    pub z_start: Rational,
    pub z_end: Rational,
}

impl Strand {
    fn depth_at(&self, s: &Rational) -> Rational {
        self.z_start.clone() + (self.z_end.clone() - &self.z_start) * s
    }
}

/// Reason a projected curve is not in general position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    DegenerateStrand(usize),
    CollinearNeighbours(usize),
    VertexOnStrand { vertex_of: usize, strand: usize },
    TriplePoint,
    EqualDepth { first: usize, second: usize },
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degeneracy::DegenerateStrand(i) => write!(f, "strand {i} projects to a point"),
            Degeneracy::CollinearNeighbours(i) => {
                write!(f, "strands {i} and its successor project collinearly")
            }
            Degeneracy::VertexOnStrand { vertex_of, strand } => write!(
                f,
                "an endpoint of strand {vertex_of} projects onto strand {strand}"
            ),
            Degeneracy::TriplePoint => write!(f, "three strands cross at one point"),
            Degeneracy::EqualDepth { first, second } => {
                write!(f, "strands {first} and {second} meet in space")
            }
        }
    }
}

fn in_box(a: &Point2<Rational>, b: &Point2<Rational>, p: &Point2<Rational>) -> bool {
    let within = |lo: &Rational, hi: &Rational, v: &Rational| {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        lo <= v && v <= hi
    };
    within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

impl Diagram {
    /// Builds the diagram of the closed curve formed by `strands` in order.
    pub fn from_strands(strands: &[Strand]) -> std::result::Result<Diagram, Degeneracy> {
        let k = strands.len();
        for (i, s) in strands.iter().enumerate() {
            if s.start == s.end {
                return Err(Degeneracy::DegenerateStrand(i));
            }
        }
        if k >= 3 {
            for i in 0..k {
                let cur = &strands[i];
                let next = &strands[(i + 1) % k];
                if orient2d(&cur.start, &cur.end, &next.end) == 0 {
                    return Err(Degeneracy::CollinearNeighbours(i));
                }
            }
        }

        // (strand, parameter along strand, crossing id, over?)
        let mut hits: Vec<(usize, Rational, usize, bool)> = Vec::new();
        let mut crossings = Vec::new();
        let mut seen = HashSet::new();
        for i in 0..k {
            for j in i + 1..k {
                if k >= 3 && (j == i + 1 || (i == 0 && j == k - 1)) {
                    continue;
                }
                let (si, sj) = (&strands[i], &strands[j]);
                let o1 = orient2d(&si.start, &si.end, &sj.start);
                let o2 = orient2d(&si.start, &si.end, &sj.end);
                let o3 = orient2d(&sj.start, &sj.end, &si.start);
                let o4 = orient2d(&sj.start, &sj.end, &si.end);
                let touches = [
                    (o1, &si.start, &si.end, &sj.start, j, i),
                    (o2, &si.start, &si.end, &sj.end, j, i),
                    (o3, &sj.start, &sj.end, &si.start, i, j),
                    (o4, &sj.start, &sj.end, &si.end, i, j),
                ];
                for (o, a, b, p, vertex_of, strand) in touches {
                    if o == 0 && in_box(a, b, p) {
                        return Err(Degeneracy::VertexOnStrand { vertex_of, strand });
                    }
                }
                if o1 == o2 || o3 == o4 {
                    continue;
                }
                let di = Point2::new(
                    si.end.x.clone() - &si.start.x,
                    si.end.y.clone() - &si.start.y,
                );
                let dj = Point2::new(
                    sj.end.x.clone() - &sj.start.x,
                    sj.end.y.clone() - &sj.start.y,
                );
                let zero = Point2::from_ints(0, 0);
                let denom = cross2(&zero, &di, &dj);
                let w = Point2::new(
                    sj.start.x.clone() - &si.start.x,
                    sj.start.y.clone() - &si.start.y,
                );
                let ti = cross2(&zero, &w, &dj) / &denom;
                let tj = cross2(&zero, &w, &di) / &denom;
                let point = si.start.lerp(&si.end, &ti);
                if !seen.insert(point.clone()) {
                    return Err(Degeneracy::TriplePoint);
                }
                let zi = si.depth_at(&ti);
                let zj = sj.depth_at(&tj);
                if zi == zj {
                    return Err(Degeneracy::EqualDepth {
                        first: i,
                        second: j,
                    });
                }
                let i_over = zi > zj;
                let (over_dir, under_dir) = if i_over { (&di, &dj) } else { (&dj, &di) };
                let sign = orient2d(&zero, over_dir, under_dir) as i8;
                let id = crossings.len();
                crossings.push(Crossing {
                    over: if i_over { si.label } else { sj.label },
                    under: if i_over { sj.label } else { si.label },
                    sign,
                    point,
                });
                hits.push((i, ti, id, i_over));
                hits.push((j, tj, id, !i_over));
            }
        }
        hits.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let gauss = hits
            .into_iter()
            .map(|(_, _, crossing, over)| Visit { crossing, over })
            .collect();
        let mut d = Diagram {
            crossings,
            gauss,
            arcs: Vec::new(),
        };
        d.arcs = d.compute_arcs();
        Ok(d)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn compute_arcs(&self) -> Vec<Arc> {
        let unders: Vec<usize> = (0..self.gauss.len())
            .filter(|&p| !self.gauss[p].over)
            .collect();
        (0..unders.len())
            .map(|r| Arc {
                start: unders[r],
                end: unders[(r + 1) % unders.len()],
            })
            .collect()
    }

    /// Checks the Gauss sequence describes one closed strand with every
    /// crossing visited once over and once under.
    pub fn check_gauss(&self) -> Result<()> {
        let c = self.crossings.len();
        if self.gauss.len() != 2 * c {
            return Err(invalid(format!(
                "gauss sequence has {} visits for {c} crossings",
                self.gauss.len()
            )));
        }
        let mut over = vec![0usize; c];
        let mut under = vec![0usize; c];
        for v in &self.gauss {
            if v.crossing >= c {
                return Err(invalid(format!("visit to unknown crossing {}", v.crossing)));
            }
            if v.over {
                over[v.crossing] += 1;
            } else {
                under[v.crossing] += 1;
            }
        }
        if over.iter().chain(&under).any(|&m| m != 1) {
            return Err(invalid(
                "gauss sequence does not describe a single-component knot diagram",
            ));
        }
        Ok(())
    }

    /// Over, incoming-under and outgoing-under arc of every crossing.
    pub fn crossing_arcs(&self) -> Result<Vec<CrossingArcs>> {
        self.check_gauss()?;
        let c = self.crossings.len();
        let len = self.gauss.len();
        let mut arc_at = vec![0usize; len];
        // Positions before the first under-visit belong to the last arc.
        let mut current = c.wrapping_sub(1);
        for (p, v) in self.gauss.iter().enumerate() {
            if !v.over {
                current = current.wrapping_add(1) % c;
            }
            arc_at[p] = current;
        }
        let mut out = vec![
            CrossingArcs {
                over: 0,
                incoming: 0,
                outgoing: 0,
                sign: 1
            };
            c
        ];
        for (p, v) in self.gauss.iter().enumerate() {
            let entry = &mut out[v.crossing];
            if v.over {
                entry.over = arc_at[p];
            } else {
                entry.outgoing = arc_at[p];
                entry.incoming = arc_at[(p + len - 1) % len];
            }
            entry.sign = self.crossings[v.crossing].sign;
        }
        Ok(out)
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    /// Builds a diagram directly from a signed Gauss code, as used by
    /// hand-written test fixtures. Each entry is `(crossing, over)`; `signs`
    /// gives the sign of every crossing.
    pub fn from_gauss_code(code: &[(usize, bool)], signs: &[i8]) -> Result<Diagram> {
        let crossings = signs
            .iter()
            .map(|&sign| {
                if sign != 1 && sign != -1 {
                    return Err(invalid(format!(
                        "crossing sign must be +1 or -1, got {sign}"
                    )));
                }
                Ok(Crossing {
                    over: 0,
                    under: 0,
                    sign,
                    point: Point2::new(Rational::from_int(0), Rational::from_int(0)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut d = Diagram {
            crossings,
            gauss: code
                .iter()
                .map(|&(crossing, over)| Visit { crossing, over })
                .collect(),
            arcs: Vec::new(),
        };
        d.check_gauss()?;
        d.arcs = d.compute_arcs();
        Ok(d)
    }
}
