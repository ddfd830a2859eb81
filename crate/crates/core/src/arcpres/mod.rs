//! Arc presentations: `n` chords of a disk, stacked by index, with every
//! boundary point shared by exactly two chords.

mod random;
mod text;

use std::collections::HashSet;
use std::fmt;

pub use random::{random_batch, random_presentation};
pub use text::{parse, serialize};

use crate::diagram::{Diagram, Strand};
use crate::error::{invalid, verification, Result};
use crate::geom::{binding_points_perturbed, cross2};
use crate::scalar::Scalar;
use crate::{Point2, Rational};

/// Perturbation rounds tried before giving up on a generic chord layout.
const MAX_LAYOUT_RETRIES: usize = 1000;

/// A chord diagram. Chord `i` (0-based in `chords`, 1-based in prose) sits
/// at height `i + 1`; lower chords pass under higher ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcPresentation {
    pub chords: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChordType {
    /// Both neighbouring chords are higher.
    I,
    /// One neighbour higher, one lower.
    II,
    /// Both neighbouring chords are lower.
    III,
}

impl fmt::Display for ChordType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChordType::I => "I",
            ChordType::II => "II",
            ChordType::III => "III",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct BetaCounts {
    pub beta1: usize,
    pub beta2: usize,
    pub beta3: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewChords(usize),
    DegenerateChord { chord: usize },
    LabelOutOfRange { chord: usize, label: usize },
    LabelUse { label: usize, chords: usize },
    NotSingleCycle { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewChords(n) => write!(f, "need at least 2 chords, got {n}"),
            Violation::DegenerateChord { chord } => write!(f, "chord {chord} is degenerate"),
            Violation::LabelOutOfRange { chord, label } => {
                write!(f, "chord {chord} uses out-of-range label {label}")
            }
            Violation::LabelUse { label, chords } => {
                write!(f, "label {label} is used by {chords} chord(s), expected 2")
            }
            Violation::NotSingleCycle { components } => {
                write!(
                    f,
                    "chords form {components} components, expected a single cycle"
                )
            }
        }
    }
}

/// Binding points chosen for a presentation, free of triple points.
#[derive(Clone, Debug)]
pub struct ChordLayout {
    pub points: Vec<Point2>,
    /// Number of perturbation rounds needed.
    pub retries: usize,
}

/// One chord as traversed along the knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraversalStep {
    /// 0-based chord index.
    pub chord: usize,
    pub from: usize,
    pub to: usize,
}

impl ArcPresentation {
    pub fn new(chords: Vec<(usize, usize)>) -> Self {
        ArcPresentation { chords }
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        ArcPresentation::new(pairs.to_vec())
    }

    pub fn n(&self) -> usize {
        self.chords.len()
    }

    /// Every violated invariant, in a fixed order; empty means valid.
    pub fn violations(&self) -> Vec<Violation> {
        let n = self.n();
        let mut out = Vec::new();
        if n < 2 {
            out.push(Violation::TooFewChords(n));
        }
        for (i, &(a, b)) in self.chords.iter().enumerate() {
            if a == b {
                out.push(Violation::DegenerateChord { chord: i + 1 });
            }
            for label in [a, b] {
                if label == 0 || label > n {
                    out.push(Violation::LabelOutOfRange {
                        chord: i + 1,
                        label,
                    });
                }
            }
        }
        for label in 1..=n {
            let chords = self
                .chords
                .iter()
                .filter(|&&(a, b)| a == label || b == label)
                .count();
            if chords != 2 {
                out.push(Violation::LabelUse { label, chords });
            }
        }
        if out.is_empty() {
            let components = self.components();
            if components != 1 {
                out.push(Violation::NotSingleCycle { components });
            }
        }
        out
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        self.validate().map_err(|v| {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            invalid(msgs.join("; "))
        })
    }

    /// For each label, the two chords using it. Assumes label counts are valid.
    fn chords_at(&self) -> Vec<[usize; 2]> {
        let n = self.n();
        let mut at = vec![[usize::MAX; 2]; n + 1];
        for (i, &(a, b)) in self.chords.iter().enumerate() {
            for label in [a, b] {
                let slot = &mut at[label];
                if slot[0] == usize::MAX {
                    slot[0] = i;
                } else {
                    slot[1] = i;
                }
            }
        }
        at
    }

    fn components(&self) -> usize {
        let at = self.chords_at();
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            while let Some(c) = stack.pop() {
                if std::mem::replace(&mut seen[c], true) {
                    continue;
                }
                let (a, b) = self.chords[c];
                for label in [a, b] {
                    stack.extend(at[label].iter().copied().filter(|&o| !seen[o]));
                }
            }
        }
        count
    }

    /// Chords in knot order, starting with chord 1 traversed from its first
    /// listed point.
    pub fn traversal(&self) -> Result<Vec<TraversalStep>> {
        self.require_valid()?;
        let at = self.chords_at();
        let mut steps = Vec::with_capacity(self.n());
        let (mut chord, mut from) = (0, self.chords[0].0);
        loop {
            let (a, b) = self.chords[chord];
            let to = if a == from { b } else { a };
            steps.push(TraversalStep { chord, from, to });
            let [c0, c1] = at[to];
            chord = if c0 == chord { c1 } else { c0 };
            from = to;
            if chord == 0 {
                break;
            }
        }
        Ok(steps)
    }

    /// The two chords sharing the endpoints of chord `i` (0-based), in the
    /// order of the chord's listed endpoints.
    pub fn neighbours(&self, i: usize) -> [usize; 2] {
        let at = self.chords_at();
        let (a, b) = self.chords[i];
        let other = |label: usize| {
            let [c0, c1] = at[label];
            if c0 == i {
                c1
            } else {
                c0
            }
        };
        [other(a), other(b)]
    }

    /// Label shared by chords `i` and `j`, if any.
    pub fn shared_point(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = self.chords[i];
        let (c, d) = self.chords[j];
        [a, b].into_iter().find(|&x| x == c || x == d)
    }

    /// Pairs `(i, j)`, 1-based with `i < j`, of chords crossing in the disk.
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if chords_interleave(self.chords[i], self.chords[j]) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn classify(&self) -> Result<(Vec<ChordType>, BetaCounts)> {
        self.require_valid()?;
        if self.n() < 3 {
            return Err(invalid("classification needs at least 3 chords"));
        }
        let mut beta = BetaCounts::default();
        let types = (0..self.n())
            .map(|i| {
                let [a, b] = self.neighbours(i);
                match (a > i, b > i) {
                    (true, true) => {
                        beta.beta1 += 1;
                        ChordType::I
                    }
                    (false, false) => {
                        beta.beta3 += 1;
                        ChordType::III
                    }
                    _ => {
                        beta.beta2 += 1;
                        ChordType::II
                    }
                }
            })
            .collect();
        Ok((types, beta))
    }

    /// Rotates the stacking order so old chord `1 + k mod n` becomes chord 1.
    pub fn cyclic_shift(&self, k: i64) -> ArcPresentation {
        let n = self.n();
        if n == 0 {
            return self.clone();
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut chords = self.chords[k..].to_vec();
        chords.extend_from_slice(&self.chords[..k]);
        ArcPresentation { chords }
    }

    /// The cyclic shift with the fewest type-I chords, smallest shift first.
    pub fn normalize(&self) -> Result<(ArcPresentation, usize)> {
        self.require_valid()?;
        if self.n() < 3 {
            return Err(invalid("normalization needs at least 3 chords"));
        }
        let mut best: Option<(usize, usize)> = None;
        for k in 0..self.n() {
            let (_, beta) = self.cyclic_shift(k as i64).classify()?;
            if best.is_none_or(|(b, _)| beta.beta1 < b) {
                best = Some((beta.beta1, k));
            }
        }
        let (_, k) = best.expect("n >= 3");
        Ok((self.cyclic_shift(k as i64), k))
    }

    /// Merges the top chord with chord `n - 1` when the latter is type II,
    /// giving an `(n - 1)`-chord presentation of the same knot.
    pub fn destabilize_top(&self) -> Option<ArcPresentation> {
        let n = self.n();
        if n < 3 || !self.is_valid() {
            return None;
        }
        let (types, _) = self.classify().ok()?;
        if types[n - 2] != ChordType::II {
            return None;
        }
        let s = self.shared_point(n - 2, n - 1)?;
        let other = |(a, b): (usize, usize)| if a == s { b } else { a };
        let p = other(self.chords[n - 2]);
        let q = other(self.chords[n - 1]);
        if p == q {
            return None;
        }
        let relabel = |x: usize| if x > s { x - 1 } else { x };
        let mut chords: Vec<(usize, usize)> = self.chords[..n - 2]
            .iter()
            .map(|&(a, b)| (relabel(a), relabel(b)))
            .collect();
        chords.push((relabel(p), relabel(q)));
        Some(ArcPresentation { chords })
    }

    /// Applies [`Self::destabilize_top`] until it no longer applies.
    pub fn simplify(&self) -> (ArcPresentation, usize) {
        let mut cur = self.clone();
        let mut steps = 0;
        while let Some(next) = cur.destabilize_top() {
            cur = next;
            steps += 1;
        }
        (cur, steps)
    }

    /// Binding points with no three chords through one interior point.
    pub fn layout(&self) -> Result<ChordLayout> {
        self.require_valid()?;
        let pairs = self.crossing_pairs();
        for retries in 0..=MAX_LAYOUT_RETRIES {
            let points = binding_points_perturbed::<Rational>(self.n(), retries)?;
            let mut seen = HashSet::new();
            let generic = pairs.iter().all(|&(i, j)| {
                let (_, x) = chord_crossing(&points, self.chords[i - 1], self.chords[j - 1]);
                seen.insert(x)
            });
            if generic {
                return Ok(ChordLayout { points, retries });
            }
        }
        Err(verification(format!(
            "no generic chord layout after {MAX_LAYOUT_RETRIES} perturbations"
        )))
    }

    /// The knot diagram drawn by the chords, lower index passing under.
    pub fn diagram(&self) -> Result<Diagram> {
        self.require_valid()?;
        if self.n() == 2 {
            // two coincident chords: a flat circle
            return Ok(Diagram::default());
        }
        let layout = self.layout()?;
        self.diagram_with(&layout)
    }

    pub fn diagram_with(&self, layout: &ChordLayout) -> Result<Diagram> {
        let strands: Vec<Strand> = self
            .traversal()?
            .into_iter()
            .map(|s| {
                let z = Rational::from_int(s.chord as i64 + 1);
                Strand {
                    label: s.chord + 1,
                    start: layout.points[s.from - 1].clone(),
                    end: layout.points[s.to - 1].clone(),
                    z_start: z.clone(),
                    z_end: z,
                }
            })
            .collect();
        Diagram::from_strands(&strands)
            .map_err(|e| verification(format!("chord diagram not generic: {e}")))
    }
}

impl fmt::Display for ArcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .chords
            .iter()
            .map(|(a, b)| format!("{{{a},{b}}}"))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Whether two chords' endpoints alternate around the circle.
pub fn chords_interleave((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d)
}

/// Parameter along the first chord and the crossing point of two crossing
/// chords.
pub(crate) fn chord_crossing(
    points: &[Point2],
    (a, b): (usize, usize),
    (c, d): (usize, usize),
) -> (Rational, Point2) {
    let (p, q) = (&points[a - 1], &points[b - 1]);
    let (r, s) = (&points[c - 1], &points[d - 1]);
    let num = cross2(p, r, s);
    let den = num.clone() - cross2(q, r, s);
    let t = num / den;
    let x = p.lerp(q, &t);
    (t, x)
}
