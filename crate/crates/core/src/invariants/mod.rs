//! Knot-type verification via the Alexander polynomial and determinant.
//!
//! Agreement of these invariants is a necessary condition for two diagrams
//! to represent the same knot, not a proof of equivalence; reports call a
//! match "consistent".

mod alexander;
mod poly;
mod project;

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use alexander::{alexander, alexander_matrix, bareiss_det, determinant};
pub use poly::LaurentPoly;
pub use project::{project, project_with, projection_direction, ProjectedDiagram, MAX_DIRECTION};

use crate::diagram::Diagram;
use crate::error::{verification, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotInvariants {
    pub alexander: LaurentPoly,
    pub determinant: BigInt,
}

impl KnotInvariants {
    /// Both invariants, cross-checking the integer determinant against the
    /// polynomial evaluated at -1.
    pub fn of(d: &Diagram) -> Result<Self> {
        let alexander = alexander(d)?;
        let determinant = determinant(d)?;
        let via_poly = alexander.eval(-1).expect("normalized polynomial");
        if via_poly.magnitude() != determinant.magnitude() {
            return Err(verification(format!(
                "determinant paths disagree: |Delta(-1)| = {via_poly}, elimination gives {determinant}"
            )));
        }
        Ok(KnotInvariants {
            alexander,
            determinant,
        })
    }

    pub fn determinant_u64(&self) -> Result<u64> {
        self.determinant.to_u64().ok_or_else(|| {
            verification(format!("determinant {} exceeds 64 bits", self.determinant))
        })
    }

    pub fn consistent_with(&self, other: &Self) -> bool {
        self.determinant == other.determinant && self.alexander.equivalent(&other.alexander)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchReport {
    pub matched: bool,
    pub first: KnotInvariants,
    pub second: KnotInvariants,
}

impl fmt::Display for MatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: det {} vs {}, Alexander {} vs {}",
            if self.matched {
                "consistent"
            } else {
                "inconsistent"
            },
            self.first.determinant,
            self.second.determinant,
            self.first.alexander,
            self.second.alexander
        )
    }
}

/// Compares two diagrams by determinant and normalized Alexander polynomial.
pub fn match_diagrams(d1: &Diagram, d2: &Diagram) -> Result<MatchReport> {
    let first = KnotInvariants::of(d1)?;
    let second = KnotInvariants::of(d2)?;
    Ok(MatchReport {
        matched: first.consistent_with(&second),
        first,
        second,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        // standard right-handed trefoil Gauss code O1 U2 O3 U1 O2 U3
        Diagram::from_gauss_code(
            &[
                (0, true),
                (1, false),
                (2, true),
                (0, false),
                (1, true),
                (2, false),
            ],
            &[1, 1, 1],
        )
        .unwrap()
    }

    fn figure_eight() -> Diagram {
        // O1 U2 O3 U4 O2 U1 O4 U3, writhe 0
        Diagram::from_gauss_code(
            &[
                (0, true),
                (1, false),
                (2, true),
                (3, false),
                (1, true),
                (0, false),
                (3, true),
                (2, false),
            ],
            &[-1, -1, 1, 1],
        )
        .unwrap()
    }

    #[test]
    fn unknot_invariants() {
        let d = Diagram::default();
        let inv = KnotInvariants::of(&d).unwrap();
        assert_eq!(inv.alexander, LaurentPoly::one());
        assert_eq!(inv.determinant, BigInt::from(1));
        let kink = Diagram::from_gauss_code(&[(0, true), (0, false)], &[1]).unwrap();
        assert_eq!(alexander(&kink).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn trefoil_invariants() {
        // hand expansion of the 2x2 minor: (1-t)^2 + t = t^2 - t + 1
        let inv = KnotInvariants::of(&trefoil()).unwrap();
        assert_eq!(inv.alexander, LaurentPoly::from_i64(0, &[1, -1, 1]));
        assert_eq!(inv.determinant, BigInt::from(3));
    }

    #[test]
    fn figure_eight_invariants() {
        let inv = KnotInvariants::of(&figure_eight()).unwrap();
        assert_eq!(inv.alexander, LaurentPoly::from_i64(0, &[1, -3, 1]));
        assert_eq!(inv.determinant, BigInt::from(5));
    }

    #[test]
    fn match_examples() {
        let t = trefoil();
        assert!(match_diagrams(&t, &t).unwrap().matched);
        let r = match_diagrams(&Diagram::default(), &t).unwrap();
        assert!(!r.matched);
        assert!(r.to_string().starts_with("inconsistent: det 1 vs 3"));
    }
}
