//! Closed-form stick-number and arc-index bounds in terms of the crossing
//! number `c` or the arc index `a`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;

use crate::error::{invalid, Result};
use crate::Rational;

fn require_crossings(c: u64) -> Result<()> {
    if c < 3 {
        return Err(invalid(format!(
            "a nontrivial knot has crossing number >= 3, got {c}"
        )));
    }
    Ok(())
}

/// Upper bound on the arc index: `c + 2`, or `c + 1` for non-alternating
/// prime knots.
pub fn bae_park_upper(c: u64, nonalternating_prime: bool) -> Result<u64> {
    require_crossings(c)?;
    Ok(if nonalternating_prime { c + 1 } else { c + 2 })
}

/// Stick-number upper bound `3(c+1)/2`, or `3c/2` for non-alternating prime
/// knots.
pub fn huh_oh_upper(c: u64, nonalternating_prime: bool) -> Result<Rational> {
    require_crossings(c)?;
    let num = if nonalternating_prime {
        3 * c
    } else {
        3 * (c + 1)
    };
    Ok(Rational::new(BigInt::from(num), BigInt::from(2)))
}

/// Stick-number upper bound `3(a-1)/2` from an arc presentation with `a`
/// chords.
pub fn theorem2_upper(a: u64) -> Result<Rational> {
    if a < 2 {
        return Err(invalid(format!("arc index must be >= 2, got {a}")));
    }
    Ok(Rational::new(BigInt::from(3 * (a - 1)), BigInt::from(2)))
}

/// `(offset + sqrt(radicand)) / 2`, kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSurd {
    pub offset: u64,
    pub radicand: u64,
}

impl HalfSurd {
    /// Smallest integer not below the value.
    pub fn ceil(&self) -> u64 {
        // smallest m with 2m - offset >= sqrt(radicand)
        let r = self.radicand;
        let mut s = r.sqrt();
        if s * s < r {
            s += 1;
        }
        (self.offset + s).div_ceil(2)
    }

    /// Decimal expansion truncated to `digits` places.
    pub fn decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10).pow(digits);
        let root = (BigInt::from(self.radicand) * &scale * &scale).sqrt();
        let scaled = (BigInt::from(self.offset) * &scale + root) / 2;
        let int = &scaled / &scale;
        let frac: BigInt = &scaled % &scale;
        format!(
            "{int}.{:0>width$}",
            frac.to_string(),
            width = digits as usize
        )
    }
}

impl fmt::Display for HalfSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+sqrt({}))/2", self.offset, self.radicand)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegamiBounds {
    pub lower: HalfSurd,
    pub upper: u64,
}

/// `(5 + sqrt(25 + 8(c-2)))/2 <= s(K) <= 2c`.
pub fn negami_bounds(c: u64) -> Result<NegamiBounds> {
    require_crossings(c)?;
    Ok(NegamiBounds {
        lower: HalfSurd {
            offset: 5,
            radicand: 25 + 8 * (c - 2),
        },
        upper: 2 * c,
    })
}

/// One row of the bounds table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub c: u64,
    pub a_upper: u64,
    pub negami_lower: HalfSurd,
    pub negami_upper: u64,
    pub huh_oh_upper: Rational,
}

pub fn bound_report(c: u64, nonalternating_prime: bool) -> Result<BoundReport> {
    let negami = negami_bounds(c)?;
    Ok(BoundReport {
        c,
        a_upper: bae_park_upper(c, nonalternating_prime)?,
        negami_lower: negami.lower,
        negami_upper: negami.upper,
        huh_oh_upper: huh_oh_upper(c, nonalternating_prime)?,
    })
}
