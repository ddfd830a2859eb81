use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer Laurent polynomial `sum coeffs[i] * t^(low + i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    pub low: i64,
    pub coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        LaurentPoly::from_i64(0, &[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Span `high - low`, or `None` for the zero polynomial.
    pub fn degree_span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    /// Representative of the class under multiplication by units `±t^k`:
    /// lowest exponent 0 and positive constant term.
    pub fn normalized(&self) -> Self {
        let mut p = self.clone();
        p.trim();
        p.low = 0;
        if p.coeffs.first().is_some_and(|c| c.is_negative()) {
            for c in &mut p.coeffs {
                *c = -c.clone();
            }
        }
        p
    }

    /// `p(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly::new(-self.high(), coeffs)
    }

    /// Whether `p(t) = ±t^k p(1/t)` for some `k`.
    pub fn is_symmetric_up_to_units(&self) -> bool {
        self.normalized() == self.reversed().normalized()
    }

    /// Equality up to units and `t <-> 1/t`.
    pub fn equivalent(&self, other: &Self) -> bool {
        let a = self.normalized();
        a == other.normalized() || a == other.reversed().normalized()
    }

    /// Value at a nonzero integer point; negative exponents must divide out.
    pub fn eval(&self, t: i64) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        let t = BigInt::from(t);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &t + c;
        }
        if self.low >= 0 {
            Some(acc * t.pow(self.low as u32))
        } else {
            let d = t.pow((-self.low) as u32);
            if d.is_zero() || !(&acc % &d).is_zero() {
                return None;
            }
            Some(acc / d)
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_display() {
        let p = LaurentPoly::from_i64(-3, &[0, -1, 1, -1, 0]);
        let n = p.normalized();
        assert_eq!(n, LaurentPoly::from_i64(0, &[1, -1, 1]));
        assert_eq!(n.to_string(), "t^2 - t + 1");
        assert_eq!(
            LaurentPoly::from_i64(-1, &[-1, 3, -1]).to_string(),
            "-t + 3 - t^-1"
        );
        assert!(p.is_symmetric_up_to_units());
        assert!(!LaurentPoly::from_i64(0, &[1, 2]).is_symmetric_up_to_units());
        assert!(LaurentPoly::from_i64(0, &[1, 2]).equivalent(&LaurentPoly::from_i64(5, &[-2, -1])));
        assert_eq!(
            LaurentPoly::from_i64(0, &[0, 0]),
            LaurentPoly::from_i64(3, &[])
        );
    }

    #[test]
    fn evaluation() {
        let p = LaurentPoly::from_i64(0, &[1, -1, 1]);
        assert_eq!(p.eval(-1), Some(BigInt::from(3)));
        assert_eq!(p.eval(1), Some(BigInt::from(1)));
        let q = LaurentPoly::from_i64(-1, &[-1, 3, -1]);
        assert_eq!(q.eval(-1), Some(BigInt::from(5)));
        assert_eq!(q.eval(2), None);
    }
}
