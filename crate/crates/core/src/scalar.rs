//! Scalar field abstraction shared by the geometric kernel.

use std::fmt::Debug;

use num_traits::{FromPrimitive, NumRef, Signed};

/// An ordered field the kernel can compute in.
///
/// Exactness of every predicate is only guaranteed for exact fields such as
/// [`crate::Rational`]; floating point instantiations compile and are handy
/// for previews but give no certificates.
pub trait Scalar: Clone + Debug + PartialOrd + Signed + NumRef + FromPrimitive {
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits the scalar type")
    }

    /// -1, 0 or +1.
    fn sign_of(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl<T> Scalar for T where T: Clone + Debug + PartialOrd + Signed + NumRef + FromPrimitive {}
