//! Floating-point abstraction for the real-valued side of the library.
//!
//! Everything that handles measurements, probabilities, entropies, or
//! trajectories is generic over [`Scalar`] (`f32` or `f64`); the concrete
//! `f64` versions are re-exported as aliases at the crate root. The
//! combinatorial side (permutations, group tables, counts) stays integral.

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};
use std::ops::{AddAssign, SubAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + AddAssign + SubAssign + Debug + Display + Send + Sync + 'static
{
    /// Lossless-enough conversion of an exact event count.
    fn from_count(count: u64) -> Self {
        Self::from_u64(count).expect("u64 converts to any float")
    }

    /// Conversion from a literal used in defaults and tolerances.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 converts to any float")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
