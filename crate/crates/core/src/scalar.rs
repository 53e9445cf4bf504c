//! Coefficient abstraction for the series and Lie algebra layers.
//!
//! The engine only needs a commutative ring with exact division by nonzero
//! integers (every formula divides by factorials or loop indices, never by a
//! series). `BigRational` is the intended instantiation; `f32`/`f64` also
//! satisfy the bounds and are usable for quick numeric experiments, with the
//! caveat that floating point breaks the "no stored zeros" normalization
//! guarantees that the exact tests rely on.

use num_traits::{FromPrimitive, NumOps, One, Zero};

/// Scalars the engine can compute over.
///
/// `from_i64` must succeed for every argument the engine produces (factorials
/// and word lengths up to the truncation order, lattice pairings); for exact
/// types division by such integers must be exact.
pub trait Scalar:
    Clone + PartialEq + Zero + One + std::ops::Neg<Output = Self> + NumOps + FromPrimitive
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer does not embed into scalar type")
    }

    /// Exact `n/d` for integer constants such as Bernoulli-style BCH weights.
    fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_int(n) / Self::from_int(d)
    }
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Zero + One + std::ops::Neg<Output = T> + NumOps + FromPrimitive
{
}
