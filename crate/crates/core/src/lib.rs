//! Exact symbolic engine for wall-crossing computations in rank-2 lattices.
//!
//! The crate has three layers:
//!
//! * [`series`] — sparse multivariate formal power series truncated by total
//!   degree in the deformation parameters, with Laurent-monomial exponents in
//!   a fixed lattice. All coefficient arithmetic is exact.
//! * [`lie`] — the Lie algebra of monomial-weighted derivations acting on the
//!   series ring, its exponential group of automorphisms, and a truncated
//!   Baker-Campbell-Hausdorff product. Group elements are stored by their
//!   logarithm only.
//! * [`scattering`] — walls (rays and lines through the origin carrying
//!   automorphisms), path-ordered products around loops, and order-by-order
//!   completion of a two-wall diagram to a monodromy-free one.
//!
//! Two further modules are independent of the lattice machinery:
//!
//! * [`trees`] — planar binary tree enumeration, edge labeling, and a generic
//!   tree evaluator used by the Maurer-Cartan tree-sum solver.
//! * [`mc`] — Maurer-Cartan solvers (fixed point and tree sum) over a dg Lie
//!   algebra with a homotopy contraction, plus a concrete polynomial-form
//!   instance for testing.
//!
//! Everything is generic over the coefficient scalar (see [`scalar::Scalar`]);
//! the intended instantiation is arbitrary-precision rationals, aliased below.

pub mod io;
pub mod lie;
pub mod mc;
pub mod polyform;
pub mod scalar;
pub mod scattering;
pub mod series;
pub mod trees;

pub use scalar::Scalar;

/// Exact rational coefficients, the default scalar for all engine math.
pub type Rat = num::BigRational;

/// Truncated series over exact rationals.
pub type QSeries = series::Series<Rat>;
/// Lie algebra elements over exact rationals.
pub type QLieElement = lie::LieElement<Rat>;
/// A single wall over exact rationals.
pub type QWall = scattering::Wall<Rat>;
/// A scattering diagram over exact rationals.
pub type QDiagram = scattering::Diagram<Rat>;

/// Convenience constructor for exact rationals in tests and examples.
pub fn rat(num: i64, den: i64) -> Rat {
    num::BigRational::new(num.into(), den.into())
}
