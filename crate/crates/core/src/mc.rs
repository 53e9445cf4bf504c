//! Maurer-Cartan solvers over an abstract differential graded Lie algebra
//! carrying a homotopy contraction.
//!
//! The contract is the quintuple (d, [.,.], H, P, i) with d^2 = 0, graded
//! Jacobi, and the homotopy identity dH + Hd = I - iP, together with an
//! order filtration by powers of a formal parameter.  Given a degree-1 input
//! Pi of positive order, the equation Phi = Pi - 1/2 H[Phi, Phi] has a unique
//! solution mod any finite order, computable two ways: by iterating the fixed
//! point, or by summing planar binary trees with brackets at the vertices and
//! -1/2 H on internal edges and the root.  Both are implemented and are equal
//! term by term.

use thiserror::Error;

use crate::polyform::PolyForm;
use crate::scalar::Scalar;
use crate::trees::{enumerate_trees, evaluate_tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McError {
    /// Solvers require the input to vanish at filtration order zero;
    /// otherwise no iteration order is enough and the fixed point may not
    /// exist.
    #[error("input has a term at filtration order zero")]
    OrderZeroInput,
}

/// Differential graded Lie algebra with a homotopy contraction and an order
/// filtration.  Operations take the algebra by reference so instances may
/// carry configuration.
pub trait DgLa {
    type Elt: Clone + PartialEq;

    fn zero(&self) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    /// Multiply by the exact rational num/den.
    fn scale_ratio(&self, a: &Self::Elt, num: i64, den: i64) -> Self::Elt;
    /// d, degree +1.
    fn differential(&self, a: &Self::Elt) -> Self::Elt;
    /// Graded bracket, degree 0.
    fn bracket(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    /// H, degree -1, satisfying dH + Hd = I - iP.
    fn homotopy(&self, a: &Self::Elt) -> Self::Elt;
    /// iP: project to the designated subspace and include back.
    fn project(&self, a: &Self::Elt) -> Self::Elt;
    /// Drop terms of filtration order above `order`.
    fn truncate(&self, a: &Self::Elt, order: u32) -> Self::Elt;
    /// Lowest filtration order present, None for zero.
    fn min_order(&self, a: &Self::Elt) -> Option<u32>;

    fn is_zero(&self, a: &Self::Elt) -> bool {
        *a == self.zero()
    }
}

fn require_positive_order<L: DgLa>(alg: &L, pi: &L::Elt) -> Result<(), McError> {
    match alg.min_order(pi) {
        Some(0) => Err(McError::OrderZeroInput),
        _ => Ok(()),
    }
}

/// Solve Phi = Pi - 1/2 H[Phi, Phi] mod order N+1 by iteration.
///
/// Each pass corrects at least one more order, so N passes stabilize; we stop
/// early once a pass is a no-op.
pub fn solve_fixed_point<L: DgLa>(alg: &L, pi: &L::Elt, max_order: u32) -> Result<L::Elt, McError> {
    require_positive_order(alg, pi)?;
    let pi = alg.truncate(pi, max_order);
    let mut phi = pi.clone();
    for _ in 0..max_order {
        let step = half_homotopy_correction(alg, &alg.bracket(&phi, &phi));
        let next = alg.truncate(&alg.add(&pi, &step), max_order);
        if next == phi {
            break;
        }
        phi = next;
    }
    Ok(phi)
}

/// Solve the same equation as a sum over planar binary trees: the k = 1 term
/// is Pi itself, and a k-leaf tree contributes its evaluation with the
/// bracket at each interior vertex and -1/2 H on every internal edge and the
/// outgoing root edge.  Trees with more than N leaves are below the
/// truncation order and are skipped.
pub fn solve_tree_sum<L: DgLa>(alg: &L, pi: &L::Elt, max_order: u32) -> Result<L::Elt, McError> {
    require_positive_order(alg, pi)?;
    let mut total = alg.truncate(pi, max_order);
    let vertex = |a: &L::Elt, b: &L::Elt| alg.bracket(a, b);
    let edge = |v: L::Elt| half_homotopy_correction(alg, &v);
    for leaves in 2..=max_order as usize {
        let input = vec![pi.clone(); leaves];
        for tree in enumerate_trees(leaves) {
            let value = evaluate_tree(&tree, &input, &vertex, &edge, &edge);
            total = alg.truncate(&alg.add(&total, &value), max_order);
        }
    }
    Ok(total)
}

fn half_homotopy_correction<L: DgLa>(alg: &L, bracket_value: &L::Elt) -> L::Elt {
    alg.scale_ratio(&alg.homotopy(bracket_value), -1, 2)
}

/// d(Phi) + 1/2 [Phi, Phi]; zero exactly when Phi solves the Maurer-Cartan
/// equation.
pub fn mc_residual<L: DgLa>(alg: &L, phi: &L::Elt) -> L::Elt {
    alg.add(
        &alg.differential(phi),
        &alg.scale_ratio(&alg.bracket(phi, phi), 1, 2),
    )
}

/// P[Phi, Phi].  For Phi solving the fixed-point equation with a closed
/// input, this vanishes if and only if the Maurer-Cartan residual does.
pub fn obstruction<L: DgLa>(alg: &L, phi: &L::Elt) -> L::Elt {
    alg.project(&alg.bracket(phi, phi))
}

/// The concrete test algebra: strictly upper-triangular 3x3 matrices tensor
/// polynomial forms with the radial homotopy (see [`crate::polyform`]),
/// filtered by the power of the formal parameter s.
#[derive(Debug, Clone, Copy, Default)]
pub struct PolyFormDgLa<S> {
    _scalar: std::marker::PhantomData<S>,
}

impl<S> PolyFormDgLa<S> {
    pub fn new() -> Self {
        PolyFormDgLa { _scalar: std::marker::PhantomData }
    }
}

impl<S: Scalar> DgLa for PolyFormDgLa<S> {
    type Elt = PolyForm<S>;

    fn zero(&self) -> PolyForm<S> {
        PolyForm::zero()
    }

    fn add(&self, a: &PolyForm<S>, b: &PolyForm<S>) -> PolyForm<S> {
        a.add(b)
    }

    fn scale_ratio(&self, a: &PolyForm<S>, num: i64, den: i64) -> PolyForm<S> {
        a.scale(&S::from_ratio(num, den))
    }

    fn differential(&self, a: &PolyForm<S>) -> PolyForm<S> {
        a.d()
    }

    fn bracket(&self, a: &PolyForm<S>, b: &PolyForm<S>) -> PolyForm<S> {
        a.bracket(b)
    }

    fn homotopy(&self, a: &PolyForm<S>) -> PolyForm<S> {
        a.homotopy()
    }

    fn project(&self, a: &PolyForm<S>) -> PolyForm<S> {
        a.constant_part()
    }

    fn truncate(&self, a: &PolyForm<S>, order: u32) -> PolyForm<S> {
        a.truncate_s(order)
    }

    fn min_order(&self, a: &PolyForm<S>) -> Option<u32> {
        a.min_s_order()
    }

    fn is_zero(&self, a: &PolyForm<S>) -> bool {
        a.is_zero()
    }
}
