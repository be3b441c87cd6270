//! W-least-squares solutions of `Az = x`, W-inverses of `A` in `R(B)`, and the
//! two existence conditions
//!
//! * range: `R(C) ⊆ R(A) + R(A)^{⊥_W}`
//! * kernel: `N(B) ⊆ N(A* W C)`
//!
//! that govern every minimisation result in [`crate::solver`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    null_basis, pinv, range_basis, subspace_sum, w_orthogonal_complement, CMatrix, CVector,
    TolerancePolicy,
};
use crate::shorted::PsdWeight;
use crate::solver::SolutionManifold;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionReport {
    /// `R(C) ⊆ R(A) + R(A)^{⊥_W}`.
    pub range_condition: bool,
    /// `N(B) ⊆ N(A* W C)`.
    pub kernel_condition: bool,
    /// Largest distance of a unit vector of `R(C)` from `R(A) + R(A)^{⊥_W}`.
    pub range_residual: f64,
    /// `‖A* W C P_{N(B)}‖_F`.
    pub kernel_residual: f64,
}

fn check_rows(a: &CMatrix, w: &PsdWeight, other: usize, context: &'static str) -> Result<()> {
    if a.nrows() == w.dim() && other == w.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected: format!("{} rows in A, W and the right-hand side", w.dim()),
            found: format!("A has {}, right-hand side has {}", a.nrows(), other),
        })
    }
}

/// `(A* W A)† A* W`, the common left factor of every W-least-squares formula.
pub(crate) fn w_normal_factor(
    a: &CMatrix,
    w: &PsdWeight,
    tol: &TolerancePolicy,
) -> Result<CMatrix> {
    let awa = a.adjoint() * w.matrix() * a;
    Ok(pinv(&awa, tol)? * a.adjoint() * w.matrix())
}

/// Distance of `R(target)` from `R(A) + R(A)^{⊥_W}`.
pub fn range_condition_residual(
    a: &CMatrix,
    w: &PsdWeight,
    target: &CMatrix,
    tol: &TolerancePolicy,
) -> Result<f64> {
    check_rows(a, w, target.nrows(), "range condition")?;
    let ra = range_basis(a, tol)?;
    let ra_w = w_orthogonal_complement(&ra, w, tol)?;
    let sum = subspace_sum(&ra, &ra_w, tol)?;
    let rt = range_basis(target, tol)?;
    sum.containment_residual(rt.basis())
}

/// W-least-squares solution `u = (A* W A)† A* W x` of `Az = x`.
pub fn w_lss(a: &CMatrix, w: &PsdWeight, x: &CVector, tol: &TolerancePolicy) -> Result<CVector> {
    check_rows(a, w, x.nrows(), "W-least-squares")?;
    Ok(w_normal_factor(a, w, tol)? * x)
}

/// The W-inverses of `A` in `R(B)`: `(A* W A)† A* W B + {L : R(L) ⊆ N(A* W A)}`.
pub fn w_inverse(
    a: &CMatrix,
    w: &PsdWeight,
    b: &CMatrix,
    tol: &TolerancePolicy,
) -> Result<SolutionManifold> {
    let residual = range_condition_residual(a, w, b, tol)?;
    if residual > tol.residual_abs {
        return Err(Error::ConditionViolated(format!(
            "R(B) is not contained in R(A) + R(A)^⊥W (residual {residual:e})"
        )));
    }
    let factor = w_normal_factor(a, w, tol)?;
    let particular = &factor * b;
    let left = factor * a;
    let right = CMatrix::identity(b.ncols(), b.ncols());
    Ok(SolutionManifold::new(particular, left, right))
}

/// Evaluates both existence conditions for the problem data `(A, B, C, W)`.
pub fn check_conditions(
    a: &CMatrix,
    b: &CMatrix,
    c: &CMatrix,
    w: &PsdWeight,
    tol: &TolerancePolicy,
) -> Result<ConditionReport> {
    if b.ncols() != c.ncols() {
        return Err(Error::DimensionMismatch {
            context: "kernel condition",
            expected: format!("{} columns in C", b.ncols()),
            found: format!("{} columns", c.ncols()),
        });
    }
    let range_residual = range_condition_residual(a, w, c, tol)?;
    let kernel_b = null_basis(b, tol)?;
    let kernel_residual = (a.adjoint() * w.matrix() * c * kernel_b.projector()).norm();
    Ok(ConditionReport {
        range_condition: range_residual <= tol.residual_abs,
        kernel_condition: kernel_residual <= tol.residual_abs,
        range_residual,
        kernel_residual,
    })
}
