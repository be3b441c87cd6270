//! Minimisation of `H(X) = (AXB - C)* W (AXB - C)` in the Loewner order and of
//! `‖AXB - C‖_{p,W}` in weighted Schatten norms.
//!
//! Shapes: `A` is `m x k`, `X` is `k x l`, `B` is `l x n`, `C` is `m x n` and
//! `W` is `m x m`.
//!
//! The solvers report what the available characterisations license and no
//! more. In particular, when `N(B) ⊄ N(A* W C)`:
//!
//! * the operator-order problem has no minimum and the infimum is left
//!   undetermined ([`OrderStatus::InfimumUnknown`]);
//! * the Schatten problem is solved only for `p = 2`, through the normal
//!   equation `A* W (AXB - C) B* = 0`, and the closed-form value
//!   `‖W_{/R(A)}^{1/2} C‖_2` is reported alongside the directly evaluated
//!   minimum, with a flag when the two disagree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{dims, Error, Result};
use crate::generate::random_complex;
use crate::linalg::{self, pinv, range_basis, CMatrix, CVector, TolerancePolicy};
use crate::schatten::{directional_derivative, polar_relative_to, schatten_norm};
use crate::shorted::{shorted_operator, PsdWeight};
use crate::wls::{check_conditions, range_condition_residual, w_normal_factor, ConditionReport};

/// Problem data for `min (AXB - C)* W (AXB - C)` and `min ‖AXB - C‖_{p,W}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    a: CMatrix,
    b: CMatrix,
    c: CMatrix,
    w: PsdWeight,
    p: f64,
}

impl ProblemInstance {
    pub fn new(a: CMatrix, b: CMatrix, c: CMatrix, w: PsdWeight, p: f64) -> Result<Self> {
        for m in [&a, &b, &c] {
            linalg::ensure_finite(m)?;
        }
        let mismatch = |context, expected: (usize, usize), found: (usize, usize)| {
            Err(Error::DimensionMismatch {
                context,
                expected: dims(expected.0, expected.1),
                found: dims(found.0, found.1),
            })
        };
        if c.shape() != (a.nrows(), b.ncols()) {
            return mismatch("C against A and B", (a.nrows(), b.ncols()), c.shape());
        }
        if w.dim() != a.nrows() {
            return mismatch("W against A", (a.nrows(), a.nrows()), (w.dim(), w.dim()));
        }
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidExponent(p));
        }
        Ok(Self { a, b, c, w, p })
    }

    pub fn with_p(&self, p: f64) -> Result<Self> {
        Self::new(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.w.clone(),
            p,
        )
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn c(&self) -> &CMatrix {
        &self.c
    }

    pub fn w(&self) -> &PsdWeight {
        &self.w
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Shape `(k, l)` of the unknown `X`.
    pub fn x_shape(&self) -> (usize, usize) {
        (self.a.ncols(), self.b.nrows())
    }

    fn check_x(&self, x: &CMatrix) -> Result<()> {
        let (k, l) = self.x_shape();
        if x.shape() == (k, l) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                context: "unknown X",
                expected: dims(k, l),
                found: dims(x.nrows(), x.ncols()),
            })
        }
    }

    /// `AXB - C`.
    pub fn residual(&self, x: &CMatrix) -> Result<CMatrix> {
        self.check_x(x)?;
        Ok(&self.a * x * &self.b - &self.c)
    }

    /// `W^{1/2}(AXB - C)`.
    pub fn weighted_residual(&self, x: &CMatrix) -> Result<CMatrix> {
        Ok(self.w.sqrt() * self.residual(x)?)
    }

    /// `‖AXB - C‖_{p,W}` at the instance's `p`.
    pub fn objective(&self, x: &CMatrix) -> Result<f64> {
        schatten_norm(&self.weighted_residual(x)?, self.p)
    }

    pub fn conditions(&self, tol: &TolerancePolicy) -> Result<ConditionReport> {
        check_conditions(&self.a, &self.b, &self.c, &self.w, tol)
    }

    /// `C* W_{/R(A)} C`.
    pub fn shorted_value(&self, tol: &TolerancePolicy) -> Result<CMatrix> {
        let ra = range_basis(&self.a, tol)?;
        let pair = shorted_operator(&self.w, &ra, tol)?;
        Ok(linalg::hermitian_part(
            &(self.c.adjoint() * pair.shorted * &self.c),
        ))
    }

    /// `‖W_{/R(A)}^{1/2} C‖_p`.
    pub fn shorted_norm(&self, tol: &TolerancePolicy) -> Result<f64> {
        let ra = range_basis(&self.a, tol)?;
        let pair = shorted_operator(&self.w, &ra, tol)?;
        let root = linalg::psd_sqrt_relative_to(
            &pair.shorted,
            tol,
            linalg::spectral_norm(self.w.matrix())?,
        )?;
        schatten_norm(&(root * &self.c), self.p)
    }

    fn scale(&self) -> f64 {
        (self.a.norm() * self.w.matrix().norm() * self.c.norm() * self.b.norm()).max(1.0)
    }
}

/// Affine family `L ↦ particular + L - left_factor · L · right_factor`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionManifold {
    particular: CMatrix,
    left_factor: CMatrix,
    right_factor: CMatrix,
}

impl SolutionManifold {
    pub fn new(particular: CMatrix, left_factor: CMatrix, right_factor: CMatrix) -> Self {
        debug_assert_eq!(left_factor.ncols(), particular.nrows());
        debug_assert_eq!(right_factor.nrows(), particular.ncols());
        Self {
            particular,
            left_factor,
            right_factor,
        }
    }

    /// The canonical representative, `map(0)`.
    pub fn particular(&self) -> &CMatrix {
        &self.particular
    }

    pub fn left_factor(&self) -> &CMatrix {
        &self.left_factor
    }

    pub fn right_factor(&self) -> &CMatrix {
        &self.right_factor
    }

    pub fn map(&self, l: &CMatrix) -> CMatrix {
        &self.particular + l - &self.left_factor * l * &self.right_factor
    }
}

fn cor4_manifold(inst: &ProblemInstance, tol: &TolerancePolicy) -> Result<SolutionManifold> {
    let factor = w_normal_factor(&inst.a, &inst.w, tol)?;
    let b_pinv = pinv(&inst.b, tol)?;
    let particular = &factor * &inst.c * &b_pinv;
    let left = factor * &inst.a;
    let right = &inst.b * b_pinv;
    Ok(SolutionManifold::new(particular, left, right))
}

/// `H(X) = (AXB - C)* W (AXB - C)`.
pub fn h_map(inst: &ProblemInstance, x: &CMatrix) -> Result<CMatrix> {
    let r = inst.residual(x)?;
    Ok(linalg::hermitian_part(&(r.adjoint() * inst.w.matrix() * r)))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExactSolution {
    /// General solution `A† C B† + L - A† A L B B†`.
    Solvable(SolutionManifold),
    /// `R(C) ⊄ R(A)` or `R(C*) ⊄ R(B*)`; residuals are the containment distances.
    NoSolution {
        range_residual: f64,
        corange_residual: f64,
    },
}

/// Solves `AXB = C` exactly when `R(C) ⊆ R(A)` and `R(C*) ⊆ R(B*)`.
pub fn solve_axb_exact(
    a: &CMatrix,
    b: &CMatrix,
    c: &CMatrix,
    tol: &TolerancePolicy,
) -> Result<ExactSolution> {
    if c.shape() != (a.nrows(), b.ncols()) {
        return Err(Error::DimensionMismatch {
            context: "exact solve",
            expected: dims(a.nrows(), b.ncols()),
            found: dims(c.nrows(), c.ncols()),
        });
    }
    let range_residual = range_basis(a, tol)?.containment_residual(range_basis(c, tol)?.basis())?;
    let corange_residual = range_basis(&b.adjoint(), tol)?
        .containment_residual(range_basis(&c.adjoint(), tol)?.basis())?;
    if range_residual > tol.residual_abs || corange_residual > tol.residual_abs {
        return Ok(ExactSolution::NoSolution {
            range_residual,
            corange_residual,
        });
    }
    let a_pinv = pinv(a, tol)?;
    let b_pinv = pinv(b, tol)?;
    Ok(ExactSolution::Solvable(SolutionManifold::new(
        &a_pinv * c * &b_pinv,
        &a_pinv * a,
        b * b_pinv,
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrderStatus {
    /// Both existence conditions hold; the minimum is attained on the manifold.
    MinimumExists,
    /// Only the kernel condition holds: the infimum is known but not attained.
    InfimumOnly,
    /// The kernel condition fails; neither existence nor value is determined.
    InfimumUnknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderMinResult {
    pub status: OrderStatus,
    pub conditions: ConditionReport,
    /// Present iff `status == MinimumExists`.
    pub manifold: Option<SolutionManifold>,
    /// `C* W_{/R(A)} C`, present unless `status == InfimumUnknown`.
    pub inf_value: Option<CMatrix>,
}

/// Minimises `H(X)` in the Loewner order.
pub fn operator_order_min(inst: &ProblemInstance, tol: &TolerancePolicy) -> Result<OrderMinResult> {
    let conditions = inst.conditions(tol)?;
    let status = match (conditions.kernel_condition, conditions.range_condition) {
        (true, true) => OrderStatus::MinimumExists,
        (true, false) => OrderStatus::InfimumOnly,
        (false, _) => OrderStatus::InfimumUnknown,
    };
    let manifold = match status {
        OrderStatus::MinimumExists => Some(cor4_manifold(inst, tol)?),
        _ => None,
    };
    let inf_value = match status {
        OrderStatus::InfimumUnknown => None,
        _ => Some(inst.shorted_value(tol)?),
    };
    Ok(OrderMinResult {
        status,
        conditions,
        manifold,
        inf_value,
    })
}

/// `A* W (AXB - C)`.
pub fn normal_residual_full(inst: &ProblemInstance, x: &CMatrix) -> Result<CMatrix> {
    Ok(inst.a.adjoint() * inst.w.matrix() * inst.residual(x)?)
}

/// `A* W (AXB - C) B*`.
pub fn normal_residual_p2(inst: &ProblemInstance, x: &CMatrix) -> Result<CMatrix> {
    Ok(normal_residual_full(inst, x)? * inst.b.adjoint())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MinimumRoute {
    /// `N(B) ⊆ N(A* W C)`: any `p`, governed by `A* W (AXB - C) = 0`.
    KernelCondition,
    /// `p = 2` without the kernel condition: governed by `A* W (AXB - C) B* = 0`.
    FrobeniusNormalEquation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchattenMinimum {
    pub p: f64,
    pub route: MinimumRoute,
    pub conditions: ConditionReport,
    pub manifold: SolutionManifold,
    /// `‖W^{1/2}(A X₀ B - C)‖_p` at `X₀ = map(0)`.
    pub direct_value: f64,
    /// `‖W_{/R(A)}^{1/2} C‖_p`.
    pub formula_value: f64,
    pub formula_agrees: bool,
    /// Norm of the governing normal-equation residual at `X₀`.
    pub normal_residual_norm: f64,
}

impl SchattenMinimum {
    pub fn minimizer(&self) -> &CMatrix {
        self.manifold.particular()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SchattenOutcome {
    Minimum(SchattenMinimum),
    /// The relevant range condition fails, so no minimum exists.
    NoMinimum {
        conditions: ConditionReport,
    },
    /// `p != 2` and the kernel condition fails: no characterisation is available.
    NotCharacterized {
        conditions: ConditionReport,
    },
}

/// Minimises `‖AXB - C‖_{p,W}` at the instance's `p`.
pub fn schatten_min(inst: &ProblemInstance, tol: &TolerancePolicy) -> Result<SchattenOutcome> {
    let p = inst.p;
    let conditions = inst.conditions(tol)?;
    let route = if conditions.kernel_condition {
        if !conditions.range_condition {
            return Ok(SchattenOutcome::NoMinimum { conditions });
        }
        MinimumRoute::KernelCondition
    } else if p == 2.0 {
        let cb = &inst.c * inst.b.adjoint();
        if range_condition_residual(&inst.a, &inst.w, &cb, tol)? > tol.residual_abs {
            return Ok(SchattenOutcome::NoMinimum { conditions });
        }
        MinimumRoute::FrobeniusNormalEquation
    } else {
        return Ok(SchattenOutcome::NotCharacterized { conditions });
    };

    // A* W (A X B - C P_{N(B)^⊥}) = 0 has the same solutions as the p = 2 normal
    // equation, and B† = P_{N(B)^⊥} B†, so one formula serves both routes.
    let manifold = cor4_manifold(inst, tol)?;
    let x0 = manifold.particular();
    let normal = match route {
        MinimumRoute::KernelCondition => normal_residual_full(inst, x0)?,
        MinimumRoute::FrobeniusNormalEquation => normal_residual_p2(inst, x0)?,
    };
    let normal_residual_norm = normal.norm();
    if normal_residual_norm > tol.residual_abs * inst.scale() {
        return Err(Error::InternalAssertion(format!(
            "normal equation residual {normal_residual_norm:e} at the computed minimiser"
        )));
    }
    let direct_value = inst.objective(x0)?;
    let formula_value = inst.shorted_norm(tol)?;
    let formula_agrees =
        (direct_value - formula_value).abs() <= tol.residual_abs * formula_value.max(1.0);
    if route == MinimumRoute::KernelCondition && !formula_agrees {
        return Err(Error::InternalAssertion(format!(
            "minimum {direct_value} differs from ‖W_/R(A)^1/2 C‖_p = {formula_value}"
        )));
    }
    Ok(SchattenOutcome::Minimum(SchattenMinimum {
        p,
        route,
        conditions,
        manifold,
        direct_value,
        formula_value,
        formula_agrees,
        normal_residual_norm,
    }))
}

/// `B |W^{1/2}(AXB - C)|^{p-1} U* W^{1/2} A`, which vanishes exactly at the global
/// minimisers of `‖AXB - C‖_{p,W}^p` for `p > 1`.
pub fn critical_residual(
    inst: &ProblemInstance,
    x: &CMatrix,
    tol: &TolerancePolicy,
) -> Result<CMatrix> {
    if inst.p <= 1.0 {
        return Err(Error::InvalidExponent(inst.p));
    }
    let r = inst.weighted_residual(x)?;
    // R is a difference of two terms; at an exact fit it is pure round-off of their size.
    let fitted = inst.w.sqrt() * &inst.a * x * &inst.b;
    let scale =
        linalg::spectral_norm(&fitted)?.max(linalg::spectral_norm(&(inst.w.sqrt() * &inst.c))?);
    let parts = polar_relative_to(&r, tol, scale)?;
    let power = parts.abs_power(inst.p - 1.0)?;
    Ok(&inst.b * power * parts.u.adjoint() * inst.w.sqrt() * &inst.a)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    pub value: f64,
    pub x_opt: CMatrix,
}

/// Largest number of unknowns `k * l` the dense oracle accepts.
pub const ORACLE_MAX_UNKNOWNS: usize = 10_000;
/// Largest Kronecker system (rows times columns) the dense oracle accepts.
pub const ORACLE_MAX_ENTRIES: usize = 4_000_000;

/// Independent `p = 2` minimiser: flatten `X` column-major, use
/// `vec(AXB) = (Bᵀ ⊗ A) vec(X)`, and solve the least-squares problem with a pseudoinverse.
pub fn brute_force_p2_oracle(
    inst: &ProblemInstance,
    tol: &TolerancePolicy,
) -> Result<OracleSolution> {
    let (k, l) = inst.x_shape();
    let (m, n) = inst.c.shape();
    let unknowns = k * l;
    if unknowns > ORACLE_MAX_UNKNOWNS || unknowns * m * n > ORACLE_MAX_ENTRIES {
        return Err(Error::SizeGuard(format!(
            "{unknowns} unknowns and {} equations",
            m * n
        )));
    }
    let wa = inst.w.sqrt() * &inst.a;
    let wc = inst.w.sqrt() * &inst.c;
    let system = inst.b.transpose().kronecker(&wa);
    let rhs = CVector::from_column_slice(wc.as_slice());
    let x = pinv(&system, tol)? * &rhs;
    let value = (&system * &x - rhs).norm();
    Ok(OracleSolution {
        value,
        x_opt: CMatrix::from_column_slice(k, l, x.as_slice()),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentReport {
    pub trials: usize,
    pub min_derivative: f64,
    pub min_phi: f64,
    pub all_nonnegative: bool,
}

/// Samples `D_φ F_p(X₀, Y)` for random `Y` and `φ`, where
/// `F_p(X) = ‖AXB - C‖_{p,W}^p`, via `D_φ G_p(W^{1/2}(A X₀ B - C), W^{1/2} A Y B)`.
pub fn descent_check_fp(
    inst: &ProblemInstance,
    x0: &CMatrix,
    trials: usize,
    rng_seed: u64,
    tol: &TolerancePolicy,
) -> Result<DescentReport> {
    if inst.p <= 1.0 {
        return Err(Error::InvalidExponent(inst.p));
    }
    let r0 = inst.weighted_residual(x0)?;
    let wa = inst.w.sqrt() * &inst.a;
    let (k, l) = inst.x_shape();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut min_derivative = f64::INFINITY;
    let mut min_phi = 0.0;
    for _ in 0..trials {
        let y = random_complex(&mut rng, k, l);
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        let d = directional_derivative(&r0, &(&wa * y * &inst.b), inst.p, phi, tol)?;
        if d < min_derivative {
            min_derivative = d;
            min_phi = phi;
        }
    }
    Ok(DescentReport {
        trials,
        min_derivative,
        min_phi,
        all_nonnegative: min_derivative >= -tol.residual_abs,
    })
}
