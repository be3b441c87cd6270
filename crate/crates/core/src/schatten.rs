//! Schatten p-norms, W-weighted seminorms, polar decomposition and
//! φ-directional derivatives of `G_p(X) = ‖X‖_p^p`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    self, check_same_shape, hermitian_apply, null_basis, CMatrix, TolerancePolicy,
};
use crate::shorted::PsdWeight;

fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p))
    }
}

/// `(Σ σ_k^p)^{1/p}` over the singular values of `t`.
pub fn schatten_norm(t: &CMatrix, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let sv = linalg::singular_values(t)?;
    Ok(lp_norm(&sv, p))
}

fn lp_norm(values: &[f64], p: f64) -> f64 {
    let max = values.iter().copied().fold(0.0_f64, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    // Scale before powering so large p does not overflow.
    let sum: f64 = values.iter().map(|&s| (s / max).powf(p)).sum();
    max * sum.powf(1.0 / p)
}

/// `‖X‖_{p,W} = ‖W^{1/2} X‖_p`.
pub fn weighted_seminorm(x: &CMatrix, w: &PsdWeight, p: f64) -> Result<f64> {
    if x.nrows() != w.dim() {
        return Err(Error::DimensionMismatch {
            context: "weighted seminorm",
            expected: format!("{} rows", w.dim()),
            found: format!("{} rows", x.nrows()),
        });
    }
    schatten_norm(&(w.sqrt() * x), p)
}

/// `T = U |T|` with `U` a partial isometry whose kernel is `N(T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarParts {
    pub u: CMatrix,
    pub abs_t: CMatrix,
    rank: usize,
    cutoff: f64,
}

impl PolarParts {
    /// Numerical rank of `T`, i.e. the number of singular directions kept in `U`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `|T|^exponent` for `exponent > 0`, with eigenvalues under the rank cutoff sent to zero.
    pub fn abs_power(&self, exponent: f64) -> Result<CMatrix> {
        let cutoff = self.cutoff;
        hermitian_apply(&self.abs_t, |lam| {
            if lam <= cutoff {
                0.0
            } else {
                lam.powf(exponent)
            }
        })
    }
}

/// Polar decomposition from the SVD `T = P Σ Q*`: `|T| = Q Σ Q*`, `U = Σ_{σ_i > cut} p_i q_i*`.
pub fn polar(t: &CMatrix, tol: &TolerancePolicy) -> Result<PolarParts> {
    polar_relative_to(t, tol, 0.0)
}

/// Polar decomposition with the rank cutoff measured against `max(σ_max, scale)`.
///
/// Use when `T` is a difference of terms of size `scale`: round-off of that
/// size then stays out of `U` and `|T|^{p-1}`.
pub fn polar_relative_to(t: &CMatrix, tol: &TolerancePolicy, scale: f64) -> Result<PolarParts> {
    let dec = linalg::svd(t)?;
    let (m, n) = t.shape();
    let rank = dec.rank_relative_to(tol, scale);
    let cutoff = tol.rank_cutoff(dec.sigma_max().max(scale), m, n);
    let u = dec.left.columns(0, rank) * dec.right.columns(0, rank).adjoint();
    let mut scaled = dec.right.clone();
    for (j, &s) in dec.singular_values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(s);
    }
    let abs_t = linalg::hermitian_part(&(scaled * dec.right.adjoint()));
    Ok(PolarParts {
        u,
        abs_t,
        rank,
        cutoff,
    })
}

/// φ-directional derivative of `G_p(X) = ‖X‖_p^p` (`‖X‖_1` for `p = 1`) along `e^{iφ} Y`:
///
/// * `p > 1`: `p Re[e^{iφ} tr(|X|^{p-1} U* Y)]`
/// * `p = 1`: `Re[e^{iφ} tr(U* Y)] + ‖P_{N(X*)} Y P_{N(X)}‖_1`
pub fn directional_derivative(
    x: &CMatrix,
    y: &CMatrix,
    p: f64,
    phi: f64,
    tol: &TolerancePolicy,
) -> Result<f64> {
    check_exponent(p)?;
    check_same_shape(x, y, "directional derivative")?;
    let parts = polar(x, tol)?;
    let rotation = Complex64::from_polar(1.0, phi);
    let u_adj_y = parts.u.adjoint() * y;
    if p > 1.0 {
        let tr = (parts.abs_power(p - 1.0)? * u_adj_y).trace();
        Ok(p * (rotation * tr).re)
    } else {
        let tr = u_adj_y.trace();
        let left = null_basis(&x.adjoint(), tol)?;
        let right = null_basis(x, tol)?;
        let corner = left.projector() * y * right.projector();
        Ok((rotation * tr).re + schatten_norm(&corner, 1.0)?)
    }
}
