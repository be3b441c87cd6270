//! Shorted operators `W_{/S}` and compressions `W_S` of a PSD weight.
//!
//! In finite dimensions the shorted operator is the generalised Schur
//! complement of the `S`-block of `W`, embedded back into `S^⊥`.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate::random_complex;
use crate::linalg::{
    self, hermitian_apply, hermitian_part, loewner_margin, null_basis, range_basis,
    subspace_intersection, subspace_sum, w_orthogonal_complement, CMatrix, SubspaceBasis,
    TolerancePolicy,
};

/// A validated positive semidefinite weight together with its principal square root.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdWeight {
    w: CMatrix,
    sqrt_w: CMatrix,
}

impl PsdWeight {
    /// Validates `w` (square, finite, Hermitian, PSD) and caches `W^{1/2}`.
    pub fn new(w: CMatrix, tol: &TolerancePolicy) -> Result<Self> {
        if !w.is_square() {
            return Err(Error::NotSquare {
                rows: w.nrows(),
                cols: w.ncols(),
            });
        }
        linalg::ensure_finite(&w)?;
        let skew = (&w - w.adjoint()).norm();
        if skew > tol.residual_abs * w.norm().max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "weight is not Hermitian (‖W - W*‖ = {skew:e})"
            )));
        }
        let w = hermitian_part(&w);
        let sqrt_w = linalg::psd_sqrt(&w, tol)?;
        Ok(Self { w, sqrt_w })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            w: CMatrix::identity(n, n),
            sqrt_w: CMatrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.w.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.w
    }

    pub fn sqrt(&self) -> &CMatrix {
        &self.sqrt_w
    }
}

/// `W = shorted + compression`, with `shorted = W_{/S}` and `compression = W_S`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortedPair {
    pub shorted: CMatrix,
    pub compression: CMatrix,
}

fn check_dims(w: &PsdWeight, s: &SubspaceBasis) -> Result<()> {
    if w.dim() == s.ambient_dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context: "shorted operator",
            expected: format!("subspace of C^{}", w.dim()),
            found: format!("subspace of C^{}", s.ambient_dim()),
        })
    }
}

/// Shorted operator of `W` to `S` via the generalised Schur complement
/// `W22 - W12* W11† W12` in the orthonormal frame `[basis(S) | basis(S^⊥)]`.
pub fn shorted_operator(
    w: &PsdWeight,
    s: &SubspaceBasis,
    tol: &TolerancePolicy,
) -> Result<ShortedPair> {
    check_dims(w, s)?;
    let u = s.basis();
    let v = s.orthogonal_complement()?;
    let v = v.basis();
    let wm = w.matrix();
    let w11 = u.adjoint() * wm * u;
    let w12 = u.adjoint() * wm * v;
    let w22 = v.adjoint() * wm * v;
    // Blocks inherit round-off from W, so rank decisions are made against ‖W‖.
    let scale = linalg::spectral_norm(wm)?;
    let w11_pinv = linalg::pinv_relative_to(&hermitian_part(&w11), tol, scale)?;
    let schur = hermitian_part(&(w22 - w12.adjoint() * w11_pinv * &w12));
    let cut = tol.rank_cutoff(scale, schur.nrows(), schur.ncols());
    let schur = hermitian_apply(&schur, |lam| if lam.abs() <= cut { 0.0 } else { lam })?;
    let shorted = hermitian_part(&(v * schur * v.adjoint()));
    let compression = wm - &shorted;
    Ok(ShortedPair {
        shorted,
        compression,
    })
}

/// Draws an oblique projection `E` with `N(E) = S` and a random complement as range.
///
/// Returns `None` when the frame `[basis(S) | G]` has condition number above
/// `max_condition`; callers should redraw.
pub fn random_oblique_projection(
    s: &SubspaceBasis,
    rng: &mut impl rand::Rng,
    max_condition: f64,
) -> Result<Option<CMatrix>> {
    let n = s.ambient_dim();
    let k = s.dim();
    if k == 0 {
        return Ok(Some(CMatrix::identity(n, n)));
    }
    if k == n {
        return Ok(Some(CMatrix::zeros(n, n)));
    }
    let g = random_complex(rng, n, n - k);
    let mut frame = CMatrix::zeros(n, n);
    frame.columns_mut(0, k).copy_from(s.basis());
    frame.columns_mut(k, n - k).copy_from(&g);
    let sv = linalg::singular_values(&frame)?;
    let (hi, lo) = (sv[0], sv[n - 1]);
    if lo <= 0.0 || hi / lo > max_condition {
        return Ok(None);
    }
    let Some(inv) = frame.clone().try_inverse() else {
        return Ok(None);
    };
    let select = DMatrix::from_fn(n, n, |i, j| {
        if i == j && i >= k {
            linalg::c64(1.0, 0.0)
        } else {
            linalg::c64(0.0, 0.0)
        }
    });
    Ok(Some(frame * select * inv))
}

#[derive(Debug, Clone, Serialize)]
pub struct InfimumWitnessReport {
    pub trials: usize,
    pub rejected_draws: usize,
    /// Smallest eigenvalue of `E* W E - W_{/S}` over the sampled projections.
    pub min_margin: f64,
    /// Same quantity for the orthogonal choice `E = P_{S^⊥}`.
    pub orthogonal_margin: f64,
    /// Largest `‖E² - E‖ + ‖E P_S‖` over the sampled projections.
    pub max_projection_defect: f64,
    pub all_hold: bool,
}

/// Samples oblique projections with kernel `S` and checks `W_{/S} <= E* W E`.
pub fn shorted_infimum_witness(
    w: &PsdWeight,
    s: &SubspaceBasis,
    trials: usize,
    rng_seed: u64,
    tol: &TolerancePolicy,
) -> Result<InfimumWitnessReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let pair = shorted_operator(w, s, tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let n = w.dim();
    let wm = w.matrix();
    let mut rejected = 0;
    let mut min_margin = f64::INFINITY;
    let mut max_defect = 0.0_f64;
    let mut accepted = 0;
    while accepted < trials {
        let Some(e) = random_oblique_projection(s, &mut rng, 1e3)? else {
            rejected += 1;
            if rejected > 100 * trials {
                return Err(Error::InternalAssertion(
                    "could not draw well-conditioned oblique projections".into(),
                ));
            }
            continue;
        };
        let defect = (&e * &e - &e).norm() + (&e * s.projector()).norm();
        max_defect = max_defect.max(defect);
        let ewe = hermitian_part(&(e.adjoint() * wm * &e));
        min_margin = min_margin.min(loewner_margin(&pair.shorted, &ewe)?);
        accepted += 1;
    }
    let p_perp = CMatrix::identity(n, n) - s.projector();
    let ortho = hermitian_part(&(&p_perp * wm * &p_perp));
    let orthogonal_margin = loewner_margin(&pair.shorted, &ortho)?;
    let floor = -tol.residual_abs;
    Ok(InfimumWitnessReport {
        trials,
        rejected_draws: rejected,
        min_margin,
        orthogonal_margin,
        max_projection_defect: max_defect,
        all_hold: min_margin >= floor && orthogonal_margin >= floor,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelRangeReport {
    /// Mutual containment residual between `N(W_S)` and `S^{⊥_W}`.
    pub compression_kernel_residual: f64,
    pub compression_kernel_dims: (usize, usize),
    /// `‖P_S W_{/S}‖`.
    pub shorted_range_residual: f64,
    /// `‖W_{/S} Z‖` for an orthonormal basis `Z` of `N(W) + S`.
    pub shorted_kernel_residual: f64,
    /// Distance of `R(W) ∩ S^⊥` from `R(W_{/S})`.
    pub range_intersection_residual: f64,
    pub compression_kernel_matches: bool,
    pub shorted_range_in_s_perp: bool,
    pub kernel_inclusion_holds: bool,
    pub range_intersection_included: bool,
    pub all_pass: bool,
}

/// Checks the range and kernel relations of the shorted operator and the compression.
pub fn shorted_kernel_range_check(
    w: &PsdWeight,
    s: &SubspaceBasis,
    tol: &TolerancePolicy,
) -> Result<KernelRangeReport> {
    let pair = shorted_operator(w, s, tol)?;
    let eps = tol.residual_abs;

    let kernel_ws = null_basis(&pair.compression, tol)?;
    let w_perp = w_orthogonal_complement(s, w, tol)?;
    let compression_kernel_residual = kernel_ws
        .containment_residual(w_perp.basis())?
        .max(w_perp.containment_residual(kernel_ws.basis())?);
    let compression_kernel_matches =
        kernel_ws.dim() == w_perp.dim() && compression_kernel_residual <= eps;

    let shorted_range_residual = (s.projector() * &pair.shorted).norm();

    let kernel_w = null_basis(w.matrix(), tol)?;
    let sum = subspace_sum(&kernel_w, s, tol)?;
    let shorted_kernel_residual = (&pair.shorted * sum.basis()).norm();

    let range_w = range_basis(w.matrix(), tol)?;
    let inter = subspace_intersection(&range_w, &s.orthogonal_complement()?, tol)?;
    let range_shorted = range_basis(&pair.shorted, tol)?;
    let range_intersection_residual = range_shorted.containment_residual(inter.basis())?;

    let shorted_range_in_s_perp = shorted_range_residual <= eps;
    let kernel_inclusion_holds = shorted_kernel_residual <= eps;
    let range_intersection_included = range_intersection_residual <= eps;
    Ok(KernelRangeReport {
        compression_kernel_residual,
        compression_kernel_dims: (kernel_ws.dim(), w_perp.dim()),
        shorted_range_residual,
        shorted_kernel_residual,
        range_intersection_residual,
        compression_kernel_matches,
        shorted_range_in_s_perp,
        kernel_inclusion_holds,
        range_intersection_included,
        all_pass: compression_kernel_matches
            && shorted_range_in_s_perp
            && kernel_inclusion_holds
            && range_intersection_included,
    })
}
