//! Dense complex linear algebra with an explicit rank and tolerance policy.
//!
//! Every rank decision in the crate goes through [`TolerancePolicy`], so that
//! range tests, pseudoinverses, polar factors and kernel projectors agree on
//! which singular directions are numerically zero.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{dims, Error, Result};
use crate::shorted::PsdWeight;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const MAX_SWEEPS: usize = 10_000;

/// Numerical thresholds shared by all operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    /// Singular values below `rank_rel * sigma_max * max(rows, cols)` count as zero.
    pub rank_rel: f64,
    /// Absolute tolerance for residual norms.
    pub residual_abs: f64,
    /// Relative eigenvalue floor for PSD tests; scaled by the spectral norm. Non-positive.
    pub psd_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rank_rel: 1e-10,
            residual_abs: 1e-8,
            psd_tol: -1e-10,
        }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rank_rel > 0.0
            && self.residual_abs > 0.0
            && self.psd_tol <= 0.0
            && self.rank_rel.is_finite()
            && self.residual_abs.is_finite()
            && self.psd_tol.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "tolerances must satisfy rank_rel > 0, residual_abs > 0, psd_tol <= 0 (got {self:?})"
            )))
        }
    }

    /// Absolute singular-value cutoff for a `rows x cols` matrix.
    pub fn rank_cutoff(&self, sigma_max: f64, rows: usize, cols: usize) -> f64 {
        self.rank_rel * sigma_max * rows.max(cols).max(1) as f64
    }

    /// Smallest admissible eigenvalue for a Hermitian matrix of the given spectral norm.
    pub fn psd_floor(&self, spectral_norm: f64) -> f64 {
        self.psd_tol * spectral_norm
    }
}

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds a real-valued complex matrix from row slices. Panics on ragged input.
pub fn real_matrix(rows: &[&[f64]]) -> CMatrix {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
    CMatrix::from_fn(nrows, ncols, |i, j| c64(rows[i][j], 0.0))
}

/// Builds a matrix from row-major entries, rejecting non-finite values.
pub fn from_row_major(rows: usize, cols: usize, data: &[Complex64]) -> Result<CMatrix> {
    if data.len() != rows * cols {
        return Err(Error::DimensionMismatch {
            context: "row-major data",
            expected: format!("{} entries", rows * cols),
            found: format!("{} entries", data.len()),
        });
    }
    let m = CMatrix::from_row_slice(rows, cols, data);
    ensure_finite(&m)?;
    Ok(m)
}

pub fn ensure_finite(m: &CMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn diag(values: &[f64]) -> CMatrix {
    let n = values.len();
    CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            c64(values[i], 0.0)
        } else {
            c64(0.0, 0.0)
        }
    })
}

pub fn hermitian_part(t: &CMatrix) -> CMatrix {
    (t + t.adjoint()) * c64(0.5, 0.0)
}

fn ensure_square(t: &CMatrix) -> Result<()> {
    if t.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: t.nrows(),
            cols: t.ncols(),
        })
    }
}

/// Thin singular value decomposition `T = left * diag(sigma) * right*`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows x k` with orthonormal columns, `k = min(rows, cols)`.
    pub left: CMatrix,
    /// Non-negative, in descending order.
    pub singular_values: Vec<f64>,
    /// `cols x k` with orthonormal columns.
    pub right: CMatrix,
}

impl Svd {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values above the policy cutoff.
    pub fn rank(&self, tol: &TolerancePolicy) -> usize {
        self.rank_relative_to(tol, 0.0)
    }

    /// Rank with the cutoff measured against `max(σ_max, scale)`, for blocks
    /// whose round-off is set by a larger parent matrix.
    pub fn rank_relative_to(&self, tol: &TolerancePolicy, scale: f64) -> usize {
        let reference = self.sigma_max().max(scale);
        let cut = tol.rank_cutoff(reference, self.left.nrows(), self.right.nrows());
        self.singular_values
            .iter()
            .take_while(|&&s| s > cut)
            .count()
    }

    pub fn reconstruct(&self) -> CMatrix {
        let mut scaled = self.left.clone();
        for (j, &s) in self.singular_values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(s);
        }
        scaled * self.right.adjoint()
    }
}

pub fn svd(t: &CMatrix) -> Result<Svd> {
    ensure_finite(t)?;
    let (m, n) = t.shape();
    let k = m.min(n);
    if k == 0 {
        return Ok(Svd {
            left: CMatrix::zeros(m, 0),
            singular_values: Vec::new(),
            right: CMatrix::zeros(n, 0),
        });
    }
    // nalgebra's complex SVD loses accuracy on exactly rank-deficient input,
    // which is the common case here, so the factorisation comes from faer.
    let dec = faer::Mat::<Complex64>::from_fn(m, n, |i, j| t[(i, j)])
        .thin_svd()
        .map_err(|_| Error::DecompositionFailed("singular value"))?;
    let (u, s, v) = (dec.U(), dec.S().column_vector(), dec.V());
    let sv: Vec<f64> = (0..k).map(|j| s[j].re).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));
    let left = CMatrix::from_fn(m, k, |i, j| u[(i, order[j])]);
    let right = CMatrix::from_fn(n, k, |i, j| v[(i, order[j])]);
    let singular_values = order.iter().map(|&j| sv[j].max(0.0)).collect();
    Ok(Svd {
        left,
        singular_values,
        right,
    })
}

pub fn singular_values(t: &CMatrix) -> Result<Vec<f64>> {
    Ok(svd(t)?.singular_values)
}

pub fn spectral_norm(t: &CMatrix) -> Result<f64> {
    Ok(svd(t)?.sigma_max())
}

pub fn rank(t: &CMatrix, tol: &TolerancePolicy) -> Result<usize> {
    Ok(svd(t)?.rank(tol))
}

/// Moore–Penrose pseudoinverse with the policy's rank cutoff.
pub fn pinv(t: &CMatrix, tol: &TolerancePolicy) -> Result<CMatrix> {
    pinv_relative_to(t, tol, 0.0)
}

/// Pseudoinverse with the rank cutoff taken relative to `max(σ_max, scale)`.
pub fn pinv_relative_to(t: &CMatrix, tol: &TolerancePolicy, scale: f64) -> Result<CMatrix> {
    let dec = svd(t)?;
    let r = dec.rank_relative_to(tol, scale);
    let (m, n) = t.shape();
    let mut out = CMatrix::zeros(n, m);
    for j in 0..r {
        let inv = 1.0 / dec.singular_values[j];
        let v = dec.right.column(j);
        let u = dec.left.column(j);
        out += (v * u.adjoint()) * c64(inv, 0.0);
    }
    Ok(out)
}

/// Eigen-decomposition of the Hermitian part of `t`; eigenvalues ascending.
pub fn eigh(t: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    ensure_square(t)?;
    ensure_finite(t)?;
    let n = t.nrows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }
    let dec = SymmetricEigen::try_new(hermitian_part(t), f64::EPSILON, MAX_SWEEPS)
        .ok_or(Error::DecompositionFailed("Hermitian eigen"))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| dec.eigenvalues[a].total_cmp(&dec.eigenvalues[b]));
    let values = order.iter().map(|&j| dec.eigenvalues[j]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| dec.eigenvectors[(i, order[j])]);
    Ok((values, vectors))
}

pub fn min_eigenvalue(t: &CMatrix) -> Result<f64> {
    Ok(eigh(t)?.0.first().copied().unwrap_or(0.0))
}

/// Applies `f` to the eigenvalues of the Hermitian part of `t`.
pub fn hermitian_apply(t: &CMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    let (values, vectors) = eigh(t)?;
    let mut scaled = vectors.clone();
    for (j, &lam) in values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(f(lam));
    }
    Ok(hermitian_part(&(scaled * vectors.adjoint())))
}

/// PSD test: the smallest eigenvalue of the Hermitian part must clear `psd_tol * ‖T‖`.
pub fn is_psd(t: &CMatrix, tol: &TolerancePolicy) -> Result<bool> {
    ensure_square(t)?;
    let floor = tol.psd_floor(spectral_norm(t)?);
    Ok(min_eigenvalue(t)? >= floor)
}

/// Smallest eigenvalue of `upper - lower`; non-negative iff `lower <= upper`.
pub fn loewner_margin(lower: &CMatrix, upper: &CMatrix) -> Result<f64> {
    check_same_shape(lower, upper, "loewner order")?;
    min_eigenvalue(&(upper - lower))
}

/// `lower <= upper` in the Loewner order. The eigenvalue floor is scaled by the
/// larger of the two spectral norms, so cancellation in `upper - lower` is absorbed.
pub fn loewner_leq(lower: &CMatrix, upper: &CMatrix, tol: &TolerancePolicy) -> Result<bool> {
    ensure_square(lower)?;
    let margin = loewner_margin(lower, upper)?;
    let scale = spectral_norm(lower)?.max(spectral_norm(upper)?);
    Ok(margin >= tol.psd_floor(scale))
}

/// Principal square root of a PSD matrix; eigenvalues under the rank cutoff become zero.
pub fn psd_sqrt(w: &CMatrix, tol: &TolerancePolicy) -> Result<CMatrix> {
    psd_sqrt_relative_to(w, tol, 0.0)
}

/// Square root of a PSD matrix derived from a parent of spectral norm `scale`.
///
/// Both the PSD floor and the zero cutoff are measured against
/// `max(‖w‖, scale)`; eigenvalues under the rank cutoff are treated as exact
/// zeros, since the square root would otherwise amplify round-off.
pub fn psd_sqrt_relative_to(w: &CMatrix, tol: &TolerancePolicy, scale: f64) -> Result<CMatrix> {
    ensure_square(w)?;
    let (values, _) = eigh(w)?;
    let norm = values
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()))
        .max(scale);
    check_psd_floor(&values, tol.psd_floor(norm))?;
    let cut = tol.rank_cutoff(norm, w.nrows(), w.ncols());
    hermitian_apply(w, |lam| if lam <= cut { 0.0 } else { lam.sqrt() })
}

fn check_psd_floor(ascending: &[f64], floor: f64) -> Result<()> {
    let min = ascending.first().copied().unwrap_or(0.0);
    if min < floor {
        Err(Error::NotPsd {
            min_eigenvalue: min,
            floor,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_same_shape(a: &CMatrix, b: &CMatrix, context: &'static str) -> Result<()> {
    if a.shape() == b.shape() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected: dims(a.nrows(), a.ncols()),
            found: dims(b.nrows(), b.ncols()),
        })
    }
}

/// Orthonormal basis of a subspace of `C^n` together with its orthogonal projector.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: CMatrix,
    projector: CMatrix,
}

impl SubspaceBasis {
    /// Wraps a matrix whose columns are already orthonormal.
    pub fn from_orthonormal(basis: CMatrix) -> Self {
        let projector = hermitian_part(&(&basis * basis.adjoint()));
        Self {
            ambient_dim: basis.nrows(),
            basis,
            projector,
        }
    }

    /// Span of the columns of an arbitrary matrix.
    pub fn span_of(columns: &CMatrix, tol: &TolerancePolicy) -> Result<Self> {
        range_basis(columns, tol)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_orthonormal(CMatrix::zeros(ambient_dim, 0))
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Self::from_orthonormal(CMatrix::identity(ambient_dim, ambient_dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn projector(&self) -> &CMatrix {
        &self.projector
    }

    /// Orthonormal basis of the orthogonal complement.
    pub fn orthogonal_complement(&self) -> Result<SubspaceBasis> {
        let n = self.ambient_dim;
        if self.dim() == 0 {
            return Ok(Self::whole(n));
        }
        if self.dim() >= n {
            return Ok(Self::zero(n));
        }
        // Eigenvalues of I - P are 0 or 1; keep the unit eigenspace.
        let complement = CMatrix::identity(n, n) - &self.projector;
        let (values, vectors) = eigh(&complement)?;
        let keep: Vec<usize> = (0..n).filter(|&j| values[j] > 0.5).collect();
        let basis = CMatrix::from_fn(n, keep.len(), |i, j| vectors[(i, keep[j])]);
        Ok(Self::from_orthonormal(basis))
    }

    /// Largest distance `‖(I - P) v‖` over the columns `v` of `vectors`.
    pub fn containment_residual(&self, vectors: &CMatrix) -> Result<f64> {
        if vectors.nrows() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "subspace containment",
                expected: format!("{} rows", self.ambient_dim),
                found: format!("{} rows", vectors.nrows()),
            });
        }
        let outside = vectors - &self.projector * vectors;
        Ok(outside
            .column_iter()
            .map(|c| c.norm())
            .fold(0.0_f64, f64::max))
    }

    /// `other ⊆ self` within `residual_abs`.
    pub fn contains(&self, other: &SubspaceBasis, tol: &TolerancePolicy) -> Result<bool> {
        Ok(self.containment_residual(&other.basis)? <= tol.residual_abs)
    }
}

/// Orthonormal basis of `R(T)`.
pub fn range_basis(t: &CMatrix, tol: &TolerancePolicy) -> Result<SubspaceBasis> {
    let dec = svd(t)?;
    let r = dec.rank(tol);
    Ok(SubspaceBasis::from_orthonormal(
        dec.left.columns(0, r).into_owned(),
    ))
}

/// Orthonormal basis of `N(T)`, the complement of the row space.
pub fn null_basis(t: &CMatrix, tol: &TolerancePolicy) -> Result<SubspaceBasis> {
    let dec = svd(t)?;
    let r = dec.rank(tol);
    let row_space = SubspaceBasis::from_orthonormal(dec.right.columns(0, r).into_owned());
    row_space.orthogonal_complement()
}

/// `S1 + S2`: concatenate the bases and re-orthonormalise with the rank cutoff.
pub fn subspace_sum(
    s1: &SubspaceBasis,
    s2: &SubspaceBasis,
    tol: &TolerancePolicy,
) -> Result<SubspaceBasis> {
    if s1.ambient_dim != s2.ambient_dim {
        return Err(Error::DimensionMismatch {
            context: "subspace sum",
            expected: format!("ambient dimension {}", s1.ambient_dim),
            found: format!("ambient dimension {}", s2.ambient_dim),
        });
    }
    let n = s1.ambient_dim;
    let (k1, k2) = (s1.dim(), s2.dim());
    let mut stacked = CMatrix::zeros(n, k1 + k2);
    stacked.columns_mut(0, k1).copy_from(&s1.basis);
    stacked.columns_mut(k1, k2).copy_from(&s2.basis);
    range_basis(&stacked, tol)
}

/// `S1 ∩ S2`, computed as the kernel of the stacked complement projectors.
pub fn subspace_intersection(
    s1: &SubspaceBasis,
    s2: &SubspaceBasis,
    tol: &TolerancePolicy,
) -> Result<SubspaceBasis> {
    if s1.ambient_dim != s2.ambient_dim {
        return Err(Error::DimensionMismatch {
            context: "subspace intersection",
            expected: format!("ambient dimension {}", s1.ambient_dim),
            found: format!("ambient dimension {}", s2.ambient_dim),
        });
    }
    let n = s1.ambient_dim;
    let id = CMatrix::identity(n, n);
    let mut stacked = CMatrix::zeros(2 * n, n);
    stacked.rows_mut(0, n).copy_from(&(&id - &s1.projector));
    stacked.rows_mut(n, n).copy_from(&(&id - &s2.projector));
    null_basis(&stacked, tol)
}

/// `S^{⊥_W} = { x : <Wx, y> = 0 for all y in S } = N(basis_S* W)`.
pub fn w_orthogonal_complement(
    s: &SubspaceBasis,
    w: &PsdWeight,
    tol: &TolerancePolicy,
) -> Result<SubspaceBasis> {
    if s.ambient_dim != w.dim() {
        return Err(Error::DimensionMismatch {
            context: "W-orthogonal complement",
            expected: format!("ambient dimension {}", w.dim()),
            found: format!("ambient dimension {}", s.ambient_dim),
        });
    }
    null_basis(&(s.basis.adjoint() * w.matrix()), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn close(a: &CMatrix, b: &CMatrix, eps: f64) -> bool {
        a.shape() == b.shape() && (a - b).norm() <= eps
    }

    #[test]
    fn svd_reconstructs_rank_deficient_rectangles() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for (m, n, r) in [(3, 5, 2), (5, 3, 2), (4, 5, 2), (2, 5, 2), (6, 6, 3)] {
            let t = crate::generate::random_with_rank(&mut rng, m, n, r, 0.5, 2.0);
            let dec = svd(&t).unwrap();
            assert!(close(&dec.reconstruct(), &t, 1e-13), "{m}x{n}");
            let kernel = null_basis(&t, &tol()).unwrap();
            assert_eq!(kernel.dim(), n - r);
            assert!((&t * kernel.basis()).norm() < 1e-13);
        }
    }

    #[test]
    fn svd_small_cases() {
        assert_eq!(singular_values(&diag(&[2.0, 0.0])).unwrap(), vec![2.0, 0.0]);
        let s = singular_values(&CMatrix::identity(3, 3)).unwrap();
        assert!(s.iter().all(|v| (v - 1.0).abs() < 1e-14));
        let shift = real_matrix(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let s = singular_values(&shift).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-14 && s[1].abs() < 1e-14);
    }

    #[test]
    fn svd_orders_and_reconstructs() {
        let t = real_matrix(&[&[1.0, 5.0, 0.0], &[0.0, 3.0, 0.0]]);
        let dec = svd(&t).unwrap();
        assert!(dec.singular_values.windows(2).all(|w| w[0] >= w[1]));
        assert!(close(&dec.reconstruct(), &t, 1e-12));
        let tall = t.transpose();
        assert!(close(&svd(&tall).unwrap().reconstruct(), &tall, 1e-12));
    }

    #[test]
    fn pinv_trivial_cases() {
        let p = pinv(&diag(&[2.0, 0.0]), &tol()).unwrap();
        assert!(close(&p, &diag(&[0.5, 0.0]), 1e-14));
        let i4 = CMatrix::identity(4, 4);
        assert!(close(&pinv(&i4, &tol()).unwrap(), &i4, 1e-14));
        assert_eq!(
            pinv(&CMatrix::zeros(2, 3), &tol()).unwrap(),
            CMatrix::zeros(3, 2)
        );
    }

    #[test]
    fn range_and_null_of_simple_matrices() {
        let t = diag(&[1.0, 0.0]);
        let r = range_basis(&t, &tol()).unwrap();
        let n = null_basis(&t, &tol()).unwrap();
        assert_eq!((r.dim(), n.dim()), (1, 1));
        assert!(close(r.projector(), &diag(&[1.0, 0.0]), 1e-14));
        assert!(close(n.projector(), &diag(&[0.0, 1.0]), 1e-14));

        let b = real_matrix(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let nb = null_basis(&b, &tol()).unwrap();
        assert_eq!(nb.dim(), 1);
        assert!(close(nb.projector(), &diag(&[1.0, 0.0]), 1e-14));

        let z = CMatrix::zeros(2, 2);
        assert_eq!(range_basis(&z, &tol()).unwrap().dim(), 0);
        assert_eq!(null_basis(&z, &tol()).unwrap().dim(), 2);
    }

    #[test]
    fn subspace_sum_cases() {
        let e1 = SubspaceBasis::span_of(&real_matrix(&[&[1.0], &[0.0]]), &tol()).unwrap();
        let e2 = SubspaceBasis::span_of(&real_matrix(&[&[0.0], &[1.0]]), &tol()).unwrap();
        assert_eq!(subspace_sum(&e1, &e2, &tol()).unwrap().dim(), 2);
        let same = subspace_sum(&e1, &e1, &tol()).unwrap();
        assert_eq!(same.dim(), 1);
        assert!(close(same.projector(), e1.projector(), 1e-14));
        let other = SubspaceBasis::zero(3);
        assert!(matches!(
            subspace_sum(&e1, &other, &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn w_orthogonal_complement_cases() {
        let e1 = SubspaceBasis::span_of(&real_matrix(&[&[1.0], &[0.0]]), &tol()).unwrap();
        let id = PsdWeight::new(CMatrix::identity(2, 2), &tol()).unwrap();
        let c = w_orthogonal_complement(&e1, &id, &tol()).unwrap();
        assert!(close(c.projector(), &diag(&[0.0, 1.0]), 1e-14));

        let zero = PsdWeight::new(CMatrix::zeros(2, 2), &tol()).unwrap();
        assert_eq!(
            w_orthogonal_complement(&e1, &zero, &tol()).unwrap().dim(),
            2
        );

        // P_S W x = (x1 + x2, 0) vanishes exactly on span (1, -1).
        let ones = PsdWeight::new(real_matrix(&[&[1.0, 1.0], &[1.0, 1.0]]), &tol()).unwrap();
        let c = w_orthogonal_complement(&e1, &ones, &tol()).unwrap();
        let expected = real_matrix(&[&[0.5, -0.5], &[-0.5, 0.5]]);
        assert_eq!(c.dim(), 1);
        assert!(close(c.projector(), &expected, 1e-14));
    }

    #[test]
    fn psd_and_loewner() {
        let i2 = CMatrix::identity(2, 2);
        let two = &i2 * c64(2.0, 0.0);
        assert!(loewner_leq(&i2, &two, &tol()).unwrap());
        assert!(!loewner_leq(&two, &i2, &tol()).unwrap());
        assert!(!is_psd(&diag(&[1.0, -1.0]), &tol()).unwrap());
        assert!(is_psd(&diag(&[1.0, 0.0]), &tol()).unwrap());
        assert!(matches!(
            is_psd(&CMatrix::zeros(2, 3), &tol()),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn psd_sqrt_cases() {
        let r = psd_sqrt(&diag(&[4.0, 9.0]), &tol()).unwrap();
        assert!(close(&r, &diag(&[2.0, 3.0]), 1e-14));
        let i3 = CMatrix::identity(3, 3);
        assert!(close(&psd_sqrt(&i3, &tol()).unwrap(), &i3, 1e-14));
        assert!(matches!(
            psd_sqrt(&diag(&[1.0, -0.5]), &tol()),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn non_finite_rejected() {
        let bad = [c64(f64::NAN, 0.0), c64(1.0, 0.0)];
        assert_eq!(from_row_major(1, 2, &bad), Err(Error::NonFinite));
        assert!(matches!(
            from_row_major(2, 2, &bad),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tolerance_validation() {
        assert!(tol().validate().is_ok());
        let bad = TolerancePolicy {
            psd_tol: 1e-3,
            ..tol()
        };
        assert!(bad.validate().is_err());
    }
}
