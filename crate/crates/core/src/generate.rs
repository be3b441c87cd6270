//! Random matrices, feasible-instance generators and the two worked examples.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{c64, diag, null_basis, real_matrix, CMatrix, TolerancePolicy};
use crate::shorted::PsdWeight;
use crate::solver::ProblemInstance;

/// Matrix with i.i.d. standard complex Gaussian entries (unit variance).
pub fn random_complex(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c64(re * scale, im * scale)
    })
}

/// Haar-like unitary from the QR factorisation of a Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    random_complex(rng, n, n).qr().q()
}

/// `rows x cols` matrix with the prescribed singular values (padded with zeros).
pub fn with_singular_values(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    singular_values: &[f64],
) -> CMatrix {
    let left = random_unitary(rng, rows);
    let right = random_unitary(rng, cols);
    let mut sigma = CMatrix::zeros(rows, cols);
    for (i, &s) in singular_values.iter().enumerate().take(rows.min(cols)) {
        sigma[(i, i)] = c64(s, 0.0);
    }
    left * sigma * right.adjoint()
}

/// Rank-`rank` matrix with non-zero singular values drawn from `[lo, hi]`.
pub fn random_with_rank(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    rank: usize,
    lo: f64,
    hi: f64,
) -> CMatrix {
    let sv: Vec<f64> = (0..rank.min(rows).min(cols))
        .map(|_| rng.random_range(lo..=hi))
        .collect();
    with_singular_values(rng, rows, cols, &sv)
}

/// `G G*` with `G` an `n x rank` Gaussian matrix.
pub fn random_psd(rng: &mut impl Rng, n: usize, rank: usize) -> CMatrix {
    let g = random_complex(rng, n, rank);
    crate::linalg::hermitian_part(&(&g * g.adjoint()))
}

/// Shape of a generated instance: `A` is `m x k`, `X` is `k x l`, `B` is `l x n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub m: usize,
    pub k: usize,
    pub l: usize,
    pub n: usize,
}

impl Shape {
    pub fn random(rng: &mut impl Rng, max_dim: usize) -> Self {
        let mut d = || rng.random_range(1..=max_dim);
        Self {
            m: d(),
            k: d(),
            l: d(),
            n: d(),
        }
    }
}

fn random_factors(rng: &mut impl Rng, shape: Shape) -> (CMatrix, CMatrix, CMatrix) {
    let Shape { m, k, l, n } = shape;
    let ra = rng.random_range(0..=m.min(k));
    let rb = rng.random_range(0..=l.min(n));
    let rw = rng.random_range(0..=m);
    let a = random_with_rank(rng, m, k, ra, 0.5, 2.0);
    let b = random_with_rank(rng, l, n, rb, 0.5, 2.0);
    let w = random_psd(rng, m, rw);
    (a, b, w)
}

/// Instance for which both existence conditions hold by construction:
/// `C = A R B + K S`, where the columns of `K` span `N(A* W)`.
pub fn feasible_instance(rng: &mut impl Rng, shape: Shape, p: f64) -> ProblemInstance {
    let tol = TolerancePolicy::default();
    let (a, b, w) = random_factors(rng, shape);
    let r = random_complex(rng, shape.k, shape.l);
    let kernel = null_basis(&(a.adjoint() * &w), &tol).expect("finite generator input");
    let s = random_complex(rng, kernel.dim(), shape.n);
    let c = &a * r * &b + kernel.basis() * s;
    let w = PsdWeight::new(w, &tol).expect("generated weight is PSD");
    ProblemInstance::new(a, b, c, w, p).expect("generated shapes agree")
}

/// Instance with an unconstrained random `C`; the kernel condition generally fails.
pub fn random_instance(rng: &mut impl Rng, shape: Shape, p: f64) -> ProblemInstance {
    let tol = TolerancePolicy::default();
    let (a, b, w) = random_factors(rng, shape);
    let c = random_complex(rng, shape.m, shape.n);
    let w = PsdWeight::new(w, &tol).expect("generated weight is PSD");
    ProblemInstance::new(a, b, c, w, p).expect("generated shapes agree")
}

/// `W = I`, `A = C = diag(1, 0)`, `B = [[0, 1], [0, 0]]`.
pub fn example1() -> ProblemInstance {
    let a = diag(&[1.0, 0.0]);
    let b = real_matrix(&[&[0.0, 1.0], &[0.0, 0.0]]);
    ProblemInstance::new(a.clone(), b, a, PsdWeight::identity(2), 2.0)
        .expect("static example is well formed")
}

/// `W = I`, `A = [[1, 0], [-1, 0]]`, `B = [[a², -1], [a², -1]]`,
/// `C = diag(1, a^{2/(p-1)}) diag(-1, 1) = diag(-1, a^{2/(p-1)})`.
pub fn example3(a: f64, p: f64) -> ProblemInstance {
    let a2 = a * a;
    let amat = real_matrix(&[&[1.0, 0.0], &[-1.0, 0.0]]);
    let b = real_matrix(&[&[a2, -1.0], &[a2, -1.0]]);
    let c = real_matrix(&[&[1.0, 0.0], &[0.0, a.powf(2.0 / (p - 1.0))]])
        * real_matrix(&[&[-1.0, 0.0], &[0.0, 1.0]]);
    ProblemInstance::new(amat, b, c, PsdWeight::identity(2), p)
        .expect("static example is well formed")
}

/// The global minimiser `X₀ = [[1, -1], [0, 0]]` of the second example, for which `A X₀ B = 0`.
pub fn example3_candidate() -> CMatrix {
    real_matrix(&[&[1.0, -1.0], &[0.0, 0.0]])
}
