//! Filter design for sampling and reconstruction with finite frames.
//!
//! A signal `f` is sampled as `B* f` and reconstructed as `A X B* f`, where
//! `A` and `B` are synthesis operators of the reconstruction and sampling
//! frames and `X` is a digital filter. The filter is chosen to minimise the
//! Frobenius distance `‖A X B* - P_{R(A)}‖_2`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generate::{random_complex, random_with_rank};
use crate::linalg::{c64, range_basis, CMatrix, CVector, TolerancePolicy};
use crate::shorted::PsdWeight;
use crate::solver::{
    brute_force_p2_oracle, schatten_min, MinimumRoute, ProblemInstance, SchattenOutcome,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingDemoConfig {
    pub dim: usize,
    pub sampling_rank: usize,
    pub recon_rank: usize,
    /// Use the reconstruction frame for sampling as well.
    pub same_frames: bool,
    pub signals: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct SamplingDemoReport {
    pub filter: CMatrix,
    pub route: MinimumRoute,
    /// `‖A X B* - P_{R(A)}‖_2` at the computed filter.
    pub min_value: f64,
    pub oracle_value: f64,
    pub oracle_agrees: bool,
    /// `‖f - A X B* f‖` for unit signals in `R(A)`.
    pub in_range_errors: Vec<f64>,
    /// `‖f - A X B* f‖` for generic unit signals.
    pub generic_errors: Vec<f64>,
    /// `‖f - P_{R(A)} f‖` for the same generic signals: the best achievable error.
    pub best_errors: Vec<f64>,
}

fn unit(v: CVector) -> CVector {
    let n = v.norm();
    if n == 0.0 {
        v
    } else {
        v / c64(n, 0.0)
    }
}

/// Builds random frames with singular values in `[0.5, 2]`, designs the filter,
/// and measures reconstruction errors.
pub fn run_sampling_demo(
    cfg: &SamplingDemoConfig,
    tol: &TolerancePolicy,
) -> Result<SamplingDemoReport> {
    let n = cfg.dim;
    if n == 0 || cfg.sampling_rank > n || cfg.recon_rank > n {
        return Err(Error::InvalidArgument(format!(
            "ranks must not exceed the dimension (dim {n}, sampling {}, reconstruction {})",
            cfg.sampling_rank, cfg.recon_rank
        )));
    }
    if cfg.same_frames && cfg.sampling_rank != cfg.recon_rank {
        return Err(Error::InvalidArgument(
            "identical frames need equal sampling and reconstruction ranks".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let a = random_with_rank(&mut rng, n, n, cfg.recon_rank, 0.5, 2.0);
    let b = if cfg.same_frames {
        a.clone()
    } else {
        random_with_rank(&mut rng, n, n, cfg.sampling_rank, 0.5, 2.0)
    };
    let target = range_basis(&a, tol)?.projector().clone();
    let inst = ProblemInstance::new(
        a.clone(),
        b.adjoint(),
        target.clone(),
        PsdWeight::identity(n),
        2.0,
    )?;
    let SchattenOutcome::Minimum(min) = schatten_min(&inst, tol)? else {
        return Err(Error::InternalAssertion(
            "Frobenius filter design always has a minimum in finite dimensions".into(),
        ));
    };
    let oracle = brute_force_p2_oracle(&inst, tol)?;
    let filter = min.minimizer().clone();
    let recon = &a * &filter * b.adjoint();

    let mut in_range_errors = Vec::with_capacity(cfg.signals);
    let mut generic_errors = Vec::with_capacity(cfg.signals);
    let mut best_errors = Vec::with_capacity(cfg.signals);
    for _ in 0..cfg.signals {
        let f_in = unit(&a * random_complex(&mut rng, n, 1).column(0));
        in_range_errors.push((&f_in - &recon * &f_in).norm());
        let f = unit(random_complex(&mut rng, n, 1).column(0).into_owned());
        generic_errors.push((&f - &recon * &f).norm());
        best_errors.push((&f - &target * &f).norm());
    }
    Ok(SamplingDemoReport {
        filter,
        route: min.route,
        min_value: min.direct_value,
        oracle_value: oracle.value,
        oracle_agrees: (min.direct_value - oracle.value).abs() <= tol.residual_abs,
        in_range_errors,
        generic_errors,
        best_errors,
    })
}
