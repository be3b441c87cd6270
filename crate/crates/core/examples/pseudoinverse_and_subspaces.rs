//! Pseudoinverse, ranges, kernels and W-orthogonal complements on a
//! rank-deficient complex matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weighted_axb::generate::{random_psd, random_with_rank};
use weighted_axb::linalg::{
    null_basis, pinv, range_basis, subspace_intersection, subspace_sum, w_orthogonal_complement,
};
use weighted_axb::{PsdWeight, TolerancePolicy};

fn main() -> weighted_axb::Result<()> {
    let tol = TolerancePolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_with_rank(&mut rng, 5, 4, 2, 0.5, 2.0);
    let a_pinv = pinv(&a, &tol)?;

    // The four Moore–Penrose identities.
    println!("‖A A† A - A‖     = {:.2e}", (&a * &a_pinv * &a - &a).norm());
    println!(
        "‖A† A A† - A†‖   = {:.2e}",
        (&a_pinv * &a * &a_pinv - &a_pinv).norm()
    );
    let aap = &a * &a_pinv;
    let apa = &a_pinv * &a;
    println!("‖(A A†)* - A A†‖ = {:.2e}", (aap.adjoint() - &aap).norm());
    println!("‖(A† A)* - A† A‖ = {:.2e}", (apa.adjoint() - &apa).norm());

    let range = range_basis(&a, &tol)?;
    let kernel = null_basis(&a, &tol)?;
    println!("dim R(A) = {}, dim N(A) = {}", range.dim(), kernel.dim());

    let w = PsdWeight::new(random_psd(&mut rng, 5, 3), &tol)?;
    let range_w = w_orthogonal_complement(&range, &w, &tol)?;
    let sum = subspace_sum(&range, &range_w, &tol)?;
    let meet = subspace_intersection(&range, &range_w, &tol)?;
    println!(
        "dim R(A)^⊥W = {}, dim (R(A) + R(A)^⊥W) = {}, dim (R(A) ∩ R(A)^⊥W) = {}",
        range_w.dim(),
        sum.dim(),
        meet.dim()
    );
    Ok(())
}
