//! Shorted operator of a weight to a subspace, with its extremal property
//! checked against random oblique projections.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weighted_axb::generate::{random_complex, random_psd};
use weighted_axb::linalg::real_matrix;
use weighted_axb::shorted::{
    shorted_infimum_witness, shorted_kernel_range_check, shorted_operator,
};
use weighted_axb::{PsdWeight, SubspaceBasis, TolerancePolicy};

fn main() -> weighted_axb::Result<()> {
    let tol = TolerancePolicy::default();

    let w = PsdWeight::new(real_matrix(&[&[2.0, 1.0], &[1.0, 1.0]]), &tol)?;
    let s = SubspaceBasis::span_of(&real_matrix(&[&[1.0], &[0.0]]), &tol)?;
    let pair = shorted_operator(&w, &s, &tol)?;
    println!("W = [[2, 1], [1, 1]], S = span e1");
    println!("W_/S = {:.6}", pair.shorted);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let w = PsdWeight::new(random_psd(&mut rng, 6, 4), &tol)?;
    let s = SubspaceBasis::span_of(&random_complex(&mut rng, 6, 2), &tol)?;
    let witness = shorted_infimum_witness(&w, &s, 50, 1, &tol)?;
    println!(
        "random W (rank 4) and S (dim 2): W_/S ≤ E*WE for {} projections: {} (min margin {:.3e}, {} draws rejected)",
        witness.trials, witness.all_hold, witness.min_margin, witness.rejected_draws
    );
    let kr = shorted_kernel_range_check(&w, &s, &tol)?;
    println!("kernel and range properties hold: {}", kr.all_pass);
    Ok(())
}
