//! W-least-squares solutions and W-inverses with a singular weight.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weighted_axb::generate::{random_complex, random_psd, random_with_rank};
use weighted_axb::schatten::weighted_seminorm;
use weighted_axb::wls::{w_inverse, w_lss};
use weighted_axb::{CMatrix, CVector, PsdWeight, TolerancePolicy};

fn main() -> weighted_axb::Result<()> {
    let tol = TolerancePolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_with_rank(&mut rng, 6, 4, 3, 0.5, 2.0);
    let w = PsdWeight::new(random_psd(&mut rng, 6, 4), &tol)?;
    let x = random_complex(&mut rng, 6, 1).column(0).into_owned();

    let u = w_lss(&a, &w, &x, &tol)?;
    let normal = a.adjoint() * w.matrix() * (&a * &u - &x);
    let residual_norm = |z: &CVector| {
        let r = &a * z - &x;
        weighted_seminorm(
            &CMatrix::from_column_slice(r.nrows(), 1, r.as_slice()),
            &w,
            2.0,
        )
    };
    let best = residual_norm(&u)?;
    println!(
        "‖A*W(Au - x)‖ = {:.2e}, ‖Au - x‖_W = {best:.6}",
        normal.norm()
    );
    let worst_gap = (0..100)
        .map(|_| {
            let z = random_complex(&mut rng, 4, 1).column(0).into_owned();
            residual_norm(&z).map(|v| v - best)
        })
        .collect::<weighted_axb::Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    println!("smallest excess over 100 random z: {worst_gap:.4}");

    let b = random_complex(&mut rng, 6, 2);
    let inv = w_inverse(&a, &w, &b, &tol)?;
    let dim_free = 4 - weighted_axb::linalg::rank(inv.left_factor(), &tol)?;
    println!("W-inverses of A in R(B): particular solution plus a {dim_free}-dimensional kernel per column");
    for _ in 0..3 {
        let y = inv.map(&random_complex(&mut rng, 4, 2));
        let r = a.adjoint() * w.matrix() * (&a * y - &b);
        println!("  manifold point: ‖A*W(AY - B)‖ = {:.2e}", r.norm());
    }
    Ok(())
}
