//! Schatten norms, the polar decomposition and a directional derivative
//! compared with a finite difference.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weighted_axb::generate::{random_complex, with_singular_values};
use weighted_axb::schatten::{directional_derivative, polar, schatten_norm};
use weighted_axb::TolerancePolicy;

fn main() -> weighted_axb::Result<()> {
    let tol = TolerancePolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = with_singular_values(&mut rng, 3, 3, &[1.5, 0.8, 0.0]);
    for p in [1.0, 1.5, 2.0, 3.0] {
        println!("‖X‖_{p} = {:.6}", schatten_norm(&x, p)?);
    }

    let parts = polar(&x, &tol)?;
    println!(
        "rank {}, ‖U|X| - X‖ = {:.2e}",
        parts.rank(),
        (&parts.u * &parts.abs_t - &x).norm()
    );

    let mut y = random_complex(&mut rng, 3, 3);
    y /= Complex64::new(y.norm(), 0.0);
    let phi = 0.3;
    let h = 1e-6;
    for p in [1.0, 2.0, 3.0] {
        let g = |m: &weighted_axb::CMatrix| schatten_norm(m, p).map(|v| v.powf(p));
        let d = directional_derivative(&x, &y, p, phi, &tol)?;
        let step = &x + &y * Complex64::from_polar(h, phi);
        let fd = (g(&step)? - g(&x)?) / h;
        println!("p = {p}: D_φ G_p = {d:.6}, finite difference {fd:.6}");
    }
    Ok(())
}
