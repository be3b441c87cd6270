//! A critical point of ‖AXB - C‖_p that solves neither normal equation.
//!
//! cargo run --example schatten_counterexample -- [a] [p]

use weighted_axb::generate::{example3, example3_candidate};
use weighted_axb::schatten::schatten_norm;
use weighted_axb::solver::{critical_residual, descent_check_fp, normal_residual_p2};
use weighted_axb::TolerancePolicy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let a: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2.0);
    let p: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3.0);
    let tol = TolerancePolicy::default();
    let inst = example3(a, p);
    let x0 = example3_candidate();

    println!("a = {a}, p = {p}, C = {:.4}", inst.c());
    println!("A X₀ B = {:.4}", inst.a() * &x0 * inst.b());
    println!(
        "‖AX₀B - C‖_p = {:.12} = ‖C‖_p = {:.12}",
        inst.objective(&x0)?,
        schatten_norm(inst.c(), p)?
    );
    println!(
        "critical residual     ‖B|R|^(p-1)U*A‖ = {:.2e}",
        critical_residual(&inst, &x0, &tol)?.norm()
    );
    println!(
        "Frobenius normal residual ‖A*(AX₀B - C)B*‖ = {:.6}",
        normal_residual_p2(&inst, &x0)?.norm()
    );
    let d = descent_check_fp(&inst, &x0, 500, 9, &tol)?;
    println!(
        "smallest of {} sampled directional derivatives: {:.3e}",
        d.trials, d.min_derivative
    );
    Ok(())
}
