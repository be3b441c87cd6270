//! Loewner-order minimisation on a feasible instance and on an instance
//! where the kernel condition fails but an infimum still exists.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weighted_axb::generate::{example1, feasible_instance, random_complex, Shape};
use weighted_axb::linalg::min_eigenvalue;
use weighted_axb::solver::{h_map, operator_order_min, schatten_min, SchattenOutcome};
use weighted_axb::TolerancePolicy;

fn main() -> weighted_axb::Result<()> {
    let tol = TolerancePolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let inst = feasible_instance(
        &mut rng,
        Shape {
            m: 5,
            k: 3,
            l: 4,
            n: 4,
        },
        2.0,
    );
    let res = operator_order_min(&inst, &tol)?;
    println!("feasible instance: {:?}", res.status);
    let (manifold, inf) = (res.manifold.unwrap(), res.inf_value.unwrap());
    for _ in 0..3 {
        let x = manifold.map(&random_complex(&mut rng, 3, 4));
        let gap = h_map(&inst, &x)? - &inf;
        let other = h_map(&inst, &random_complex(&mut rng, 3, 4))? - &inf;
        println!(
            "  manifold point: ‖H(X) - C*W_/R(A)C‖ = {:.2e}; random X: H(X) - C*W_/R(A)C has min eig {:.2e}, trace {:.3}",
            gap.norm(),
            min_eigenvalue(&other)?,
            other.trace().re
        );
    }

    let ex = example1();
    let res = operator_order_min(&ex, &tol)?;
    println!(
        "W = I, A = C = diag(1, 0), B = [[0, 1], [0, 0]]: {:?}",
        res.status
    );
    println!(
        "  kernel residual ‖A*WC P_N(B)‖ = {}",
        res.conditions.kernel_residual
    );
    if let SchattenOutcome::Minimum(min) = schatten_min(&ex, &tol)? {
        println!(
            "  Frobenius minimum {} at X = 0, formula value {}, agree: {}",
            min.direct_value, min.formula_value, min.formula_agrees
        );
    }
    Ok(())
}
