//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so that every criterion reports even when an earlier one fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weighted_axb::generate::{
    example1, example3, example3_candidate, feasible_instance, random_complex, random_instance,
    random_psd, random_unitary, with_singular_values, Shape,
};
use weighted_axb::linalg::{c64, loewner_margin, min_eigenvalue, range_basis};
use weighted_axb::schatten::{directional_derivative, schatten_norm, weighted_seminorm};
use weighted_axb::shorted::{random_oblique_projection, shorted_operator};
use weighted_axb::solver::{
    brute_force_p2_oracle, critical_residual, h_map, normal_residual_full, normal_residual_p2,
    operator_order_min, schatten_min, OrderStatus, SchattenOutcome,
};
use weighted_axb::{CMatrix, ProblemInstance, PsdWeight, SubspaceBasis, TolerancePolicy};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: weighted_axb::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn unit(mut y: CMatrix) -> CMatrix {
    let n = y.norm();
    y /= c64(n, 0.0);
    y
}

fn example_one() -> Outcome {
    let inst = example1();
    let order = lib(operator_order_min(&inst, &tol()))?;
    ensure(!order.conditions.kernel_condition, || {
        "kernel condition reported as holding".into()
    })?;
    ensure(order.status == OrderStatus::InfimumUnknown, || {
        format!("status {:?}", order.status)
    })?;
    let SchattenOutcome::Minimum(min) = lib(schatten_min(&inst, &tol()))? else {
        return Err("p = 2 solver found no minimum".into());
    };
    ensure((min.direct_value - 1.0).abs() <= 1e-8, || {
        format!("min value {}", min.direct_value)
    })?;
    let x = min.minimizer().norm();
    ensure(x <= 1e-8, || format!("minimiser norm {x}"))?;
    let shorted = lib(inst.shorted_value(&tol()))?.norm();
    ensure(shorted <= 1e-10, || format!("‖C*W_/R(A)C‖ = {shorted}"))?;
    Ok(format!(
        "min {:.12}, ‖x‖ {x:.1e}, ‖C*W_/R(A)C‖ {shorted:.1e}",
        min.direct_value
    ))
}

fn example_three() -> Outcome {
    let x0 = example3_candidate();
    let inst = example3(2.0, 3.0);
    let crit = lib(critical_residual(&inst, &x0, &tol()))?.norm();
    ensure(crit <= 1e-10, || format!("critical residual {crit}"))?;
    let p2 = lib(normal_residual_p2(&inst, &x0))?.norm();
    ensure((p2 - 8.0_f64.sqrt()).abs() <= 1e-8, || {
        format!("p = 2 residual {p2}")
    })?;
    let f3 = lib(inst.objective(&x0))?;
    ensure((f3 - 9.0_f64.cbrt()).abs() <= 1e-8, || {
        format!("F_3(X₀)^(1/3) = {f3}")
    })?;
    let at2 = lib(normal_residual_p2(&example3(2.0, 2.0), &x0))?.norm();
    ensure(at2 <= 1e-10, || format!("p = 2 residual at p = 2: {at2}"))?;
    Ok(format!(
        "critical {crit:.1e}, p2 residual {p2:.10}, F_3^(1/3) {f3:.12}, at p = 2 {at2:.1e}"
    ))
}

fn manifold_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst_normal, mut worst_eig) = (0.0_f64, f64::INFINITY);
    for i in 0..100 {
        let shape = Shape::random(&mut rng, 8);
        let inst = feasible_instance(&mut rng, shape, 2.0);
        let res = lib(operator_order_min(&inst, &tol()))?;
        let manifold = res
            .manifold
            .ok_or_else(|| format!("instance {i} {shape:?}: status {:?}", res.status))?;
        let inf = res.inf_value.expect("present with a manifold");
        for _ in 0..20 {
            let x = manifold.map(&random_complex(&mut rng, shape.k, shape.l));
            let normal = lib(normal_residual_full(&inst, &x))?.norm();
            let eig = lib(min_eigenvalue(&(lib(h_map(&inst, &x))? - &inf)))?;
            worst_normal = worst_normal.max(normal);
            worst_eig = worst_eig.min(eig);
            ensure(normal <= 1e-8, || {
                format!("instance {i}: normal residual {normal:e}")
            })?;
            ensure(eig >= -1e-8, || {
                format!("instance {i}: min eigenvalue {eig:e}")
            })?;
        }
    }
    Ok(format!(
        "worst ‖A*W(AXB - C)‖ {worst_normal:.1e}, worst min eig {worst_eig:.1e}"
    ))
}

fn oracle_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0_f64;
    let mut infeasible = 0;
    for i in 0..100 {
        let shape = Shape::random(&mut rng, 6);
        let inst = if i % 2 == 0 {
            feasible_instance(&mut rng, shape, 2.0)
        } else {
            random_instance(&mut rng, shape, 2.0)
        };
        let SchattenOutcome::Minimum(min) = lib(schatten_min(&inst, &tol()))? else {
            return Err(format!("instance {i}: p = 2 solver found no minimum"));
        };
        infeasible += usize::from(!min.conditions.kernel_condition);
        let oracle = lib(brute_force_p2_oracle(&inst, &tol()))?;
        let gap = (oracle.value - min.direct_value).abs();
        worst = worst.max(gap);
        ensure(gap <= 1e-8, || {
            format!(
                "instance {i}: solver {} vs oracle {}",
                min.direct_value, oracle.value
            )
        })?;
        let p2 = lib(normal_residual_p2(&inst, min.minimizer()))?.norm();
        ensure(p2 <= 1e-8, || {
            format!("instance {i}: p = 2 normal residual {p2:e}")
        })?;
    }
    Ok(format!(
        "worst gap {worst:.1e}; {infeasible} instances without the kernel condition"
    ))
}

fn shorted_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0_f64;
    let mut rejected = 0;
    for i in 0..100 {
        let n = rng.random_range(1..=8);
        let rank = rng.random_range(0..=n);
        let k = rng.random_range(0..=n);
        let w = lib(PsdWeight::new(random_psd(&mut rng, n, rank), &tol()))?;
        let s = lib(SubspaceBasis::span_of(
            &random_complex(&mut rng, n, k),
            &tol(),
        ))?;
        let short = lib(shorted_operator(&w, &s, &tol()))?.shorted;
        let zero = CMatrix::zeros(n, n);
        let mut defects = vec![
            -lib(loewner_margin(&zero, &short))?,
            -lib(loewner_margin(&short, w.matrix()))?,
            (s.projector() * &short).norm(),
        ];
        let again = lib(shorted_operator(
            &lib(PsdWeight::new(short.clone(), &tol()))?,
            &s,
            &tol(),
        ))?;
        defects.push((again.shorted - &short).norm());
        let mut drawn = 0;
        while drawn < 20 {
            let Some(e) = lib(random_oblique_projection(&s, &mut rng, 1e3))? else {
                rejected += 1;
                continue;
            };
            drawn += 1;
            defects.push((&e * &e - &e).norm());
            defects.push((&e * s.basis()).norm());
            let ewe = e.adjoint() * w.matrix() * &e;
            defects.push(-lib(loewner_margin(&short, &ewe))?);
        }
        let d = defects.into_iter().fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max(d);
        ensure(d <= 1e-8, || {
            format!("instance {i} (n {n}, rank W {rank}, dim S {k}): defect {d:e}")
        })?;
    }
    Ok(format!(
        "worst defect {worst:.1e}, {rejected} ill-conditioned projections redrawn"
    ))
}

fn derivative_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let h = 1e-5;
    let mut worst = 0.0_f64;
    for p in [1.0, 1.5, 2.0, 3.0] {
        for pair in 0..50 {
            let (m, n) = (rng.random_range(2..=5), rng.random_range(2..=5));
            let r = m.min(n);
            // p = 1 needs rank-deficient points, where the kernel term matters.
            let rank = if p == 1.0 && pair % 2 == 0 {
                rng.random_range(0..r)
            } else {
                r
            };
            let sv: Vec<f64> = (0..rank).map(|_| rng.random_range(0.5..=1.5)).collect();
            let x = with_singular_values(&mut rng, m, n, &sv);
            let y = unit(random_complex(&mut rng, m, n));
            let g = |t: &CMatrix| schatten_norm(t, p).map(|v| v.powf(p));
            let g0 = lib(g(&x))?;
            for phi in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
                let d = lib(directional_derivative(&x, &y, p, phi, &tol()))?;
                let step = &x + &y * Complex64::from_polar(h, phi);
                let fd = (lib(g(&step))? - g0) / h;
                let err = (fd - d).abs();
                worst = worst.max(err);
                ensure(err <= 10.0 * h, || {
                    format!("p {p}, pair {pair} (rank {rank}), φ {phi}: derivative {d} vs difference {fd}")
                })?;
            }
        }
    }
    Ok(format!(
        "worst |finite difference - D_φ G_p| {worst:.1e} at h = {h:e}"
    ))
}

/// Example-3 data moved by unitaries: `A' = U A V*`, `B' = Z B Q`, `C' = U C Q`,
/// for which `X' = V X₀ Z*` gives the same residual up to `U·Q`.
fn rotated_example3(rng: &mut ChaCha8Rng, p: f64) -> Result<(ProblemInstance, CMatrix), String> {
    let a = rng.random_range(1.2..=2.5);
    let base = example3(a, p);
    let (u, v, z, q) = (
        random_unitary(rng, 2),
        random_unitary(rng, 2),
        random_unitary(rng, 2),
        random_unitary(rng, 2),
    );
    let inst = lib(ProblemInstance::new(
        &u * base.a() * v.adjoint(),
        &z * base.b() * &q,
        &u * base.c() * &q,
        PsdWeight::identity(2),
        p,
    ))?;
    Ok((inst, v * example3_candidate() * z.adjoint()))
}

fn critical_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut worst_min, mut least_perturbed) = (0.0_f64, f64::INFINITY);
    let mut minimisers = 0;
    for p in [1.5, 3.0] {
        let mut cases = Vec::new();
        for _ in 0..20 {
            let shape = Shape::random(&mut rng, 6);
            let inst = feasible_instance(&mut rng, shape, p);
            let res = lib(operator_order_min(&inst, &tol()))?;
            let x0 = res
                .manifold
                .ok_or("feasible instance without a minimiser")?
                .particular()
                .clone();
            // The minimiser agrees with the independent p = 2 oracle's fit.
            let oracle = lib(brute_force_p2_oracle(&inst, &tol()))?;
            let fit = (inst.a() * (&x0 - &oracle.x_opt) * inst.b()).norm();
            ensure(fit <= 1e-8, || {
                format!("p = 2 oracle fit differs by {fit:e}")
            })?;
            cases.push((inst, x0));
        }
        for _ in 0..10 {
            cases.push(rotated_example3(&mut rng, p)?);
        }
        for (idx, (inst, x0)) in cases.iter().enumerate() {
            minimisers += 1;
            let r = lib(critical_residual(inst, x0, &tol()))?.norm();
            worst_min = worst_min.max(r);
            ensure(r <= 1e-8, || {
                format!("p {p}, case {idx}: residual {r:e} at a minimiser")
            })?;
        }
        // Perturb along (W^{1/2} A)* G B*, which always moves W^{1/2} A X B.
        let mut perturbed = 0;
        let mut idx = 0;
        while perturbed < 25 {
            let (inst, x0) = &cases[idx % cases.len()];
            idx += 1;
            let wa = inst.w().sqrt() * inst.a();
            let g = random_complex(&mut rng, wa.nrows(), inst.b().ncols());
            let dir = wa.adjoint() * g * inst.b().adjoint();
            if (&wa * &dir * inst.b()).norm() < 1e-6 {
                // W^{1/2} A or B vanishes: every X is a minimiser.
                continue;
            }
            let x = x0 + unit(dir) * c64(0.3, 0.0);
            let r = lib(critical_residual(inst, &x, &tol()))?.norm();
            least_perturbed = least_perturbed.min(r);
            ensure(r > 1e-4, || {
                format!("p {p}: residual {r:e} at a perturbed point")
            })?;
            perturbed += 1;
        }
    }
    Ok(format!(
        "{minimisers} minimisers, worst residual {worst_min:.1e}; 50 perturbed points, smallest residual {least_perturbed:.2e}"
    ))
}

fn norm_bridge_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut worst_formula, mut worst_excess) = (0.0_f64, f64::NEG_INFINITY);
    for i in 0..100 {
        let shape = Shape::random(&mut rng, 8);
        let inst = feasible_instance(&mut rng, shape, 2.0);
        let x0 = lib(operator_order_min(&inst, &tol()))?
            .manifold
            .ok_or("feasible instance without a minimiser")?
            .particular()
            .clone();
        for p in [1.0, 2.0, 3.0] {
            let inst = lib(inst.with_p(p))?;
            let best = lib(weighted_seminorm(&lib(inst.residual(&x0))?, inst.w(), p))?;
            let formula = lib(inst.shorted_norm(&tol()))?;
            worst_formula = worst_formula.max((best - formula).abs());
            ensure((best - formula).abs() <= 1e-8, || {
                format!("instance {i}, p {p}: minimum {best} vs ‖W_/R(A)^1/2 C‖_p {formula}")
            })?;
            for j in 0..50 {
                let g = random_complex(&mut rng, shape.k, shape.l);
                // Half far away, half close to the minimiser.
                let x = if j % 2 == 0 {
                    g
                } else {
                    &x0 + g * c64(1e-3, 0.0)
                };
                let other = lib(weighted_seminorm(&lib(inst.residual(&x))?, inst.w(), p))?;
                worst_excess = worst_excess.max(best - other);
                ensure(best <= other + 1e-8, || {
                    format!("instance {i}, p {p}: {best} > {other}")
                })?;
            }
        }
    }
    Ok(format!(
        "worst |minimum - formula| {worst_formula:.1e}, largest (minimum - other) {worst_excess:.1e}"
    ))
}

fn discrepancy_guard() -> Outcome {
    let SchattenOutcome::Minimum(min) = lib(schatten_min(&example1(), &tol()))? else {
        return Err("no minimum".into());
    };
    ensure(!min.formula_agrees, || "disagreement flag missing".into())?;
    ensure((min.direct_value - 1.0).abs() <= 1e-8, || {
        format!("direct value {}", min.direct_value)
    })?;
    ensure(min.formula_value.abs() <= 1e-8, || {
        format!("formula value {}", min.formula_value)
    })?;
    let ra = lib(range_basis(example1().a(), &tol()))?;
    Ok(format!(
        "direct {:.1}, formula {:.1}, flagged (dim R(A) = {})",
        min.direct_value,
        min.formula_value,
        ra.dim()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1 first example reproduction",
            Duration::from_secs(1),
            example_one,
        ),
        (
            "2 second example reproduction",
            Duration::from_secs(1),
            example_three,
        ),
        (
            "3 solution-manifold suite",
            Duration::from_secs(30),
            manifold_suite,
        ),
        (
            "4 p = 2 oracle equivalence",
            Duration::from_secs(30),
            oracle_suite,
        ),
        (
            "5 shorted-operator suite",
            Duration::from_secs(60),
            shorted_suite,
        ),
        (
            "6 directional-derivative suite",
            Duration::from_secs(30),
            derivative_suite,
        ),
        (
            "7 critical-point bidirectionality",
            Duration::from_secs(60),
            critical_suite,
        ),
        (
            "8 norm-order bridge",
            Duration::from_secs(60),
            norm_bridge_suite,
        ),
        (
            "9 formula disagreement guard",
            Duration::from_secs(1),
            discrepancy_guard,
        ),
    ];
    let mut failures = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {budget:?} budget")),
            Err(e) => (false, e),
        };
        failures += usize::from(!ok);
        println!(
            "{} criterion {name} ({:.0} ms): {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64() * 1e3
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
