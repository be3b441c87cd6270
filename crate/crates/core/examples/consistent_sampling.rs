//! Filter design for sampling with one frame and reconstructing with another.

use weighted_axb::sampling::{run_sampling_demo, SamplingDemoConfig};
use weighted_axb::TolerancePolicy;

fn main() -> weighted_axb::Result<()> {
    let tol = TolerancePolicy::default();
    for (k, r, same) in [(3, 3, true), (4, 2, false), (2, 4, false)] {
        let cfg = SamplingDemoConfig {
            dim: 6,
            sampling_rank: k,
            recon_rank: r,
            same_frames: same,
            signals: 20,
            seed: 1,
        };
        let rep = run_sampling_demo(&cfg, &tol)?;
        let max = |v: &[f64]| v.iter().copied().fold(0.0_f64, f64::max);
        println!(
            "sampling rank {k}, reconstruction rank {r}{}: ‖AXB* - P‖ = {:.6} (oracle {:.6}), \
             worst in-range error {:.2e}, worst generic error {:.3} vs best {:.3}",
            if same { " (same frame)" } else { "" },
            rep.min_value,
            rep.oracle_value,
            max(&rep.in_range_errors),
            max(&rep.generic_errors),
            max(&rep.best_errors),
        );
    }
    Ok(())
}
