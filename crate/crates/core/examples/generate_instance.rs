//! Writes a random instance file on which both existence conditions hold.
//!
//! cargo run --example generate_instance -- [out.json] [seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weighted_axb::generate::{feasible_instance, Shape};
use weighted_axb::io::InstanceFile;
use weighted_axb::TolerancePolicy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let out = args.next().unwrap_or_else(|| "feasible.json".into());
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = Shape {
        m: 4,
        k: 3,
        l: 3,
        n: 4,
    };
    let inst = feasible_instance(&mut rng, shape, 2.0);
    let report = inst.conditions(&TolerancePolicy::default())?;
    println!(
        "A {}x{}, B {}x{}, C {}x{}: range condition {}, kernel condition {}",
        shape.m,
        shape.k,
        shape.l,
        shape.n,
        shape.m,
        shape.n,
        report.range_condition,
        report.kernel_condition
    );
    InstanceFile::from_instance(&inst).save(&out)?;
    println!("wrote {out}");
    Ok(())
}
