//! Unstable topologies: disk and cylinder counts.
//!
//! ```bash
//! cargo run --example disks_and_cylinders
//! ```
//!
//! At zero weights the bipartite disk counts are the Catalan numbers
//! (one-face planar bipartite maps are plane trees), and the two-digon
//! cylinder count is 1. Ignoring the vertex colouring doubles each extra
//! boundary: `2^{n-1} T̃^{(0)} = T^{(0)}`.

use maprec::counts::counts;
use maprec::curve::{Model, SpectralCurve};
use maprec::recursion::Engine;
use maprec::weights::WeightConfig;

fn main() -> maprec::Result<()> {
    let cfg = WeightConfig::empty(0);
    let bip = Engine::new(SpectralCurve::build(Model::Bipartite, &cfg)?);
    let ord = Engine::new(SpectralCurve::build(Model::Ordinary, &cfg)?);

    println!("zero-weight disk counts (Catalan numbers):");
    for l in 1..=6u32 {
        let t = counts(&bip, 0, &[2 * l])?;
        println!("  T~^(0)_{} = {}", 2 * l, t.series());
    }
    println!();

    println!("zero-weight cylinder counts and the colouring factor:");
    for (l1, l2) in [(1u32, 1u32), (1, 2), (2, 2), (3, 3)] {
        let tb = counts(&bip, 0, &[2 * l1, 2 * l2])?;
        let to = counts(&ord, 0, &[2 * l1, 2 * l2])?;
        println!(
            "  T~^(0)_{},{} = {:>4}   T^(0)_{},{} = {:>4}   (factor 2)",
            2 * l1,
            2 * l2,
            tb.series(),
            2 * l1,
            2 * l2,
            to.series()
        );
    }
    println!();

    println!("with quadrangle weights (t4, five faces):");
    let cfg = WeightConfig::new(&[4], 5)?;
    let bip = Engine::new(SpectralCurve::build(Model::Bipartite, &cfg)?);
    let disk = counts(&bip, 0, &[2])?;
    println!("  T~^(0)_2 = {}", disk.series());
    let cyl = counts(&bip, 0, &[2, 2])?;
    println!("  T~^(0)_2,2 = {}", cyl.series());
    Ok(())
}
