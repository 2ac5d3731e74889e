//! Maps with several face degrees and rational face weights.
//!
//! ```bash
//! cargo run --example mixed_weights
//! ```
//!
//! Any finite set of even weights can be active at once; a weight may also
//! carry a rational scale, which multiplies the formal variable in every
//! formula.

use maprec::counts::counts;
use maprec::curve::{Model, SpectralCurve};
use maprec::rat::rat;
use maprec::recursion::Engine;
use maprec::weights::WeightConfig;

fn main() -> maprec::Result<()> {
    // squares and hexagons together, three internal faces
    let cfg = WeightConfig::new(&[4, 6], 3)?;
    let bip = Engine::new(SpectralCurve::build(Model::Bipartite, &cfg)?);
    println!("bipartite maps with square (t4) and hexagon (t6) faces:");
    println!("  γ² = {}", bip.curve().gamma_sq());
    for (g, lengths) in [(0u32, vec![2u32]), (0, vec![4]), (1, vec![2]), (1, vec![6])] {
        let t = counts(&bip, g, &lengths)?;
        println!("  {} = {}", t.label(), t.series());
    }
    println!();

    // a scaled weight: t4 entering with coefficient 1/2
    let cfg = WeightConfig::with_scales(&[(4, rat(1, 2))], 4)?;
    let bip = Engine::new(SpectralCurve::build(Model::Bipartite, &cfg)?);
    println!("quadrangle weight scaled by 1/2 (counts pick up 2^-m):");
    let t = counts(&bip, 0, &[2])?;
    println!("  {} = {}", t.label(), t.series());
    println!();

    // degree-2 faces alone: γ² becomes the geometric series
    let cfg = WeightConfig::new(&[2], 5)?;
    let bip = Engine::new(SpectralCurve::build(Model::Bipartite, &cfg)?);
    println!("digon weights only: γ² = {}", bip.curve().gamma_sq());
    let t = counts(&bip, 0, &[2])?;
    println!("  {} = {}", t.label(), t.series());
    Ok(())
}
