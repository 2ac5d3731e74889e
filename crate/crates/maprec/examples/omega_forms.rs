//! Compute stable forms and inspect the irregular pole structure.
//!
//! ```bash
//! cargo run --example omega_forms
//! ```
//!
//! The bipartite curve is irregular: `y` has a simple pole at the
//! ramification point `z = -1`, which caps the pole orders of every
//! `ω_{g,n}` there at `2g` instead of the regular-curve bound `6g-4+2n`.

use maprec::curve::{Model, SpectralCurve};
use maprec::recursion::{Engine, Pole};
use maprec::weights::WeightConfig;

fn main() -> maprec::Result<()> {
    // zero weights: dessins-like closed forms
    let cfg = WeightConfig::empty(0);
    for model in [Model::Bipartite, Model::Ordinary] {
        let engine = Engine::new(SpectralCurve::build(model, &cfg)?);
        let w = engine.omega(1, 1)?;
        println!("{} ω_(1,1) = {}", model.name(), w);
    }
    println!();

    // pole orders across topologies for the irregular bipartite curve
    let cfg = WeightConfig::new(&[4], 2)?;
    let engine = Engine::new(SpectralCurve::build(Model::Bipartite, &cfg)?);
    println!("bipartite pole orders (irregular bound 2g at -1, 6g-4+2n at +1):");
    for (g, n) in [(0u32, 3u32), (1, 1), (1, 2), (2, 1)] {
        let w = engine.omega(g, n)?;
        println!(
            "  ω_({g},{n}): order {} at +1 (bound {}), order {} at -1 (bound {})",
            w.max_order_at(Pole::Plus),
            6 * g as i64 - 4 + 2 * n as i64,
            w.max_order_at(Pole::Minus),
            2 * g
        );
    }
    println!();

    // every stable form is leg-symmetric, residue-free at ±1 and obeys the
    // Galois antisymmetry ω(z)/dx(z) + ω(1/z)/dx(1/z) = 0
    println!("structural invariants of ω_(1,2):");
    let w = engine.omega(1, 2)?;
    println!("  leg symmetry:        {}", w.is_leg_symmetric());
    println!("  residue-free at ±1:  {}", w.residue_free());
    println!("  Galois antisymmetry: {}", w.galois_antisymmetric());
    Ok(())
}
