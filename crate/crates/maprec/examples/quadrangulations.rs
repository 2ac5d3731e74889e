//! Reproduce the quadrangulation count table.
//!
//! ```bash
//! cargo run --example quadrangulations
//! ```
//!
//! One-boundary counts of rooted bipartite and ordinary maps whose
//! internal faces are quadrangles (`t_4` only), through five faces. The
//! bipartite genus-1 and genus-2 columns are OEIS A006300 and A006301.

use maprec::counts::counts;
use maprec::curve::{Model, SpectralCurve};
use maprec::recursion::Engine;
use maprec::weights::WeightConfig;

fn main() -> maprec::Result<()> {
    let cfg = WeightConfig::new(&[4], 5)?;
    let bip = Engine::new(SpectralCurve::build(Model::Bipartite, &cfg)?);
    let ord = Engine::new(SpectralCurve::build(Model::Ordinary, &cfg)?);

    let mut columns = Vec::new();
    for engine in [&bip, &ord] {
        for g in 0..=2u32 {
            let t = counts(engine, g, &[2])?;
            let label = t.label();
            let col = t.single_weight_column()?;
            columns.push((label, col));
        }
    }

    print!("{:>8}", "order");
    for (label, _) in &columns {
        print!("{label:>12}");
    }
    println!();
    for row in 0..=5usize {
        print!("{:>8}", format!("(t4)^{row}"));
        for (_, col) in &columns {
            print!("{:>12}", col[row]);
        }
        println!();
    }

    println!();
    println!("A006300 = nonzero entries of T~^(1)_2; A006301 = nonzero entries of T~^(2)_2.");
    println!("Note: the ordinary genus-2 column is often tabulated shifted by one face;");
    println!("those integers are the boundary-length-4 series (T^(2)_2 = t4 · T^(2)_4):");
    let t = counts(&ord, 2, &[4])?;
    println!("  {} = {}", t.label(), t.series());
    Ok(())
}
