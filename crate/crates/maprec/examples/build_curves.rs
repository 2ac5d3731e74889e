//! Build the three spectral curves and inspect their data.
//!
//! ```bash
//! cargo run --example build_curves
//! ```
//!
//! Prints `γ²`, the reduced `u`-coefficients, `x`, `y` and the branch
//! points for each model over the quadrangulation weight, then verifies
//! the exact identities tying the ordinary and bipartite curves together.

use maprec::curve::{check_curve_relations, Model, SpectralCurve};
use maprec::weights::WeightConfig;

fn main() -> maprec::Result<()> {
    let cfg = WeightConfig::new(&[4], 4)?;

    for model in [Model::Ordinary, Model::Bipartite] {
        let curve = SpectralCurve::build(model, &cfg)?;
        let pre = if curve.gamma_parity() == 1 {
            "γ · "
        } else {
            ""
        };
        println!("== {} ==", curve.model().name());
        println!("γ² = {}", curve.gamma_sq());
        for (k, u) in curve.u_over_gamma().iter().enumerate() {
            println!("u_{}/γ = {}", 2 * k + 1, u);
        }
        println!("x = {pre}{}", curve.x_reduced());
        println!("y = {pre}{}", curve.y_reduced());
        println!(
            "branch points: x(+1) = {pre}{}, x(-1) = {pre}{}",
            curve.branch_plus(),
            curve.branch_minus()
        );
        println!();
    }

    // dessins d'enfant: the bipartite curve with all weights off
    let dessins = SpectralCurve::build(Model::Dessins, &WeightConfig::empty(0))?;
    println!("== dessins ==");
    println!("x = {}", dessins.x_reduced());
    println!("y = {}", dessins.y_reduced());
    println!();

    // x_bip(z²) = x_ord(z)², y_bip(z²)·x_ord(z) = y_ord(z), the
    // positive-power product form, the Y·x closed form, branch data and
    // the Zhukovsky factorisation, all exact
    let ord = SpectralCurve::build(Model::Ordinary, &cfg)?;
    let bip = SpectralCurve::build(Model::Bipartite, &cfg)?;
    println!("curve identities at N = {}:", cfg.trunc());
    for check in check_curve_relations(&ord, &bip)? {
        println!(
            "  [{}] {}",
            if check.pass { "ok" } else { "FAILED" },
            check.name
        );
    }
    Ok(())
}
