use maprec::counts::counts;
use maprec::curve::{Model, SpectralCurve};
use maprec::recursion::{Engine, Pole};
use maprec::weights::WeightConfig;
use std::time::Instant;

fn main() {
    let cfg = WeightConfig::new(&[4], 3).unwrap();
    for model in [Model::Bipartite, Model::Ordinary] {
        let e = Engine::new(SpectralCurve::build(model, &cfg).unwrap());
        for (g, n) in [(3u32, 1u32), (2, 3), (1, 5), (0, 7)] {
            let t0 = Instant::now();
            let w = e.omega(g, n).unwrap();
            let ok = w.is_leg_symmetric() && w.residue_free() && w.galois_antisymmetric();
            let bound_plus = 6 * g as i64 - 4 + 2 * n as i64;
            let minus_ok = match model {
                Model::Bipartite => w.max_order_at(Pole::Minus) as i64 <= 2 * g as i64,
                _ => w.max_order_at(Pole::Minus) as i64 <= bound_plus,
            };
            println!(
                "{model:?} omega({g},{n}): {} terms, invariants {}, +1 order {} <= {}: {}, -1 ok: {} [{:?}]",
                w.term_count(), ok,
                w.max_order_at(Pole::Plus), bound_plus,
                (w.max_order_at(Pole::Plus) as i64) <= bound_plus,
                minus_ok, t0.elapsed()
            );
        }
        // genus-3 one-face gluing at t=0: the 12-gon value from the engine
        let cfg0 = WeightConfig::empty(0);
        let e0 = Engine::new(SpectralCurve::build(model, &cfg0).unwrap());
        if model == Model::Ordinary {
            for l in [5u32, 6] {
                let t = counts(&e0, 3, &[2 * l]).unwrap();
                println!("  T^(3)_{} (t=0) = {}", 2 * l, t.series());
            }
        }
    }
}
