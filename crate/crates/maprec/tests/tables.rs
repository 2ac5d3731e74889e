//! Count-table invariants over a wide topology grid: integrality,
//! non-negativity, the Euler support bound and leg-order independence for
//! `g ≤ 2`, `n ≤ 3`, half-lengths up to 4, at truncation 6.

use maprec::counts::{counts, CountTable};
use maprec::curve::{Model, SpectralCurve};
use maprec::recursion::Engine;
use maprec::weights::WeightConfig;

fn engines() -> Vec<Engine> {
    let cfg = WeightConfig::new(&[4], 6).unwrap();
    [Model::Bipartite, Model::Ordinary]
        .into_iter()
        .map(|m| Engine::new(SpectralCurve::build(m, &cfg).unwrap()))
        .collect()
}

fn profiles() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for l1 in 1..=4u32 {
        out.push(vec![2 * l1]);
        for l2 in l1..=4 {
            out.push(vec![2 * l1, 2 * l2]);
        }
    }
    // a spread of three-boundary profiles
    out.push(vec![2, 2, 2]);
    out.push(vec![2, 4, 8]);
    out.push(vec![6, 6, 6]);
    out
}

fn check_table(t: &CountTable, ctx: &str) {
    assert!(
        t.is_nonneg_integer(),
        "{ctx}: negative or fractional coefficient in {}",
        t.series()
    );
    t.integer_coeffs().unwrap();
    assert!(
        t.euler_support_ok(),
        "{ctx}: Euler support violated in {}",
        t.series()
    );
}

#[test]
fn grid_integrality_nonnegativity_support() {
    for engine in engines() {
        let model = engine.curve().model();
        for g in 0..=2u32 {
            for profile in profiles() {
                let t = counts(&engine, g, &profile).unwrap();
                check_table(&t, &format!("{model:?} g={g} lengths={profile:?}"));
            }
        }
    }
}

#[test]
fn grid_leg_order_independence() {
    for engine in engines() {
        for g in 0..=2u32 {
            let a = counts(&engine, g, &[2, 4, 8]).unwrap();
            for permuted in [[8u32, 2, 4], [4, 8, 2], [8, 4, 2]] {
                let b = counts(&engine, g, &permuted).unwrap();
                assert_eq!(a.series(), b.series(), "g={g} profile {permuted:?}");
            }
        }
    }
}

#[test]
fn mixed_weight_tables_stay_integral() {
    // two active weights: hexagons and squares together
    let cfg = WeightConfig::new(&[4, 6], 4).unwrap();
    for model in [Model::Bipartite, Model::Ordinary] {
        let engine = Engine::new(SpectralCurve::build(model, &cfg).unwrap());
        for g in 0..=2u32 {
            for profile in [vec![2], vec![4], vec![2, 2]] {
                let t = counts(&engine, g, &profile).unwrap();
                check_table(&t, &format!("{model:?} g={g} lengths={profile:?}"));
            }
        }
    }
}

#[test]
fn dessins_equals_bipartite_at_zero_weights() {
    let cfg = WeightConfig::empty(0);
    let dessins = Engine::new(SpectralCurve::build(Model::Dessins, &cfg).unwrap());
    let bip = Engine::new(SpectralCurve::build(Model::Bipartite, &cfg).unwrap());
    for (g, profile) in [
        (0u32, vec![2u32]),
        (0, vec![6]),
        (0, vec![2, 4]),
        (1, vec![6]),
        (1, vec![2, 4]),
        (2, vec![8]),
    ] {
        let a = counts(&dessins, g, &profile).unwrap();
        let b = counts(&bip, g, &profile).unwrap();
        assert_eq!(a.series(), b.series(), "g={g} {profile:?}");
    }
}
