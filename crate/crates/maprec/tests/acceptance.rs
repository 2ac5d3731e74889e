//! Acceptance suite: runs the seven release criteria and pins their
//! expected outcomes, with independent combinatorial oracles for the
//! unstable anchors.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion verdict lines.

use maprec::counts::{counts, counts_disk};
use maprec::curve::{Model, SpectralCurve};
use maprec::recursion::Engine;
use maprec::verify;
use maprec::weights::{WeightConfig, WeightSeries};

// ---------------------------------------------------------------------------
// brute-force gluing oracle (independent of the library internals)
//
// A map is a pair of permutations on darts: vertex rotations σ and the
// fixed-point-free edge involution α; faces are the cycles of φ = σ∘α.
// Rooted counts divide the number of labelled configurations by D!, which
// is exact because relabelling acts freely on connected rooted maps.

struct GluingSpec {
    /// Ordered boundary face degrees, each carrying one root.
    boundary_degrees: Vec<usize>,
    /// Degrees of the unmarked internal faces (sorted multiset); these
    /// carry the formal weights in the generating functions.
    unmarked_degrees: Vec<usize>,
    genus: usize,
    /// Demand a proper 2-colouring and white root origins.
    bipartite: bool,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn rec(unused: Vec<usize>, partial: Vec<(usize, usize)>, out: &mut Vec<Vec<usize>>, n: usize) {
        if unused.is_empty() {
            let mut inv = vec![0; n];
            for &(a, b) in &partial {
                inv[a] = b;
                inv[b] = a;
            }
            out.push(inv);
            return;
        }
        let first = unused[0];
        for i in 1..unused.len() {
            let mut rest = unused.clone();
            let second = rest.remove(i);
            rest.remove(0);
            let mut next = partial.clone();
            next.push((first, second));
            rec(rest, next, out, n);
        }
    }
    let mut out = Vec::new();
    rec((0..n).collect(), Vec::new(), &mut out, n);
    out
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            cycle.push(d);
            d = perm[d];
        }
        cycles.push(cycle);
    }
    cycles
}

fn connected(sigma: &[usize], alpha: &[usize]) -> bool {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    while let Some(d) = stack.pop() {
        if seen[d] {
            continue;
        }
        seen[d] = true;
        stack.push(sigma[d]);
        stack.push(alpha[d]);
    }
    seen.into_iter().all(|s| s)
}

/// Proper 2-colouring of vertices (σ-cycles) along edges, if one exists.
fn two_colouring(sigma: &[usize], alpha: &[usize]) -> Option<Vec<usize>> {
    let n = sigma.len();
    let vertex_cycles = cycles_of(sigma);
    let mut vertex_of = vec![0usize; n];
    for (v, cycle) in vertex_cycles.iter().enumerate() {
        for &d in cycle {
            vertex_of[d] = v;
        }
    }
    let mut colour = vec![usize::MAX; vertex_cycles.len()];
    colour[vertex_of[0]] = 0;
    let mut stack = vec![0usize];
    let mut seen = vec![false; n];
    while let Some(d) = stack.pop() {
        if seen[d] {
            continue;
        }
        seen[d] = true;
        let v = vertex_of[d];
        let w = vertex_of[alpha[d]];
        if colour[w] == usize::MAX {
            colour[w] = 1 - colour[v];
        } else if colour[w] == colour[v] {
            return None;
        }
        stack.push(sigma[d]);
        stack.push(alpha[d]);
    }
    Some(vertex_of.iter().map(|&v| colour[v]).collect())
}

fn count_rooted_gluings(spec: &GluingSpec) -> u64 {
    let darts: usize =
        spec.boundary_degrees.iter().sum::<usize>() + spec.unmarked_degrees.iter().sum::<usize>();
    assert!(darts % 2 == 0 && darts <= 8, "oracle scope");
    let mut all_degrees: Vec<usize> = spec
        .boundary_degrees
        .iter()
        .chain(&spec.unmarked_degrees)
        .copied()
        .collect();
    all_degrees.sort_unstable();
    let mut total: u64 = 0;
    let perms = permutations(darts);
    for alpha in involutions(darts) {
        for sigma in &perms {
            if !connected(sigma, &alpha) {
                continue;
            }
            let phi: Vec<usize> = (0..darts).map(|d| sigma[alpha[d]]).collect();
            let faces = cycles_of(&phi);
            let mut degrees: Vec<usize> = faces.iter().map(Vec::len).collect();
            degrees.sort_unstable();
            if degrees != all_degrees {
                continue;
            }
            let v = cycles_of(sigma).len();
            let e = darts / 2;
            let f = faces.len();
            let euler = v as i64 - e as i64 + f as i64;
            if euler != 2 - 2 * spec.genus as i64 {
                continue;
            }
            let colour_of_dart = if spec.bipartite {
                match two_colouring(sigma, &alpha) {
                    Some(c) => Some(c),
                    None => continue,
                }
            } else {
                None
            };
            // assign ordered boundary slots to distinct faces, leaving the
            // unmarked multiset, and count root tuples; the white
            // convention normalises the colouring by the first root, so
            // all origins must share its colour
            total += count_root_tuples(spec, &faces, colour_of_dart.as_deref());
        }
    }
    let fact: u64 = (1..=darts as u64).product();
    assert_eq!(total % fact, 0, "free relabelling action");
    total / fact
}

fn count_root_tuples(spec: &GluingSpec, faces: &[Vec<usize>], colour: Option<&[usize]>) -> u64 {
    fn rec(
        slot: usize,
        spec: &GluingSpec,
        faces: &[Vec<usize>],
        used: &mut Vec<bool>,
        first_colour: Option<usize>,
        colour: Option<&[usize]>,
    ) -> u64 {
        if slot == spec.boundary_degrees.len() {
            let mut rest: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .map(|(_, f)| f.len())
                .collect();
            rest.sort_unstable();
            return u64::from(rest == spec.unmarked_degrees);
        }
        let mut total = 0;
        for (fi, face) in faces.iter().enumerate() {
            if used[fi] || face.len() != spec.boundary_degrees[slot] {
                continue;
            }
            used[fi] = true;
            for &root in face {
                let fc = match (colour, first_colour) {
                    (Some(c), Some(want)) if c[root] != want => None,
                    (Some(c), _) => Some(c[root]),
                    (None, _) => None,
                };
                if colour.is_some() && first_colour.is_some() && fc.is_none() {
                    continue;
                }
                let next_first = first_colour.or(fc);
                total += rec(slot + 1, spec, faces, used, next_first, colour);
            }
            used[fi] = false;
        }
        total
    }
    let mut used = vec![false; faces.len()];
    rec(0, spec, faces, &mut used, None, colour)
}

fn gluing_count(boundary_degrees: &[usize], genus: usize, bipartite: bool) -> u64 {
    weighted_gluing_count(boundary_degrees, &[], genus, bipartite)
}

fn weighted_gluing_count(
    boundary_degrees: &[usize],
    unmarked_degrees: &[usize],
    genus: usize,
    bipartite: bool,
) -> u64 {
    let mut unmarked = unmarked_degrees.to_vec();
    unmarked.sort_unstable();
    count_rooted_gluings(&GluingSpec {
        boundary_degrees: boundary_degrees.to_vec(),
        unmarked_degrees: unmarked,
        genus,
        bipartite,
    })
}

// ---------------------------------------------------------------------------
// plane-tree oracle for the disk counts

/// Rooted plane trees with `edges` edges, counted by the root-degree
/// decomposition.
fn plane_trees(edges: usize) -> u64 {
    let mut c = vec![0u64; edges + 1];
    c[0] = 1;
    for n in 1..=edges {
        for i in 0..n {
            c[n] += c[i] * c[n - 1 - i];
        }
    }
    c[edges]
}

// ---------------------------------------------------------------------------

fn zero_weight_engine(model: Model) -> Engine {
    let cfg = WeightConfig::empty(0);
    Engine::new(SpectralCurve::build(model, &cfg).unwrap())
}

fn constant(engine: &Engine, v: u64) -> WeightSeries {
    WeightSeries::constant(engine.curve().config(), maprec::rat::rat_int(v as i64))
}

#[test]
fn acceptance_criteria() {
    let results = verify::acceptance().unwrap();
    assert_eq!(results.len(), 7);
    for r in &results {
        let verdict = if r.pass {
            "PASS".to_string()
        } else if r.documented_defect {
            "FAIL (documented reference defect)".to_string()
        } else {
            format!("FAIL — {}", r.detail)
        };
        println!("criterion {}: {verdict} — {}", r.index, r.title);
    }
    for r in &results {
        match r.index {
            1 => {
                // strict table reproduction fails exactly through the
                // documented genus-2 ordinary column misprint; every other
                // comparison, including the positive identification of the
                // printed integers as the length-4 series, must pass
                assert!(!r.pass && r.documented_defect, "criterion 1: {}", r.detail);
                let unexpected: Vec<_> = r
                    .checks
                    .iter()
                    .filter(|c| !c.pass && !c.documented_defect)
                    .collect();
                assert!(unexpected.is_empty(), "criterion 1 drift: {unexpected:?}");
                let defects: Vec<_> = r
                    .checks
                    .iter()
                    .filter(|c| !c.pass && c.documented_defect)
                    .collect();
                assert_eq!(defects.len(), 1);
                assert_eq!(defects[0].name, "ordinary T^(2)_2 printed alignment");
            }
            _ => assert!(r.pass, "criterion {}: {}", r.index, r.detail),
        }
    }
}

#[test]
fn criterion3_disk_counts_match_plane_tree_oracle() {
    let bip = zero_weight_engine(Model::Bipartite);
    for l in 1..=5u32 {
        let t = counts_disk(&bip, 2 * l).unwrap();
        let oracle = plane_trees(l as usize);
        assert_eq!(
            t.series(),
            &constant(&bip, oracle),
            "disk count vs plane trees at l = {l}"
        );
    }
}

#[test]
fn criterion3_cylinder_matches_gluing_oracle() {
    let bip = zero_weight_engine(Model::Bipartite);
    let ord = zero_weight_engine(Model::Ordinary);
    // the two-digon annulus: one bipartite rooted configuration, two
    // ordinary ones
    let oracle_bip = gluing_count(&[2, 2], 0, true);
    let oracle_ord = gluing_count(&[2, 2], 0, false);
    assert_eq!(oracle_bip, 1);
    assert_eq!(oracle_ord, 2);
    let t = counts(&bip, 0, &[2, 2]).unwrap();
    assert_eq!(t.series(), &constant(&bip, oracle_bip));
    let t = counts(&ord, 0, &[2, 2]).unwrap();
    assert_eq!(t.series(), &constant(&ord, oracle_ord));
    // a digon-square annulus as an extra cross-check
    let oracle_bip = gluing_count(&[2, 4], 0, true);
    let oracle_ord = gluing_count(&[2, 4], 0, false);
    let t = counts(&bip, 0, &[2, 4]).unwrap();
    assert_eq!(t.series(), &constant(&bip, oracle_bip));
    let t = counts(&ord, 0, &[2, 4]).unwrap();
    assert_eq!(t.series(), &constant(&ord, oracle_ord));
    // and the colouring factor seen by the raw oracle
    assert_eq!(2 * oracle_bip, oracle_ord);
}

/// Coefficient of `t4^m` in an engine table built over the single weight
/// `t4` at truncation `m`.
fn t4_coefficient(model: Model, genus: u32, lengths: &[u32], m: u16) -> u64 {
    let cfg = WeightConfig::new(&[4], m as u32).unwrap();
    let engine = Engine::new(SpectralCurve::build(model, &cfg).unwrap());
    let t = counts(&engine, genus, lengths).unwrap();
    let c = t.series().coeff(&[m]);
    u64::try_from(
        maprec::rat::as_integer(&c)
            .expect("integer count")
            .max(0.into()),
    )
    .unwrap()
}

#[test]
fn weighted_sectors_match_gluing_oracle() {
    // one internal quadrangle alongside the boundaries: the t4-linear
    // coefficients of the generating functions against raw enumeration
    let cases: [(Model, u32, &[u32], &[usize]); 6] = [
        (Model::Bipartite, 0, &[2], &[2, 4]),
        (Model::Ordinary, 0, &[2], &[2, 4]),
        (Model::Bipartite, 0, &[4], &[4, 4]),
        (Model::Ordinary, 1, &[2], &[2, 4]),
        (Model::Ordinary, 1, &[4], &[4, 4]),
        (Model::Bipartite, 0, &[2, 2], &[2, 2, 4]),
    ];
    for (model, genus, lengths, faces) in cases {
        let (boundaries, unmarked) = faces.split_at(lengths.len());
        let oracle = weighted_gluing_count(
            boundaries,
            unmarked,
            genus as usize,
            model == Model::Bipartite,
        );
        let engine_value = t4_coefficient(model, genus, lengths, 1);
        assert_eq!(
            engine_value, oracle,
            "{model:?} g={genus} lengths={lengths:?} with one quadrangle"
        );
    }
}

#[test]
fn criterion3_one_face_gluings_match_oracle() {
    let ord = zero_weight_engine(Model::Ordinary);
    // square and hexagon glued into the torus
    for (len, faces) in [(4u32, vec![4usize]), (6, vec![6])] {
        let oracle = gluing_count(&faces, 1, false);
        let t = counts(&ord, 1, &[len]).unwrap();
        assert_eq!(t.series(), &constant(&ord, oracle), "length {len}");
    }
    // the bipartite hexagon on the torus has a unique parity-respecting
    // gluing
    let bip = zero_weight_engine(Model::Bipartite);
    let oracle = gluing_count(&[6], 1, true);
    assert_eq!(oracle, 1);
    let t = counts(&bip, 1, &[6]).unwrap();
    assert_eq!(t.series(), &constant(&bip, oracle));
}
