//! Count extraction: from forms to integer generating functions.
//!
//! Stable counts come from the residue formula
//! `T^{(g)}_{2l_1,…,2l_n} = (-1)^n Res_{z_i→∞} Π X(z_i)^{l_i} ω_{g,n}`,
//! where `X` is the extraction base of the curve (`x` for bipartite maps,
//! `x²` for ordinary maps whose boundary powers are `x^{2l}`). On the polar
//! basis the multi-residue factorises leg by leg.
//!
//! The two unstable topologies need bespoke conventions, which are
//! deliberately confined to this module:
//!
//! * **disk**: `T^{(0)}_{2l} = +Res_{z→∞} X^l ω_{0,1}`, the sign opposite
//!   to the stable pattern; anchored by the Catalan numbers (plane trees)
//!   at zero weights and the quadrangulation golden column.
//! * **cylinder**: `W₂ = B/(dz₁dz₂) - x'(z₁)x'(z₂)/(x(z₁)-x(z₂))²`, which
//!   collapses to `1/(z₁z₂-1)²` for every curve of this family, followed by
//!   the stable sign pattern; anchored by an exhaustive gluing enumeration
//!   of the two-digon annular map.
//!
//! Both conventions are artifact-level choices validated by the golden
//! data, not formulas taken from a reference.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::curve::{IdentityCheck, Model, SpectralCurve};
use crate::error::{Error, Result};
use crate::golden;
use crate::local::ExpansionPoint;
use crate::rat::{neg_one_pow, rat_int, Int, Rat};
use crate::recursion::{is_stable, Engine, Pole};
use crate::weights::{WeightConfig, WeightSeries};
use crate::zrat::ZRational;

/// A generating function of counts for one topology and boundary profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    model: Model,
    genus: u32,
    /// Even boundary lengths `2l_i`.
    lengths: Vec<u32>,
    series: WeightSeries,
}

impl CountTable {
    /// The model the counts belong to.
    pub fn model(&self) -> Model {
        self.model
    }

    /// The genus.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// The even boundary lengths.
    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    /// The generating series of counts.
    pub fn series(&self) -> &WeightSeries {
        &self.series
    }

    /// Conventional label, e.g. `T~^(1)_2` for bipartite counts.
    pub fn label(&self) -> String {
        let tilde = match self.model {
            Model::Ordinary => "",
            Model::Bipartite | Model::Dessins => "~",
        };
        let lens: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        format!("T{}^({})_{}", tilde, self.genus, lens.join(","))
    }

    /// The coefficients as exact integers, failing if any denominator is
    /// not 1.
    pub fn integer_coeffs(&self) -> Result<Vec<(Vec<u16>, Int)>> {
        let mut out = Vec::new();
        for (exps, c) in self.series.iter() {
            match crate::rat::as_integer(c) {
                Some(i) => out.push((exps.clone(), i)),
                None => {
                    return Err(Error::NonIntegerCount(format!(
                        "{} at {:?}: {}",
                        self.label(),
                        exps,
                        c
                    )))
                }
            }
        }
        Ok(out)
    }

    /// True if every coefficient is a non-negative integer.
    pub fn is_nonneg_integer(&self) -> bool {
        self.series.is_nonneg_integer()
    }

    /// For a single active weight, the dense coefficient list
    /// `t^0 … t^N` as integers.
    pub fn single_weight_column(&self) -> Result<Vec<Int>> {
        let cfg = self.series.config();
        if cfg.arity() != 1 {
            return Err(Error::InvalidRequest(
                "dense column requires a single active weight".into(),
            ));
        }
        let n = cfg.trunc() as usize;
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let c = self.series.coeff(&[i as u16]);
            out.push(crate::rat::as_integer(&c).ok_or_else(|| {
                Error::NonIntegerCount(format!("{} at t^{}: {}", self.label(), i, c))
            })?);
        }
        Ok(out)
    }

    /// Necessary Euler-relation support bound: for every stored nonzero
    /// coefficient the vertex count `V = 2 - 2g - (n + Σ m_k) + (Σ l_i +
    /// Σ k·m_k)` admits a map. Bipartite maps need two colour classes
    /// (`V ≥ 2`); ordinary maps one vertex.
    pub fn euler_support_ok(&self) -> bool {
        let cfg = self.series.config();
        let v_min = match self.model {
            Model::Bipartite | Model::Dessins => 2,
            Model::Ordinary => 1,
        };
        let half_sum: i64 = self.lengths.iter().map(|&l| (l / 2) as i64).sum();
        for (exps, _) in self.series.iter() {
            let m: i64 = exps.iter().map(|&e| e as i64).sum();
            let edge_add: i64 = exps
                .iter()
                .zip(cfg.indices())
                .map(|(&e, &idx)| e as i64 * (idx / 2) as i64)
                .sum();
            let v =
                2 - 2 * self.genus as i64 - (self.lengths.len() as i64 + m) + (half_sum + edge_add);
            if v < v_min {
                return false;
            }
        }
        true
    }
}

fn validate_lengths(lengths: &[u32]) -> Result<Vec<u32>> {
    if lengths.is_empty() {
        return Err(Error::InvalidRequest("at least one boundary length".into()));
    }
    let mut half = Vec::with_capacity(lengths.len());
    for &l in lengths {
        if l == 0 || l % 2 != 0 {
            return Err(Error::InvalidRequest(format!(
                "boundary lengths must be even and positive, got {l}"
            )));
        }
        half.push(l / 2);
    }
    Ok(half)
}

/// Smallest total weight degree at which the Euler relation admits a map
/// for this topology, or `None` when no degree does.
pub fn support_min_degree(
    model: Model,
    genus: u32,
    lengths: &[u32],
    cfg: &Arc<WeightConfig>,
) -> Option<u32> {
    let v_min: i64 = match model {
        Model::Bipartite | Model::Dessins => 2,
        Model::Ordinary => 1,
    };
    let half_sum: i64 = lengths.iter().map(|&l| (l / 2) as i64).sum();
    let v0 = 2 - 2 * genus as i64 - lengths.len() as i64 + half_sum;
    if v0 >= v_min {
        return Some(0);
    }
    // adding a face of degree 2k changes V by k - 1
    let k_max = cfg.max_index().map(|i| (i / 2) as i64)?;
    if k_max <= 1 {
        return None;
    }
    let deficit = v_min - v0;
    Some(((deficit + k_max - 2) / (k_max - 1)) as u32)
}

/// Errors when every coefficient up to the truncation order is forced to
/// vanish by the Euler relation while a deeper truncation would not be.
pub fn validate_truncation(
    model: Model,
    genus: u32,
    lengths: &[u32],
    cfg: &Arc<WeightConfig>,
) -> Result<()> {
    if let Some(min_degree) = support_min_degree(model, genus, lengths, cfg) {
        if min_degree > cfg.trunc() {
            return Err(Error::TruncationInsufficient {
                trunc: cfg.trunc(),
                min_degree,
            });
        }
    }
    Ok(())
}

/// Per-leg residue cache: `Res_{z→∞} X(z)^l (z-β)^{-k} dz` as a closed-form
/// series in the curve data.
struct LegResidues<'a> {
    curve: &'a SpectralCurve,
    base_powers: HashMap<u32, ZRational>,
    residues: HashMap<(Pole, u32, u32), WeightSeries>,
}

impl<'a> LegResidues<'a> {
    fn new(curve: &'a SpectralCurve) -> Self {
        Self {
            curve,
            base_powers: HashMap::new(),
            residues: HashMap::new(),
        }
    }

    fn base_pow(&mut self, l: u32) -> ZRational {
        self.base_powers
            .entry(l)
            .or_insert_with(|| self.curve.extraction_base().pow(l))
            .clone()
    }

    fn residue(&mut self, pole: Pole, order: u32, l: u32) -> Result<WeightSeries> {
        if let Some(hit) = self.residues.get(&(pole, order, l)) {
            return Ok(hit.clone());
        }
        let cfg = self.curve.config();
        let xp = self.base_pow(l);
        let polar = ZRational::polar(cfg, pole.value(), order, WeightSeries::one(cfg));
        let r = xp.mul(&polar)?.residue(ExpansionPoint::Infinity)?;
        self.residues.insert((pole, order, l), r.clone());
        Ok(r)
    }
}

/// Stable counts `T^{(g)}_{2l_1,…,2l_n}` for `2g + n - 2 > 0`.
pub fn counts_stable(engine: &Engine, genus: u32, lengths: &[u32]) -> Result<CountTable> {
    let half = validate_lengths(lengths)?;
    let n = lengths.len() as u32;
    if !is_stable(genus, n) {
        return Err(Error::UnstableTopology { g: genus, n });
    }
    let omega = engine.omega(genus, n)?;
    let curve = engine.curve();
    let cfg = curve.config();
    let mut legs = LegResidues::new(curve);
    let mut total = WeightSeries::zero(cfg);
    for (key, coeff) in omega.terms() {
        let mut prod = coeff.clone();
        for (i, &(pole, order)) in key.iter().enumerate() {
            if prod.is_zero() {
                break;
            }
            prod = prod.mul(&legs.residue(pole, order, half[i])?)?;
        }
        total = total.add(&prod)?;
    }
    let sign = rat_int(neg_one_pow(n));
    Ok(CountTable {
        model: curve.model(),
        genus,
        lengths: lengths.to_vec(),
        series: total.scale(&sign),
    })
}

/// Disk counts `T^{(0)}_{2l} = +Res_{z→∞} X^l ω_{0,1}`.
pub fn counts_disk(engine: &Engine, length: u32) -> Result<CountTable> {
    let half = validate_lengths(&[length])?;
    let curve = engine.curve();
    let xp = curve.extraction_base().pow(half[0]);
    let series = xp
        .mul(&curve.omega01())?
        .residue(ExpansionPoint::Infinity)?;
    Ok(CountTable {
        model: curve.model(),
        genus: 0,
        lengths: vec![length],
        series,
    })
}

/// Cylinder counts from the regularised two-point kernel
/// `W₂ = 1/(z₁z₂-1)²`: the double residue collapses to
/// `Σ_j (j+1) [z^{j+1}]X^{l_1} · [z^{j+1}]X^{l_2}`.
pub fn counts_cylinder(engine: &Engine, length1: u32, length2: u32) -> Result<CountTable> {
    let half = validate_lengths(&[length1, length2])?;
    let curve = engine.curve();
    let cfg = curve.config();
    let xp1 = curve.extraction_base().pow(half[0]);
    let xp2 = curve.extraction_base().pow(half[1]);
    let j_max = xp1
        .pole_order(ExpansionPoint::Infinity)
        .max(xp2.pole_order(ExpansionPoint::Infinity));
    let mut total = WeightSeries::zero(cfg);
    for j in 0..=j_max.max(0) {
        let a = xp1.laurent_coeff(j + 1)?;
        if a.is_zero() {
            continue;
        }
        let b = xp2.laurent_coeff(j + 1)?;
        let term = a.mul(&b)?.scale(&rat_int(j as i64 + 1));
        total = total.add(&term)?;
    }
    Ok(CountTable {
        model: curve.model(),
        genus: 0,
        lengths: vec![length1, length2],
        series: total,
    })
}

/// Counts for any topology, dispatching between the disk, cylinder and
/// stable extraction.
pub fn counts(engine: &Engine, genus: u32, lengths: &[u32]) -> Result<CountTable> {
    match (genus, lengths.len()) {
        (0, 1) => counts_disk(engine, lengths[0]),
        (0, 2) => counts_cylinder(engine, lengths[0], lengths[1]),
        _ => counts_stable(engine, genus, lengths),
    }
}

/// Verifies that the cylinder kernel subtraction collapses to
/// `1/(z₁z₂-1)²` on this curve.
///
/// The identity cross-multiplies to a Laurent-polynomial identity in
/// `(z₁, z₂)` of degree at most 8 per variable, so exact agreement on a
/// 9×9 grid of rational sample points proves it.
pub fn cylinder_kernel_matches(curve: &SpectralCurve) -> Result<bool> {
    let x = curve.x_reduced();
    let dx = curve.dx_reduced();
    for s in 2i64..=10 {
        for t in -10i64..=-2 {
            let sv = rat_int(s);
            let tv = rat_int(t);
            let xs = x.eval(&sv)?;
            let xt = x.eval(&tv)?;
            let dxs = dx.eval(&sv)?;
            let dxt = dx.eval(&tv)?;
            let dx_prod = dxs.mul(&dxt)?;
            let diff_sq = xs.sub(&xt)?.pow(2);
            let b_term = WeightSeries::constant(
                curve.config(),
                Rat::one() / (sv.clone() - tv.clone()).pow(2),
            );
            let w2 = b_term.sub(&dx_prod.mul(&diff_sq.inverse()?)?)?;
            let expected =
                WeightSeries::constant(curve.config(), Rat::one() / (sv * tv - Rat::one()).pow(2));
            if w2 != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the genus-0 colouring factor `2^{n-1} T̃^{(0)} = T^{(0)}` for
/// `n = 1, 2, 3` over the given half-length bound, and the subset
/// inequality `T̃^{(g)} ≤ T^{(g)}` coefficient-wise for `g = 1, 2`.
pub fn bipartite_ordinary_check(
    ord: &Engine,
    bip: &Engine,
    max_half_length: u32,
) -> Result<Vec<IdentityCheck>> {
    if ord.curve().config() != bip.curve().config() {
        return Err(Error::ConfigMismatch(
            "bipartite/ordinary comparison".into(),
        ));
    }
    let mut checks = Vec::new();
    let lmax = max_half_length.max(1);
    // n = 1, 2, 3 boundary profiles
    let mut profiles: Vec<Vec<u32>> = Vec::new();
    for l1 in 1..=lmax {
        profiles.push(vec![2 * l1]);
        for l2 in l1..=lmax {
            profiles.push(vec![2 * l1, 2 * l2]);
            for l3 in l2..=lmax {
                profiles.push(vec![2 * l1, 2 * l2, 2 * l3]);
            }
        }
    }
    for profile in &profiles {
        let n = profile.len() as u32;
        let t_ord = counts(ord, 0, profile)?;
        let t_bip = counts(bip, 0, profile)?;
        let factor = rat_int(1 << (n - 1));
        let scaled = t_bip.series().scale(&factor);
        let pass = scaled == *t_ord.series();
        let name = format!("2^{} {} = {}", n - 1, t_bip.label(), t_ord.label());
        checks.push(if pass {
            IdentityCheck::ok(&name)
        } else {
            IdentityCheck::fail(
                &name,
                format!("bipartite {} vs ordinary {}", scaled, t_ord.series()),
            )
        });
    }
    for g in 1..=2u32 {
        for l in 1..=lmax {
            let t_ord = counts(ord, g, &[2 * l])?;
            let t_bip = counts(bip, g, &[2 * l])?;
            let pass = t_bip.series().le_coeffwise(t_ord.series())?;
            let name = format!("{} ≤ {}", t_bip.label(), t_ord.label());
            checks.push(if pass {
                IdentityCheck::ok(&name)
            } else {
                IdentityCheck::fail(&name, format!("{} vs {}", t_bip.series(), t_ord.series()))
            });
        }
    }
    Ok(checks)
}

/// Asserts the full golden quadrangulation table and the OEIS prefixes.
/// Both engines must be built over the single weight `t_4` with truncation
/// at least 5.
///
/// All 36 reference integers are asserted where they belong: the ordinary
/// genus-2 reference column is the boundary-length-4 series (see
/// [`golden`]), so its six integers are checked against `T^{(2)}_4` while
/// the corrected length-2 series guards against regressions. The strict
/// printed alignment is reported as a documented defect and does not gate
/// the suite.
pub fn golden_verify(ord: &Engine, bip: &Engine) -> Result<Vec<IdentityCheck>> {
    let cfg = bip.curve().config();
    if cfg.indices() != [4] || !cfg.unit_scales() || cfg.trunc() < 5 || ord.curve().config() != cfg
    {
        return Err(Error::InvalidRequest(
            "golden verification needs both models over the unit weight t4 with truncation ≥ 5"
                .into(),
        ));
    }
    let mut checks = Vec::new();
    let mut check_column = |name_tag: String, table: &CountTable, expected: &[i64]| {
        // a non-integer coefficient (e.g. under fault injection) is itself
        // a failed comparison, not an abort
        let column = match table.single_weight_column() {
            Ok(c) => c,
            Err(e) => {
                checks.push(IdentityCheck::fail(&name_tag, e.to_string()));
                return;
            }
        };
        for (i, &want) in expected.iter().enumerate().take(6) {
            let got = &column[i];
            let name = format!("{name_tag} @ t^{i}");
            checks.push(if *got == Int::from(want) {
                IdentityCheck::ok(&name)
            } else {
                IdentityCheck::fail(&name, format!("expected {want}, computed {got}"))
            });
        }
    };
    for g in 0..=2u32 {
        let table = counts(bip, g, &[2])?;
        check_column(
            format!("bipartite {}", table.label()),
            &table,
            &golden::TABLE1_BIPARTITE[g as usize],
        );
    }
    for g in 0..=1u32 {
        let table = counts(ord, g, &[2])?;
        check_column(
            format!("ordinary {}", table.label()),
            &table,
            &golden::TABLE1_ORDINARY[g as usize],
        );
    }
    // genus-2 ordinary: the six reference integers live in the length-4
    // column; the corrected length-2 column is asserted alongside
    let t4col = counts(ord, 2, &[4])?;
    check_column(
        format!("ordinary {} (reference integers)", t4col.label()),
        &t4col,
        &golden::TABLE1_ORDINARY_G2_PRINTED,
    );
    let t2col = counts(ord, 2, &[2])?;
    check_column(
        format!("ordinary {} (corrected)", t2col.label()),
        &t2col,
        &golden::TABLE1_ORDINARY[2],
    );
    let printed: Vec<Int> = golden::TABLE1_ORDINARY_G2_PRINTED
        .iter()
        .map(|&v| Int::from(v))
        .collect();
    let strict_pass = t2col
        .single_weight_column()
        .map(|strict| strict == printed)
        .unwrap_or(false);
    checks.push(IdentityCheck {
        name: "ordinary T^(2)_2 printed alignment".into(),
        pass: strict_pass,
        detail: format!(
            "reference column is shifted: computed {:?}, printed {printed:?}; \
             the printed integers are the length-4 series (T^(2)_2 = t4·T^(2)_4)",
            t2col.single_weight_column().unwrap_or_default()
        ),
        documented_defect: true,
    });
    // OEIS cross-checks: the nonzero entries of the bipartite g = 1, 2
    // columns
    for (g, prefix) in [
        (1u32, &golden::OEIS_A006300_PREFIX[..]),
        (2, &golden::OEIS_A006301_PREFIX[..]),
    ] {
        let name = format!("OEIS prefix for T~^({g})_2");
        match counts(bip, g, &[2])?.single_weight_column() {
            Ok(column) => {
                let nonzero: Vec<Int> = column.into_iter().filter(|c| !c.is_zero()).collect();
                let expected: Vec<Int> = prefix.iter().map(|&v| Int::from(v)).collect();
                checks.push(if nonzero == expected {
                    IdentityCheck::ok(&name)
                } else {
                    IdentityCheck::fail(
                        &name,
                        format!("expected {expected:?}, computed {nonzero:?}"),
                    )
                });
            }
            Err(e) => checks.push(IdentityCheck::fail(&name, e.to_string())),
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::SpectralCurve;

    fn engine(model: Model, weights: &[u32], trunc: u32) -> Engine {
        let cfg = if weights.is_empty() {
            WeightConfig::empty(trunc)
        } else {
            WeightConfig::new(weights, trunc).unwrap()
        };
        Engine::new(SpectralCurve::build(model, &cfg).unwrap())
    }

    fn column(t: &CountTable) -> Vec<i64> {
        t.single_weight_column()
            .unwrap()
            .into_iter()
            .map(|i| i64::try_from(&i).unwrap())
            .collect()
    }

    #[test]
    fn disk_counts_are_catalan_at_zero_weights() {
        let e = engine(Model::Bipartite, &[], 0);
        for (i, &c) in golden::CATALAN.iter().enumerate() {
            let l = (i + 1) as u32;
            let t = counts_disk(&e, 2 * l).unwrap();
            assert_eq!(
                t.series(),
                &WeightSeries::constant(e.curve().config(), rat_int(c)),
                "Catalan C_{l}"
            );
        }
    }

    #[test]
    fn disk_column_quadrangulations() {
        let e = engine(Model::Bipartite, &[4], 5);
        let t = counts_disk(&e, 2).unwrap();
        assert_eq!(column(&t), vec![1, 2, 9, 54, 378, 2916]);
    }

    #[test]
    fn ordinary_disk_at_zero_weights() {
        let e = engine(Model::Ordinary, &[], 0);
        let t = counts_disk(&e, 2).unwrap();
        assert_eq!(t.series(), &WeightSeries::one(e.curve().config()));
    }

    #[test]
    fn cylinder_two_digons() {
        // one bipartite annular map glues two digons; the ordinary count
        // doubles it
        let bip = engine(Model::Bipartite, &[], 0);
        let t = counts_cylinder(&bip, 2, 2).unwrap();
        assert_eq!(t.series(), &WeightSeries::one(bip.curve().config()));
        let ord = engine(Model::Ordinary, &[], 0);
        let t = counts_cylinder(&ord, 2, 2).unwrap();
        assert_eq!(
            t.series(),
            &WeightSeries::constant(ord.curve().config(), rat_int(2))
        );
    }

    #[test]
    fn cylinder_kernel_closed_form() {
        for (model, weights, trunc) in [
            (Model::Bipartite, &[4u32][..], 3),
            (Model::Ordinary, &[4][..], 3),
            (Model::Dessins, &[][..], 0),
        ] {
            let cfg = if weights.is_empty() {
                WeightConfig::empty(trunc)
            } else {
                WeightConfig::new(weights, trunc).unwrap()
            };
            let curve = SpectralCurve::build(model, &cfg).unwrap();
            assert!(cylinder_kernel_matches(&curve).unwrap(), "{model:?}");
        }
    }

    #[test]
    fn stable_counts_bipartite_genus1() {
        let e = engine(Model::Bipartite, &[4], 5);
        let t = counts_stable(&e, 1, &[2]).unwrap();
        assert_eq!(column(&t), vec![0, 0, 1, 20, 307, 4280]);
    }

    #[test]
    fn stable_counts_bipartite_genus2() {
        let e = engine(Model::Bipartite, &[4], 5);
        let t = counts_stable(&e, 2, &[2]).unwrap();
        assert_eq!(column(&t), vec![0, 0, 0, 0, 21, 966]);
    }

    #[test]
    fn stable_counts_ordinary_genus1() {
        let e = engine(Model::Ordinary, &[4], 5);
        let t = counts_stable(&e, 1, &[2]).unwrap();
        assert_eq!(column(&t), vec![0, 1, 15, 198, 2511, 31266]);
    }

    #[test]
    fn stable_counts_ordinary_genus2() {
        // the reference tabulation lists these integers under boundary
        // length 2, but they are the length-4 series; the true length-2
        // column starts one degree later (see golden module docs)
        let e = engine(Model::Ordinary, &[4], 5);
        let t2 = counts_stable(&e, 2, &[2]).unwrap();
        assert_eq!(column(&t2), vec![0, 0, 0, 45, 2007, 56646]);
        let t4 = counts_stable(&e, 2, &[4]).unwrap();
        assert_eq!(column(&t4), vec![0, 0, 45, 2007, 56646, 1290087]);
    }

    #[test]
    fn ordinary_genus2_gluing_anchors() {
        // zero-weight one-face genus-2 counts are the classical polygon
        // gluings, pinning the normalisation of the corrected column
        let e = engine(Model::Ordinary, &[], 0);
        for (length, expected) in golden::POLYGON_GLUINGS_G2 {
            let t = counts_stable(&e, 2, &[length]).unwrap();
            assert_eq!(
                t.series(),
                &WeightSeries::constant(e.curve().config(), rat_int(expected)),
                "T^(2)_{length}"
            );
        }
    }

    #[test]
    fn ordinary_genus3_gluing_anchors() {
        // total 12-gon gluings split as 11!! = 10395 = 132 + 2310 + 6468
        // + 1485 across genera 0..3; the decagon admits no genus-3 gluing
        let e = engine(Model::Ordinary, &[], 0);
        for (length, expected) in [(10u32, 0i64), (12, 1485)] {
            let t = counts_stable(&e, 3, &[length]).unwrap();
            assert_eq!(
                t.series(),
                &WeightSeries::constant(e.curve().config(), rat_int(expected)),
                "T^(3)_{length}"
            );
        }
    }

    #[test]
    fn harer_zagier_one_face_counts() {
        let e = engine(Model::Ordinary, &[], 0);
        for (length, expected) in golden::HARER_ZAGIER_G1 {
            let t = counts_stable(&e, 1, &[length]).unwrap();
            assert_eq!(
                t.series(),
                &WeightSeries::constant(e.curve().config(), rat_int(expected)),
                "T^(1)_{length}"
            );
        }
    }

    #[test]
    fn bipartite_torus_small_boundaries_at_zero_weights() {
        // Euler rules out lengths 2 and 4; the hexagon admits exactly one
        // parity-respecting gluing
        let e = engine(Model::Bipartite, &[], 0);
        for (length, expected) in [(2u32, 0i64), (4, 0), (6, 1)] {
            let t = counts_stable(&e, 1, &[length]).unwrap();
            assert_eq!(
                t.series(),
                &WeightSeries::constant(e.curve().config(), rat_int(expected)),
                "T~^(1)_{length}"
            );
        }
    }

    #[test]
    fn unstable_topologies_are_dispatched() {
        let e = engine(Model::Bipartite, &[], 0);
        assert!(matches!(
            counts_stable(&e, 0, &[2]),
            Err(Error::UnstableTopology { .. })
        ));
        assert!(counts(&e, 0, &[2]).is_ok());
        assert!(counts(&e, 0, &[2, 2]).is_ok());
    }

    #[test]
    fn counts_reject_odd_lengths() {
        let e = engine(Model::Bipartite, &[], 0);
        assert!(counts(&e, 0, &[3]).is_err());
        assert!(counts(&e, 1, &[0]).is_err());
    }

    #[test]
    fn leg_order_independence() {
        let e = engine(Model::Bipartite, &[4], 3);
        let a = counts(&e, 0, &[2, 4, 6]).unwrap();
        let b = counts(&e, 0, &[6, 2, 4]).unwrap();
        assert_eq!(a.series(), b.series());
        let c = counts(&e, 1, &[2, 4]).unwrap();
        let d = counts(&e, 1, &[4, 2]).unwrap();
        assert_eq!(c.series(), d.series());
    }

    #[test]
    fn integrality_and_support() {
        for model in [Model::Bipartite, Model::Ordinary] {
            let e = engine(model, &[4], 4);
            for g in 0..=2u32 {
                for lengths in [vec![2], vec![4], vec![2, 2], vec![2, 4], vec![2, 2, 2]] {
                    let t = counts(&e, g, &lengths).unwrap();
                    assert!(
                        t.is_nonneg_integer(),
                        "{model:?} g={g} {lengths:?}: {}",
                        t.series()
                    );
                    t.integer_coeffs().unwrap();
                    assert!(t.euler_support_ok(), "{model:?} g={g} {lengths:?}");
                }
            }
        }
    }

    #[test]
    fn support_minimum_degrees() {
        let cfg = WeightConfig::new(&[4], 5).unwrap();
        // bipartite torus digon needs two quadrangles
        assert_eq!(support_min_degree(Model::Bipartite, 1, &[2], &cfg), Some(2));
        // genus-2 bipartite digon starts at degree 4
        assert_eq!(support_min_degree(Model::Bipartite, 2, &[2], &cfg), Some(4));
        // planar disk needs no internal face
        assert_eq!(support_min_degree(Model::Bipartite, 0, &[2], &cfg), Some(0));
        // zero weights: no internal face can ever be added
        let empty = WeightConfig::empty(3);
        assert_eq!(support_min_degree(Model::Bipartite, 1, &[2], &empty), None);
        // validation errors when the horizon is beyond the truncation
        let low = WeightConfig::new(&[4], 1).unwrap();
        assert!(matches!(
            validate_truncation(Model::Bipartite, 1, &[2], &low),
            Err(Error::TruncationInsufficient { min_degree: 2, .. })
        ));
    }

    #[test]
    fn genus0_colour_factor_and_subset_bound() {
        let ord = engine(Model::Ordinary, &[4], 3);
        let bip = engine(Model::Bipartite, &[4], 3);
        for c in bipartite_ordinary_check(&ord, &bip, 3).unwrap() {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn golden_table_and_oeis() {
        let ord = engine(Model::Ordinary, &[4], 5);
        let bip = engine(Model::Bipartite, &[4], 5);
        let checks = golden_verify(&ord, &bip).unwrap();
        // 36 reference integers + 6 corrected-column guards + strict
        // alignment + 2 OEIS prefixes
        assert_eq!(checks.len(), 36 + 6 + 1 + 2);
        for c in checks {
            if c.documented_defect {
                // the strict printed alignment is the one expected failure
                assert!(
                    !c.pass,
                    "documented defect unexpectedly resolved: {}",
                    c.name
                );
                assert_eq!(c.name, "ordinary T^(2)_2 printed alignment");
            } else {
                assert!(c.pass, "{}: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn oeis_sequences_continue_past_the_reference_table() {
        let bip = engine(Model::Bipartite, &[4], 7);
        for (g, expected) in [
            (1u32, &golden::OEIS_A006300_EXTENDED[..]),
            (2, &golden::OEIS_A006301_EXTENDED[..]),
        ] {
            let col = counts_stable(&bip, g, &[2]).unwrap();
            let nonzero: Vec<i64> = col
                .single_weight_column()
                .unwrap()
                .into_iter()
                .filter(|c| !c.is_zero())
                .map(|c| i64::try_from(&c).unwrap())
                .collect();
            assert_eq!(nonzero, expected, "genus {g}");
        }
    }

    #[test]
    fn boundary_shift_relation_between_digon_and_square_columns() {
        // the length-2 and length-4 one-boundary series are related by one
        // power of t4 at genus 0 (drop the empty map) and at genus 2; this
        // is the structural relation behind the reference-table
        // misalignment documented in the golden module
        let e = engine(Model::Bipartite, &[4], 5);
        let t = WeightSeries::weight(e.curve().config(), 4, rat_int(1)).unwrap();
        let digon = counts_disk(&e, 2).unwrap();
        let square = counts_disk(&e, 4).unwrap();
        let shifted = t.mul(square.series()).unwrap();
        let dropped = digon
            .series()
            .sub(&WeightSeries::one(e.curve().config()))
            .unwrap();
        assert_eq!(dropped, shifted);

        let ord = engine(Model::Ordinary, &[4], 5);
        let digon = counts_stable(&ord, 2, &[2]).unwrap();
        let square = counts_stable(&ord, 2, &[4]).unwrap();
        let t = WeightSeries::weight(ord.curve().config(), 4, rat_int(1)).unwrap();
        assert_eq!(*digon.series(), t.mul(square.series()).unwrap());
    }

    #[test]
    fn sign_fault_breaks_the_golden_column() {
        let cfg = WeightConfig::new(&[4], 5).unwrap();
        let bad = Engine::with_sign_fault(SpectralCurve::build(Model::Bipartite, &cfg).unwrap());
        let t = counts_stable(&bad, 1, &[2]).unwrap();
        let got: Vec<String> = (0..=5u16)
            .map(|i| t.series().coeff(&[i]).to_string())
            .collect();
        assert_ne!(got, vec!["0", "0", "1", "20", "307", "4280"]);
    }
}
