//! The topological recursion engine.
//!
//! Stable forms `ω_{g,n}` (with `2g + n - 2 > 0`) are computed from a
//! [`SpectralCurve`] by the residue formula
//!
//! ```text
//! ω_{g,n+1}(I, z) = Σ_{β = ±1} Res_{q→β} K(z,q) [ ω_{g-1,n+2}(I, q, σ(q))
//!                    + Σ' ω_{g₁,|I₁|+1}(I₁, q) ω_{g₂,|I₂|+1}(I₂, σ(q)) ]
//! ```
//!
//! with `σ(q) = 1/q` and the primed sum excluding any `(0, ∅)` part. Every
//! residue is evaluated by a local expansion in `w = q - β`: the bracket is
//! expanded to its exact pole order with coefficients that stay polar in the
//! spectator variables, the kernel expansion multiplies in, and the `w^{-1}`
//! coefficient is read off. Expansion depths come from the exactly known
//! denominator exponents, never from guesses, and a short window raises an
//! order-deficit error instead of truncating silently.
//!
//! # Sign convention
//!
//! The kernel is used in the orientation
//!
//! ```text
//! K(z,q) = ½ [1/(z-q) - 1/(z-σ(q))] dz / [(y(σ(q)) - y(q)) dx(q)],
//! ```
//!
//! i.e. with the denominator `ω_{0,1}(σ(q)) - ω_{0,1}(q)`. With the
//! opposite orientation every `ω_{g,n}` flips sign by `(-1)^n`; this one is
//! anchored so that the Gaussian ordinary curve yields
//! `ω_{1,1} = z³ dz/(z²-1)⁴`, equivalently a count of `+1` for the one-face
//! genus-one quadrangulation, and it reproduces all golden count data. See
//! the `verify` module for the comparison against the alternative
//! orientation.
//!
//! Results are memoized per `(g, n)`; legs are exchangeable, so the
//! recursion always grows the first leg.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::curve::SpectralCurve;
use crate::error::{Error, Result};
use crate::local::{Coeff, ExpansionPoint, LocalSeries};
use crate::rat::{binomial_rat, neg_one_pow, rat, rat_int, Rat};
use crate::weights::{WeightConfig, WeightSeries};
use crate::zrat::ZRational;

/// One of the two ramification points `z = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pole {
    /// `z = +1`.
    Plus,
    /// `z = -1`.
    Minus,
}

impl Pole {
    /// Both poles, `+1` first.
    pub const ALL: [Pole; 2] = [Pole::Plus, Pole::Minus];

    /// The coordinate value `±1`.
    pub fn value(self) -> i64 {
        match self {
            Pole::Plus => 1,
            Pole::Minus => -1,
        }
    }

    /// The matching expansion point.
    pub fn point(self) -> ExpansionPoint {
        match self {
            Pole::Plus => ExpansionPoint::One,
            Pole::Minus => ExpansionPoint::MinusOne,
        }
    }
}

impl fmt::Display for Pole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pole::Plus => write!(f, "+1"),
            Pole::Minus => write!(f, "-1"),
        }
    }
}

/// Per-leg pole descriptor `(β, k)` standing for `dz/(z-β)^k`.
pub type LegPole = (Pole, u32);

/// A stable form `ω_{g,n}`, stored as a linear combination of products of
/// per-leg polar basis terms:
///
/// ```text
/// ω = Σ_terms  c · Π_i dz_i / (z_i - β_i)^{k_i}
/// ```
///
/// Only negative powers are representable, so decay at `z_i → ∞` is
/// structural. Keys are indexed by leg position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaForm {
    genus: u32,
    legs: u32,
    cfg: Arc<WeightConfig>,
    terms: BTreeMap<Vec<LegPole>, WeightSeries>,
}

impl OmegaForm {
    fn new(genus: u32, legs: u32, cfg: Arc<WeightConfig>) -> Self {
        Self {
            genus,
            legs,
            cfg,
            terms: BTreeMap::new(),
        }
    }

    /// The genus `g`.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// The number of legs `n`.
    pub fn legs(&self) -> u32 {
        self.legs
    }

    /// The weight configuration of the coefficients.
    pub fn config(&self) -> &Arc<WeightConfig> {
        &self.cfg
    }

    /// Iterates the stored terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<LegPole>, &WeightSeries)> {
        self.terms.iter()
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, key: Vec<LegPole>, coeff: WeightSeries) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(key.clone())
            .or_insert_with(|| WeightSeries::zero(&self.cfg));
        *entry = entry.add(&coeff).expect("cfg");
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Largest pole order at `β` over all legs and terms.
    pub fn max_order_at(&self, beta: Pole) -> u32 {
        self.terms
            .keys()
            .flat_map(|key| key.iter())
            .filter(|(p, _)| *p == beta)
            .map(|(_, k)| *k)
            .max()
            .unwrap_or(0)
    }

    /// True if no term carries a simple pole `(z_i - β)^{-1}` in any leg:
    /// the recursion output has no residues at the ramification points.
    pub fn residue_free(&self) -> bool {
        self.terms
            .keys()
            .all(|key| key.iter().all(|(_, k)| *k >= 2))
    }

    /// True if the stored representation is invariant under every leg
    /// transposition.
    pub fn is_leg_symmetric(&self) -> bool {
        let n = self.legs as usize;
        for i in 0..n.saturating_sub(1) {
            for (key, coeff) in &self.terms {
                let mut swapped = key.clone();
                swapped.swap(i, i + 1);
                let other = self.terms.get(&swapped);
                if other != Some(coeff) {
                    return false;
                }
            }
        }
        true
    }

    /// The polar part in one leg for a fixed assignment of the other legs,
    /// as a rational function of that leg.
    fn leg_slice(&self, leg: usize, rest: &[LegPole]) -> ZRational {
        let mut f = ZRational::zero(&self.cfg);
        for (key, coeff) in &self.terms {
            let mut others: Vec<LegPole> = key.clone();
            let (pole, order) = others.remove(leg);
            if others != rest {
                continue;
            }
            f = f
                .add(&ZRational::polar(
                    &self.cfg,
                    pole.value(),
                    order,
                    coeff.clone(),
                ))
                .expect("cfg");
        }
        f
    }

    /// Checks the Galois antisymmetry `ω(z,·)/dx(z) + ω(1/z,·)/dx(1/z) = 0`
    /// exactly. Using `x(1/z) = x(z)` the identity reduces per leg to
    /// `z² f(z) = f(1/z)` for the polar part `f` of that leg.
    pub fn galois_antisymmetric(&self) -> bool {
        let n = self.legs as usize;
        for leg in 0..n {
            let mut rests: Vec<Vec<LegPole>> = Vec::new();
            for key in self.terms.keys() {
                let mut rest = key.clone();
                rest.remove(leg);
                if !rests.contains(&rest) {
                    rests.push(rest);
                }
            }
            for rest in rests {
                let f = self.leg_slice(leg, &rest);
                let lhs = ZRational::z_pow(&self.cfg, 2).mul(&f).expect("cfg");
                if lhs != f.involute() {
                    return false;
                }
            }
        }
        true
    }

    /// For a one-leg form, the coefficient function of `dz` as a rational
    /// function.
    pub fn to_zrational(&self) -> Result<ZRational> {
        if self.legs != 1 {
            return Err(Error::InvalidRequest(format!(
                "to_zrational needs n = 1, got n = {}",
                self.legs
            )));
        }
        let mut f = ZRational::zero(&self.cfg);
        for (key, coeff) in &self.terms {
            let (pole, order) = key[0];
            f = f
                .add(&ZRational::polar(
                    &self.cfg,
                    pole.value(),
                    order,
                    coeff.clone(),
                ))
                .expect("cfg");
        }
        Ok(f)
    }
}

impl fmt::Display for OmegaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = coeff.to_string();
            if c.contains(' ') {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
            for (i, (pole, order)) in key.iter().enumerate() {
                let sign = match pole {
                    Pole::Plus => "-",
                    Pole::Minus => "+",
                };
                write!(f, " / (z{}{}1)^{}", i + 1, sign, order)?;
            }
        }
        Ok(())
    }
}

/// The symmetric bilinear form evaluated on the diagonal pair `(q, σ(q))`:
/// `B(q, 1/q)` has coefficient `-1/(q²-1)²` of `dq²`.
pub fn omega02_diag(cfg: &Arc<WeightConfig>) -> ZRational {
    ZRational::from_parts(cfg, vec![WeightSeries::constant(cfg, rat_int(-1))], 0, 2, 2)
}

/// True for stable topologies `2g + n - 2 > 0`.
pub fn is_stable(g: u32, n: u32) -> bool {
    2 * g + n > 2
}

// ---------------------------------------------------------------------------
// TermSum: local-series coefficients carrying polar data per leg slot

/// One product of polar factors attached to leg slots; slot 0 is the new
/// leg of the recursion step, slots `1..n` the spectator legs.
type SlotKey = Vec<(usize, Pole, u32)>;

/// Sum of slot-assignments with series coefficients; the coefficient type
/// of the local expansions assembled by the engine.
#[derive(Debug, Clone)]
struct TermSum {
    cfg: Arc<WeightConfig>,
    terms: BTreeMap<SlotKey, WeightSeries>,
}

impl TermSum {
    fn zero(cfg: &Arc<WeightConfig>) -> Self {
        Self {
            cfg: cfg.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn scalar(cfg: &Arc<WeightConfig>, c: WeightSeries) -> Self {
        let mut t = Self::zero(cfg);
        if !c.is_zero() {
            t.terms.insert(Vec::new(), c);
        }
        t
    }

    fn scalar_rat(cfg: &Arc<WeightConfig>, c: Rat) -> Self {
        Self::scalar(cfg, WeightSeries::constant(cfg, c))
    }

    fn add_single(&mut self, slot: usize, pole: Pole, order: u32, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let key = vec![(slot, pole, order)];
        let entry = self
            .terms
            .entry(key)
            .or_insert_with(|| WeightSeries::zero(&self.cfg));
        *entry = entry
            .add(&WeightSeries::constant(&self.cfg, coeff))
            .expect("cfg");
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// A single term with the given slot assignment.
    fn assignment(cfg: &Arc<WeightConfig>, mut key: SlotKey, coeff: WeightSeries) -> Self {
        let mut t = Self::zero(cfg);
        if !coeff.is_zero() {
            key.sort_unstable_by_key(|&(slot, _, _)| slot);
            t.terms.insert(key, coeff);
        }
        t
    }

    /// In-place accumulation of one assignment.
    fn add_assignment(&mut self, mut key: SlotKey, coeff: WeightSeries) {
        if coeff.is_zero() {
            return;
        }
        key.sort_unstable_by_key(|&(slot, _, _)| slot);
        let entry = self
            .terms
            .entry(key.clone())
            .or_insert_with(|| WeightSeries::zero(&self.cfg));
        *entry = entry.add(&coeff).expect("cfg");
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl Coeff for TermSum {
    fn zero_like(&self) -> Self {
        Self::zero(&self.cfg)
    }

    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_elem(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            let entry = out
                .terms
                .entry(key.clone())
                .or_insert_with(|| WeightSeries::zero(&self.cfg));
            *entry = entry.add(c).expect("cfg");
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn mul_elem(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.cfg);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut key = ka.clone();
                key.extend_from_slice(kb);
                key.sort_unstable_by_key(|&(slot, _, _)| slot);
                // every leg slot receives its polar factor from exactly one
                // source per contribution
                for pair in key.windows(2) {
                    assert_ne!(pair[0].0, pair[1].0, "slot assigned twice");
                }
                let c = ca.mul(cb).expect("cfg");
                if c.is_zero() {
                    continue;
                }
                let entry = out
                    .terms
                    .entry(key)
                    .or_insert_with(|| WeightSeries::zero(&self.cfg));
                *entry = entry.add(&c).expect("cfg");
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn neg_elem(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }
}

type TsSeries = LocalSeries<TermSum>;

// ---------------------------------------------------------------------------
// bracket factors

/// One multiplicative factor of a bracket contribution, expanded locally at
/// the active ramification point.
enum Factor {
    /// `B(z_i, q)` with a live spectator leg: `1/(z_i - q)²`.
    BLiveQ(usize),
    /// `B(z_i, σ(q))`: `-1/(q z_i - 1)²` after the substitution Jacobian.
    BLiveSigma(usize),
    /// `B(q, σ(q)) = -dq²/(q²-1)²`.
    Diag,
    /// A stored form with its last leg at `q`; the remaining legs map to
    /// the given spectator slots.
    StoredQ(Arc<OmegaForm>, Vec<usize>),
    /// A stored form with its last leg at `σ(q)`.
    StoredSigma(Arc<OmegaForm>, Vec<usize>),
    /// A stored form with its last two legs at `(q, σ(q))`.
    StoredQSigma(Arc<OmegaForm>, Vec<usize>),
}

/// The substitution of `σ(q) = 1/q` into a stored basis factor
/// `dζ/(ζ-β)^k`: with `d(1/q) = -dq/q²` and `(1/q-β)^{-k} =
/// (-β)^k q^k (q-β)^{-k}` this is `-(-β)^k q^{k-2} / (q-β)^k` times `dq`.
fn sigma_pullback(cfg: &Arc<WeightConfig>, pole: Pole, order: u32) -> ZRational {
    let sign = rat_int(-(neg_one_pow(order) * pole.value().pow(order)));
    let base = ZRational::polar(cfg, pole.value(), order, WeightSeries::one(cfg));
    ZRational::z_pow(cfg, order as i32 - 2)
        .mul(&base)
        .expect("cfg")
        .scale_rat(&sign)
}

impl Factor {
    /// Lowest possible `w`-exponent of a stored factor with the last
    /// `live` legs at `q`/`σ(q)`, from the exactly known pole orders.
    fn stored_start(form: &OmegaForm, live: usize, beta: Pole) -> i32 {
        let n = form.legs as usize;
        -form
            .terms
            .keys()
            .map(|key| {
                key[n - live..]
                    .iter()
                    .map(|&(p, k)| if p == beta { k as i32 } else { 0 })
                    .sum::<i32>()
            })
            .max()
            .unwrap_or(0)
    }

    /// A lower bound for the lowest `w`-exponent of this factor at `β`.
    fn start_lb(&self, beta: Pole) -> i32 {
        match self {
            Factor::BLiveQ(_) | Factor::BLiveSigma(_) => 0,
            Factor::Diag => -2,
            Factor::StoredQ(f, _) | Factor::StoredSigma(f, _) => Self::stored_start(f, 1, beta),
            Factor::StoredQSigma(f, _) => Self::stored_start(f, 2, beta),
        }
    }

    /// Expands the factor at `β` with coefficients known through `w^kt`.
    fn build(&self, cfg: &Arc<WeightConfig>, beta: Pole, kt: i32) -> Result<TsSeries> {
        let zero = TermSum::zero(cfg);
        let b = beta.value();
        match self {
            Factor::BLiveQ(slot) => {
                // 1/(z_i - q)² = Σ_j (j+1) w^j / (z_i - β)^{j+2}
                Ok(LocalSeries::generate(
                    beta.point(),
                    0,
                    kt,
                    zero.clone(),
                    |j| {
                        let mut ts = TermSum::zero(cfg);
                        ts.add_single(*slot, beta, (j + 2) as u32, rat_int(j as i64 + 1));
                        ts
                    },
                ))
            }
            Factor::BLiveSigma(slot) => {
                // -1/(q z_i - 1)² =
                //   -Σ_j (j+1)(-1)^j w^j Σ_s C(j,s) β^s / (z_i-β)^{j+2-s}
                Ok(LocalSeries::generate(
                    beta.point(),
                    0,
                    kt,
                    zero.clone(),
                    |j| {
                        let mut ts = TermSum::zero(cfg);
                        for s in 0..=j {
                            let c = rat_int(-(j as i64 + 1) * neg_one_pow(j as u32))
                                * binomial_rat(j as u64, s as u64)
                                * rat_int(b.pow(s as u32));
                            ts.add_single(*slot, beta, (j + 2 - s) as u32, c);
                        }
                        ts
                    },
                ))
            }
            Factor::Diag => {
                let s = omega02_diag(cfg).expand(beta.point(), kt)?;
                Ok(lift_scalar_series(
                    &s,
                    cfg,
                    Vec::new(),
                    &WeightSeries::one(cfg),
                ))
            }
            Factor::StoredQ(form, slots) => {
                stored_series(cfg, form, slots, 1, beta, kt, |cfg, descs| {
                    ZRational::polar(cfg, descs[0].0.value(), descs[0].1, WeightSeries::one(cfg))
                })
            }
            Factor::StoredSigma(form, slots) => {
                stored_series(cfg, form, slots, 1, beta, kt, |cfg, descs| {
                    sigma_pullback(cfg, descs[0].0, descs[0].1)
                })
            }
            Factor::StoredQSigma(form, slots) => {
                stored_series(cfg, form, slots, 2, beta, kt, |cfg, descs| {
                    let zq = ZRational::polar(
                        cfg,
                        descs[0].0.value(),
                        descs[0].1,
                        WeightSeries::one(cfg),
                    );
                    zq.mul(&sigma_pullback(cfg, descs[1].0, descs[1].1))
                        .expect("cfg")
                })
            }
        }
    }
}

/// Expands a stored form whose last `live` legs sit at `q` (and `σ(q)`),
/// accumulating coefficient sums in place. Local expansions are shared
/// across terms with equal live descriptors.
fn stored_series(
    cfg: &Arc<WeightConfig>,
    form: &OmegaForm,
    slots: &[usize],
    live: usize,
    beta: Pole,
    kt: i32,
    live_rational: impl Fn(&Arc<WeightConfig>, &[LegPole]) -> ZRational,
) -> Result<TsSeries> {
    let start = Factor::stored_start(form, live, beta);
    if start > kt {
        return Ok(LocalSeries::zero(beta.point(), kt, TermSum::zero(cfg)));
    }
    let mut coeffs = vec![TermSum::zero(cfg); (kt - start + 1) as usize];
    let mut cache: BTreeMap<Vec<LegPole>, LocalSeries<WeightSeries>> = BTreeMap::new();
    for (key, coeff) in &form.terms {
        let n = key.len();
        let descs = key[n - live..].to_vec();
        if !cache.contains_key(&descs) {
            let local = live_rational(cfg, &descs).expand(beta.point(), kt)?;
            cache.insert(descs.clone(), local);
        }
        let local = &cache[&descs];
        let spect: SlotKey = key[..n - live]
            .iter()
            .enumerate()
            .map(|(i, &(p, k))| (slots[i], p, k))
            .collect();
        for j in local.start().max(start)..=kt {
            let c = local.coeff(j)?.mul(coeff).expect("cfg");
            coeffs[(j - start) as usize].add_assignment(spect.clone(), c);
        }
    }
    Ok(LocalSeries::new(
        beta.point(),
        start,
        coeffs,
        TermSum::zero(cfg),
    ))
}

/// Lifts a scalar local series into TermSum coefficients carrying a fixed
/// slot assignment and an overall series coefficient.
fn lift_scalar_series(
    s: &LocalSeries<WeightSeries>,
    cfg: &Arc<WeightConfig>,
    assignment: SlotKey,
    coeff: &WeightSeries,
) -> TsSeries {
    LocalSeries::generate(
        s.point(),
        s.start(),
        s.known_to(),
        TermSum::zero(cfg),
        |j| {
            let c = s.coeff(j).expect("within window").mul(coeff).expect("cfg");
            TermSum::assignment(cfg, assignment.clone(), c)
        },
    )
}

// ---------------------------------------------------------------------------
// engine

/// Memoizing recursion engine over one spectral curve.
///
/// Finished entries are shared as [`Arc`]s; the memo table is behind a
/// read/write lock, so concurrent readers of finished entries are safe
/// and the engine can be shared across threads. No lock is held across a
/// recursive computation. Independent engines (different curves or
/// truncations) are fully independent.
pub struct Engine {
    curve: SpectralCurve,
    kernel_denom: ZRational,
    memo: RwLock<BTreeMap<(u32, u32), Arc<OmegaForm>>>,
    sign_fault_at_minus: bool,
}

impl Engine {
    /// Creates an engine for the curve.
    pub fn new(curve: SpectralCurve) -> Self {
        let kernel_denom = curve.kernel_denom();
        Self {
            curve,
            kernel_denom,
            memo: RwLock::new(BTreeMap::new()),
            sign_fault_at_minus: false,
        }
    }

    /// Testing hook: negates the kernel at `β = -1` only, which breaks the
    /// cancellations behind the golden count data.
    pub fn with_sign_fault(curve: SpectralCurve) -> Self {
        let mut e = Self::new(curve);
        e.sign_fault_at_minus = true;
        e
    }

    /// The underlying curve.
    pub fn curve(&self) -> &SpectralCurve {
        &self.curve
    }

    /// The stable form `ω_{g,n}`, computed on demand and memoized;
    /// repeated requests return the identical shared object.
    pub fn omega(&self, g: u32, n: u32) -> Result<Arc<OmegaForm>> {
        if !is_stable(g, n) {
            return Err(Error::UnstableTopology { g, n });
        }
        if let Some(hit) = self.memo.read().expect("memo lock").get(&(g, n)) {
            return Ok(hit.clone());
        }
        let form = Arc::new(self.compute_omega(g, n)?);
        Ok(self
            .memo
            .write()
            .expect("memo lock")
            .entry((g, n))
            .or_insert(form)
            .clone())
    }

    /// Contributions to the bracket of `ω_{g,n}`; `n_old = n - 1` spectator
    /// legs occupy slots `1..n`.
    fn bracket(&self, g: u32, n_old: u32) -> Result<Vec<Vec<Factor>>> {
        let mut contribs: Vec<Vec<Factor>> = Vec::new();
        // genus-reduction part
        if g >= 1 {
            if g == 1 && n_old == 0 {
                contribs.push(vec![Factor::Diag]);
            } else {
                let form = self.omega(g - 1, n_old + 2)?;
                let slots: Vec<usize> = (1..=n_old as usize).collect();
                contribs.push(vec![Factor::StoredQSigma(form, slots)]);
            }
        }
        // stable-splitting part, excluding any (0, ∅) side
        let legs: Vec<usize> = (1..=n_old as usize).collect();
        for g1 in 0..=g {
            let g2 = g - g1;
            for mask in 0..(1u32 << n_old) {
                let s1: Vec<usize> = legs
                    .iter()
                    .copied()
                    .filter(|i| mask & (1 << (i - 1)) != 0)
                    .collect();
                let s2: Vec<usize> = legs
                    .iter()
                    .copied()
                    .filter(|i| mask & (1 << (i - 1)) == 0)
                    .collect();
                if (g1 == 0 && s1.is_empty()) || (g2 == 0 && s2.is_empty()) {
                    continue;
                }
                let f1 = if g1 == 0 && s1.len() == 1 {
                    Factor::BLiveQ(s1[0])
                } else {
                    Factor::StoredQ(self.omega(g1, s1.len() as u32 + 1)?, s1)
                };
                let f2 = if g2 == 0 && s2.len() == 1 {
                    Factor::BLiveSigma(s2[0])
                } else {
                    Factor::StoredSigma(self.omega(g2, s2.len() as u32 + 1)?, s2)
                };
                contribs.push(vec![f1, f2]);
            }
        }
        Ok(contribs)
    }

    /// The kernel numerator `±½[1/(z-q) - 1/(z-σ(q))]` expanded at `β`,
    /// with slot-0 polar coefficients in `z`. The scalar carries the global
    /// orientation (see the module docs) and the optional fault injection.
    fn kernel_z(&self, beta: Pole, kt: i32) -> TsSeries {
        let cfg = self.curve.config();
        let b = beta.value();
        let zero = TermSum::zero(cfg);
        let term1 = LocalSeries::generate(beta.point(), 0, kt, zero.clone(), |j| {
            let mut ts = TermSum::zero(cfg);
            ts.add_single(0, beta, (j + 1) as u32, rat_int(1));
            ts
        });
        // S[j] = Σ_s (-1)^j β^{s+1} C(j,s) (z-β)^{-(j+1-s)};
        // 1/(z - 1/q) = β·S + w·S
        let s_series = LocalSeries::generate(beta.point(), 0, kt, zero.clone(), |j| {
            let mut ts = TermSum::zero(cfg);
            for s in 0..=j {
                let c = rat_int(neg_one_pow(j as u32) * b.pow(s as u32 + 1))
                    * binomial_rat(j as u64, s as u64);
                ts.add_single(0, beta, (j + 1 - s) as u32, c);
            }
            ts
        });
        let term2 = s_series
            .scale(&TermSum::scalar_rat(cfg, rat_int(b)))
            .add(&s_series.shift(1))
            .expect("same point");
        // flipped-denominator orientation = global -1 on the printed kernel
        let mut sign = rat(-1, 2);
        if self.sign_fault_at_minus && beta == Pole::Minus {
            sign = -sign;
        }
        term1
            .add(&term2.neg())
            .expect("same point")
            .scale(&TermSum::scalar_rat(cfg, sign))
            .trim_front()
    }

    /// Local inverse of the kernel denominator `[y(q)-y(1/q)]dx/dq` at `β`,
    /// trusted through `w^target`.
    fn denom_inverse(&self, beta: Pole, target: i32) -> Result<LocalSeries<WeightSeries>> {
        let mut extra = 4;
        loop {
            let d = self.kernel_denom.expand(beta.point(), target + extra)?;
            if d.is_zero() {
                return Err(Error::DegenerateCurve(beta.to_string()));
            }
            match d.invert(target) {
                Ok(s) => return Ok(s),
                Err(Error::OrderDeficit { .. }) if extra <= 64 => extra += 4,
                Err(e) => return Err(e),
            }
        }
    }

    /// Exact vanishing order of the kernel denominator at `β`.
    fn denom_vanishing_order(&self, beta: Pole) -> Result<i32> {
        let probe = self.kernel_denom.expand(beta.point(), 8)?.trim_front();
        if probe.is_zero() {
            return Err(Error::DegenerateCurve(beta.to_string()));
        }
        Ok(probe.start())
    }

    fn compute_omega(&self, g: u32, n: u32) -> Result<OmegaForm> {
        let cfg = self.curve.config().clone();
        let n_old = n - 1;
        let contribs = self.bracket(g, n_old)?;
        let mut out = OmegaForm::new(g, n, cfg.clone());
        for beta in Pole::ALL {
            let v = self.denom_vanishing_order(beta)?;
            // per-contribution lower bounds for the lowest w-exponents:
            // kernel numerator starts at w¹, the denominator inverse at w^{-v}
            let plans: Vec<(Vec<i32>, i32)> = contribs
                .iter()
                .map(|factors| {
                    let mut starts = vec![1, -v];
                    starts.extend(factors.iter().map(|f| f.start_lb(beta)));
                    let total: i32 = starts.iter().sum();
                    (starts, total)
                })
                .collect();
            let needed = |starts: &[i32], total: i32, i: usize| -> i32 { -1 - (total - starts[i]) };
            // the kernel pieces are shared by every contribution at this β
            let kernel_order = plans
                .iter()
                .filter(|(_, total)| *total <= -1)
                .map(|(s, t)| needed(s, *t, 0))
                .max();
            let dinv_order = plans
                .iter()
                .filter(|(_, total)| *total <= -1)
                .map(|(s, t)| needed(s, *t, 1))
                .max();
            let (Some(kernel_order), Some(dinv_order)) = (kernel_order, dinv_order) else {
                continue;
            };
            let kernel = self.kernel_z(beta, kernel_order);
            let dinv = lift_scalar_series(
                &self.denom_inverse(beta, dinv_order)?,
                &cfg,
                Vec::new(),
                &WeightSeries::one(&cfg),
            );
            let kernel_dinv = kernel.mul(&dinv)?;
            for (factors, (starts, total)) in contribs.iter().zip(&plans) {
                if *total > -1 {
                    continue; // no w^{-1} coefficient can arise
                }
                let mut product = kernel_dinv.clone();
                for (i, f) in factors.iter().enumerate() {
                    product =
                        product.mul(&f.build(&cfg, beta, needed(starts, *total, i + 2))?)?;
                }
                let residue = product.coeff(-1)?.clone();
                for (slot_key, coeff) in residue.terms {
                    let mut key: Vec<LegPole> = vec![(Pole::Plus, 0); n as usize];
                    let mut seen = vec![false; n as usize];
                    for (slot, pole, order) in slot_key {
                        key[slot] = (pole, order);
                        seen[slot] = true;
                    }
                    assert!(seen.iter().all(|&s| s), "every leg receives a polar factor");
                    out.add_term(key, coeff);
                }
            }
        }
        Ok(out)
    }
}
