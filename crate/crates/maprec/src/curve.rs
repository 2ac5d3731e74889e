//! Spectral curves for map enumeration.
//!
//! Three models share one Zhukovsky geometry on the sphere, with the
//! covering map ramified at `z = ±1` and the deck involution `σ(z) = 1/z`:
//!
//! * **ordinary**: `x = γ(z + 1/z)`, `y = Σ_k u_{2k+1} z^{2k+1}`, counting
//!   maps with faces of even degree;
//! * **bipartite**: `x = γ²(z + 1/z) + 2γ²`, `y = Σ_k u_{2k+1} z^{k+1} /
//!   (γ(1+z))`, an irregular curve: `y` itself has a simple pole at the
//!   ramification point `z = -1` while `y·dx` stays regular;
//! * **dessins**: the bipartite curve with every weight switched off,
//!   `x = z + 1/z + 2`, `y = z/(1+z)`.
//!
//! Odd powers of `γ` never appear as standalone values. The curve stores
//! the reduced coefficients `u_{2k+1}/γ` and, for the ordinary model, the
//! γ-stripped `x/γ` and `y/γ`; all downstream consumers (the recursion
//! kernel, `ω_{0,1}`, the count-extraction power of `x`) use combinations
//! that are even in `γ`, so every stored series lives in `ℚ[[t]]`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rat::{binomial_rat, rat_int};
use crate::weights::{WeightConfig, WeightSeries};
use crate::zrat::ZRational;

/// The three supported map-enumeration models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Maps with faces of even degree.
    Ordinary,
    /// Bipartite maps.
    Bipartite,
    /// Dessins d'enfant (bipartite with all weights zero).
    Dessins,
}

impl Model {
    /// Parser-friendly name.
    pub fn name(&self) -> &'static str {
        match self {
            Model::Ordinary => "ordinary",
            Model::Bipartite => "bipartite",
            Model::Dessins => "dessins",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinary" => Ok(Model::Ordinary),
            "bipartite" => Ok(Model::Bipartite),
            "dessins" => Ok(Model::Dessins),
            other => Err(Error::InvalidModel(format!("unknown model '{other}'"))),
        }
    }
}

/// Solves `γ² = 1 + Σ_k t_{2k} C(2k-1, k) γ^{2k}` by fixed-point iteration.
///
/// Each pass fixes one more total degree, so `N + 1` iterations give the
/// unique solution with constant term 1.
pub fn solve_gamma_sq(cfg: &Arc<WeightConfig>) -> WeightSeries {
    let mut g = WeightSeries::one(cfg);
    for _ in 0..=cfg.trunc() {
        let mut next = WeightSeries::one(cfg);
        for &idx in cfg.indices() {
            let k = idx / 2;
            let t = WeightSeries::weight(cfg, idx, binomial_rat((2 * k - 1) as u64, k as u64))
                .expect("active index");
            next = next.add(&t.mul(&g.pow(k)).expect("cfg")).expect("cfg");
        }
        if next == g {
            break;
        }
        g = next;
    }
    g
}

/// The reduced coefficients `u_{2k+1}/γ` for `k = 0 … d-1`:
/// `u_{2k+1}/γ = δ_{k,0} - Σ_{j ≥ k+1} t_{2j} C(2j-1, j+k) γ^{2j-2}`.
///
/// With no active weight the list is the single entry 1.
pub fn compute_u(cfg: &Arc<WeightConfig>, gamma_sq: &WeightSeries) -> Vec<WeightSeries> {
    let d = cfg.max_index().map_or(1, |mi| mi / 2);
    let mut out = Vec::with_capacity(d as usize);
    for k in 0..d {
        let mut e = if k == 0 {
            WeightSeries::one(cfg)
        } else {
            WeightSeries::zero(cfg)
        };
        for &idx in cfg.indices() {
            let j = idx / 2;
            if j < k + 1 {
                continue;
            }
            let t =
                WeightSeries::weight(cfg, idx, binomial_rat((2 * j - 1) as u64, (j + k) as u64))
                    .expect("active index");
            let term = t.mul(&gamma_sq.pow(j - 1)).expect("cfg");
            e = e.sub(&term).expect("cfg");
        }
        out.push(e);
    }
    out
}

/// A fully built spectral curve over a weight configuration.
///
/// `x_reduced` and `y_reduced` are `x/γ^parity` and `y/γ^parity` with
/// `parity = 1` for the ordinary model and `0` otherwise; `branch_plus` and
/// `branch_minus` are the values of `x/γ^parity` at `z = ±1`.
#[derive(Debug, Clone)]
pub struct SpectralCurve {
    model: Model,
    cfg: Arc<WeightConfig>,
    gamma_sq: WeightSeries,
    u_over_gamma: Vec<WeightSeries>,
    x_reduced: ZRational,
    y_reduced: ZRational,
    dx_reduced: ZRational,
    gamma_parity: u32,
    branch_plus: WeightSeries,
    branch_minus: WeightSeries,
}

impl SpectralCurve {
    /// Builds the curve for a model over a weight configuration.
    ///
    /// The dessins model requires an empty configuration; the ordinary
    /// model accepts only even weights, which [`WeightConfig`] already
    /// guarantees.
    pub fn build(model: Model, cfg: &Arc<WeightConfig>) -> Result<Self> {
        if model == Model::Dessins && cfg.arity() != 0 {
            return Err(Error::InvalidModel(
                "the dessins model takes no weights; use the bipartite model instead".into(),
            ));
        }
        let gamma_sq = solve_gamma_sq(cfg);
        let u_over_gamma = compute_u(cfg, &gamma_sq);
        let one = WeightSeries::one(cfg);
        let (x_reduced, y_reduced, gamma_parity) = match model {
            Model::Bipartite | Model::Dessins => {
                // x = γ²(1+z)²/z, y = (Σ_k (u_{2k+1}/γ) z^{k+1}) / (1+z)
                let x = ZRational::from_parts(
                    cfg,
                    vec![
                        gamma_sq.clone(),
                        gamma_sq.scale(&rat_int(2)),
                        gamma_sq.clone(),
                    ],
                    1,
                    0,
                    0,
                );
                let mut ynum = vec![WeightSeries::zero(cfg)];
                ynum.extend(u_over_gamma.iter().cloned());
                let y = ZRational::from_parts(cfg, ynum, 0, 0, 1);
                (x, y, 0)
            }
            Model::Ordinary => {
                // x/γ = z + 1/z, y/γ = Σ_k (u_{2k+1}/γ) z^{2k+1}
                let x = ZRational::from_parts(
                    cfg,
                    vec![one.clone(), WeightSeries::zero(cfg), one.clone()],
                    1,
                    0,
                    0,
                );
                let mut ynum = Vec::new();
                for e in &u_over_gamma {
                    ynum.push(WeightSeries::zero(cfg));
                    ynum.push(e.clone());
                }
                let y = ZRational::poly(cfg, ynum);
                (x, y, 1)
            }
        };
        let dx_reduced = x_reduced.derivative();
        let branch_plus = x_reduced.eval(&rat_int(1))?;
        let branch_minus = x_reduced.eval(&rat_int(-1))?;
        Ok(Self {
            model,
            cfg: cfg.clone(),
            gamma_sq,
            u_over_gamma,
            x_reduced,
            y_reduced,
            dx_reduced,
            gamma_parity,
            branch_plus,
            branch_minus,
        })
    }

    /// The model tag.
    pub fn model(&self) -> Model {
        self.model
    }

    /// The weight configuration.
    pub fn config(&self) -> &Arc<WeightConfig> {
        &self.cfg
    }

    /// The series `γ²` solving the fixed-point equation.
    pub fn gamma_sq(&self) -> &WeightSeries {
        &self.gamma_sq
    }

    /// The reduced coefficients `u_{2k+1}/γ`.
    pub fn u_over_gamma(&self) -> &[WeightSeries] {
        &self.u_over_gamma
    }

    /// `x/γ^parity` as a rational function.
    pub fn x_reduced(&self) -> &ZRational {
        &self.x_reduced
    }

    /// `y/γ^parity`.
    pub fn y_reduced(&self) -> &ZRational {
        &self.y_reduced
    }

    /// `d(x/γ^parity)/dz`.
    pub fn dx_reduced(&self) -> &ZRational {
        &self.dx_reduced
    }

    /// Power of `γ` stripped from `x` and `y` (1 for ordinary, else 0).
    pub fn gamma_parity(&self) -> u32 {
        self.gamma_parity
    }

    /// Branch value of `x/γ^parity` at `z = +1` (equals `4γ²` for the
    /// bipartite model).
    pub fn branch_plus(&self) -> &WeightSeries {
        &self.branch_plus
    }

    /// Branch value of `x/γ^parity` at `z = -1` (zero for bipartite).
    pub fn branch_minus(&self) -> &WeightSeries {
        &self.branch_minus
    }

    /// `ω_{0,1}` as a coefficient function: `y·dx/dz`, always even in `γ`.
    pub fn omega01(&self) -> ZRational {
        let raw = self.y_reduced.mul(&self.dx_reduced).expect("cfg");
        if self.gamma_parity == 1 {
            raw.scale(&self.gamma_sq)
        } else {
            raw
        }
    }

    /// The recursion-kernel denominator in the orientation
    /// `[y(q) - y(1/q)] · dx/dq`, even in `γ`.
    pub fn kernel_denom(&self) -> ZRational {
        let diff = self.y_reduced.sub(&self.y_reduced.involute()).expect("cfg");
        let raw = diff.mul(&self.dx_reduced).expect("cfg");
        if self.gamma_parity == 1 {
            raw.scale(&self.gamma_sq)
        } else {
            raw
        }
    }

    /// The function whose `l`-th power multiplies `ω_{g,n}` in count
    /// extraction: `x` for the bipartite model, `x²` for the ordinary one
    /// (where boundary powers are `x^{2l}`).
    pub fn extraction_base(&self) -> ZRational {
        match self.model {
            Model::Bipartite | Model::Dessins => self.x_reduced.clone(),
            Model::Ordinary => self.x_reduced.pow(2).scale(&self.gamma_sq),
        }
    }
}

/// Outcome of one named exact identity check.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    /// Short identifier of the identity.
    pub name: String,
    /// True if the identity holds exactly.
    pub pass: bool,
    /// Mismatch description when it fails.
    pub detail: String,
    /// Marks an expected failure against defective reference data; the
    /// failure is reported but does not gate the suite.
    pub documented_defect: bool,
}

impl IdentityCheck {
    /// Passing check.
    pub fn ok(name: &str) -> Self {
        Self {
            name: name.into(),
            pass: true,
            detail: String::new(),
            documented_defect: false,
        }
    }

    /// Failing check with a mismatch description.
    pub fn fail(name: &str, detail: String) -> Self {
        Self {
            name: name.into(),
            pass: false,
            detail,
            documented_defect: false,
        }
    }

    fn of_eq(name: &str, lhs: &ZRational, rhs: &ZRational) -> Self {
        if lhs == rhs {
            Self::ok(name)
        } else {
            Self::fail(name, format!("lhs = {lhs}, rhs = {rhs}"))
        }
    }
}

/// Verifies the exact identities relating the ordinary and bipartite curves
/// built over the same weight configuration:
///
/// 1. `x_bip(z²) = x_ord(z)²`;
/// 2. `y_bip(z²)·x_ord(z) = y_ord(z)`, checked γ-stripped as
///    `N(z²)·(x_ord/γ)(z) = (y_ord/γ)(z)·(1+z²)` with `N = y_bip·(1+z)`;
/// 3. `y_bip·x_bip = 1 + z - (1+z) Σ_{k≥1} Σ_{j≥k+1} t_{2j} C(2j-1, j+k)
///    γ^{2j} z^k`;
/// 4. `Y(z)·x_bip(z)` with `Y(z) = y_bip(1/z) - y_bip(z)` equals its closed
///    form `γ²(1+z)²/z - (1+z)[2 - Σ_k t_{2k} γ^{2k}(Σ_{l=1}^{k-1} z^l
///    C(2k-1,k+l) - Σ_{l=-k}^{0} z^l C(2k-1,k+l))]`;
///
/// plus the bipartite branch-point values and the Zhukovsky factorisation
/// `(x-a)(x-b) = γ⁴(z-1/z)²`.
pub fn check_curve_relations(
    ord: &SpectralCurve,
    bip: &SpectralCurve,
) -> Result<Vec<IdentityCheck>> {
    if ord.cfg != bip.cfg {
        return Err(Error::ConfigMismatch("curve relation check".into()));
    }
    if ord.model != Model::Ordinary || bip.model == Model::Ordinary {
        return Err(Error::InvalidModel(
            "relation check expects an ordinary and a bipartite/dessins curve".into(),
        ));
    }
    let cfg = &ord.cfg;
    let gamma_sq = &ord.gamma_sq;
    let mut checks = Vec::new();

    // (i) x_bip(z²) = x_ord(z)² = γ² (x_ord/γ)²
    let lhs = bip.x_reduced.subst_square()?;
    let rhs = ord.x_reduced.pow(2).scale(gamma_sq);
    checks.push(IdentityCheck::of_eq("x_bip(z^2) = x_ord(z)^2", &lhs, &rhs));

    // (ii) y_bip(z²)·x_ord(z) = y_ord(z), γ-stripped and cleared of the
    // (1+z²) denominator
    let one_plus_z = ZRational::poly(cfg, vec![WeightSeries::one(cfg), WeightSeries::one(cfg)]);
    let n_poly = bip.y_reduced.mul(&one_plus_z).expect("cfg");
    let lhs = n_poly.subst_square()?.mul(&ord.x_reduced).expect("cfg");
    let one_z2 = ZRational::poly(
        cfg,
        vec![
            WeightSeries::one(cfg),
            WeightSeries::zero(cfg),
            WeightSeries::one(cfg),
        ],
    );
    let rhs = ord.y_reduced.mul(&one_z2).expect("cfg");
    checks.push(IdentityCheck::of_eq(
        "y_bip(z^2) x_ord(z) = y_ord(z)",
        &lhs,
        &rhs,
    ));

    // (iii) y_bip·x_bip = 1 + z - (1+z) Σ_{k=1}^{d-1} Σ_{j≥k+1} …
    let lhs = bip.y_reduced.mul(&bip.x_reduced).expect("cfg");
    let d = cfg.max_index().map_or(1, |mi| mi / 2);
    let mut sum_coeffs = vec![WeightSeries::zero(cfg); d as usize];
    for k in 1..d {
        for &idx in cfg.indices() {
            let j = idx / 2;
            if j < k + 1 {
                continue;
            }
            let t =
                WeightSeries::weight(cfg, idx, binomial_rat((2 * j - 1) as u64, (j + k) as u64))
                    .expect("active");
            sum_coeffs[k as usize] = sum_coeffs[k as usize]
                .add(&t.mul(&gamma_sq.pow(j)).expect("cfg"))
                .expect("cfg");
        }
    }
    let sum_poly = ZRational::poly(cfg, sum_coeffs);
    let rhs = one_plus_z
        .sub(&one_plus_z.mul(&sum_poly).expect("cfg"))
        .expect("cfg");
    checks.push(IdentityCheck::of_eq(
        "y_bip x_bip positive-power form",
        &lhs,
        &rhs,
    ));

    // (iv) Y(z)·x_bip(z) closed form
    let big_y = bip.y_reduced.involute().sub(&bip.y_reduced).expect("cfg");
    let lhs = big_y.mul(&bip.x_reduced).expect("cfg");
    let first = ZRational::from_parts(
        cfg,
        vec![
            gamma_sq.clone(),
            gamma_sq.scale(&rat_int(2)),
            gamma_sq.clone(),
        ],
        1,
        0,
        0,
    );
    let mut bracket = ZRational::constant(WeightSeries::constant(cfg, rat_int(2)));
    for &idx in cfg.indices() {
        let k = idx / 2;
        let tg = WeightSeries::weight(cfg, idx, rat_int(1))
            .expect("active")
            .mul(&gamma_sq.pow(k))
            .expect("cfg");
        let mut inner = ZRational::zero(cfg);
        for l in 1..k as i32 {
            let c = binomial_rat((2 * k - 1) as u64, (k as i64 + l as i64) as u64);
            inner = inner
                .add(&ZRational::z_pow(cfg, l).scale_rat(&c))
                .expect("cfg");
        }
        for l in -(k as i32)..=0 {
            let c = binomial_rat((2 * k - 1) as u64, (k as i64 + l as i64) as u64);
            inner = inner
                .sub(&ZRational::z_pow(cfg, l).scale_rat(&c))
                .expect("cfg");
        }
        bracket = bracket.sub(&inner.scale(&tg)).expect("cfg");
    }
    let rhs = first
        .sub(&one_plus_z.mul(&bracket).expect("cfg"))
        .expect("cfg");
    checks.push(IdentityCheck::of_eq("Y x_bip closed form", &lhs, &rhs));

    // branch points of the bipartite curve: x(+1) = 4γ², x(-1) = 0
    let four_gamma = gamma_sq.scale(&rat_int(4));
    if bip.branch_plus == four_gamma && bip.branch_minus.is_zero() {
        checks.push(IdentityCheck::ok("branch points (4γ², 0)"));
    } else {
        checks.push(IdentityCheck::fail(
            "branch points (4γ², 0)",
            format!("x(+1) = {}, x(-1) = {}", bip.branch_plus, bip.branch_minus),
        ));
    }

    // (x - a)(x - b) = γ⁴ (z - 1/z)² for the bipartite curve
    let x = &bip.x_reduced;
    let a = ZRational::constant(four_gamma);
    let lhs = x.sub(&a)?.mul(x).expect("cfg");
    let z_minus_inv = ZRational::z_pow(cfg, 1).sub(&ZRational::z_pow(cfg, -1))?;
    let rhs = z_minus_inv.pow(2).scale(&gamma_sq.pow(2));
    checks.push(IdentityCheck::of_eq("(x-a)(x-b) = γ⁴(z-1/z)²", &lhs, &rhs));

    Ok(checks)
}

/// The closed form `γ² = (1 - √(1 - 12 t_4)) / (6 t_4)` of the
/// quadrangulation model, computed through the series square root. Only
/// valid for a configuration whose single active weight is `t_4`.
pub fn gamma_sq_closed_form_t4(cfg: &Arc<WeightConfig>) -> Result<WeightSeries> {
    if cfg.indices() != [4] {
        return Err(Error::InvalidConfig(
            "closed form requires exactly the weight t4".into(),
        ));
    }
    // work one order higher so the division by t4 keeps full precision
    let hi = cfg.with_trunc(cfg.trunc() + 1);
    let twelve_t = WeightSeries::weight(&hi, 4, rat_int(12))?;
    let arg = WeightSeries::one(&hi).sub(&twelve_t)?;
    let root = arg.sqrt()?;
    let numer = WeightSeries::one(&hi).sub(&root)?;
    let divisor = rat_int(6) * cfg.scale_of(4).expect("validated");
    let g = numer.div_by_weight(4, &divisor)?;
    Ok(g.truncated(cfg.trunc()))
}
