//! Rational functions of one Zhukovsky variable.
//!
//! A [`ZRational`] is `P(z) / (z^p (z-1)^m (z+1)^q)` with [`WeightSeries`]
//! coefficients in the numerator polynomial. The denominator family is
//! fixed by construction: every object produced by the recursion for the
//! curves handled here has poles only at the ramification points `z = ±1`
//! and at the poles `z = 0, ∞` of the covering map, and the family is
//! closed under addition, multiplication and the involution `z → 1/z`.
//! Keeping the factored denominators makes canonicalisation exact over a
//! coefficient ring with zero divisors: the three linear factors are monic,
//! so synthetic division decides divisibility by checking that the
//! remainder is the zero series.
//!
//! Local Laurent data lives in [`LocalSeries`]; expansion orders are always
//! derived from the exactly known denominator exponents.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
pub use crate::local::ExpansionPoint;
use crate::local::LocalSeries;
use crate::rat::{binomial_rat, rat_int, Rat};
use crate::weights::{WeightConfig, WeightSeries};

/// Rational function `P(z) / (z^p (z-1)^m (z+1)^q)` over [`WeightSeries`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZRational {
    /// Numerator coefficients, index `i` holding the coefficient of `z^i`;
    /// trailing zeros trimmed, empty for the zero function.
    num: Vec<WeightSeries>,
    /// Exponent of `z` in the denominator.
    dz: u32,
    /// Exponent of `(z - 1)`.
    dm: u32,
    /// Exponent of `(z + 1)`.
    dp: u32,
    cfg: Arc<WeightConfig>,
}

// ---------------------------------------------------------------------------
// polynomial helpers on Vec<WeightSeries>

fn poly_trim(p: &mut Vec<WeightSeries>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_add(a: &[WeightSeries], b: &[WeightSeries], cfg: &Arc<WeightConfig>) -> Vec<WeightSeries> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        let x = a.get(i).cloned().unwrap_or_else(|| WeightSeries::zero(cfg));
        let y = b.get(i).cloned().unwrap_or_else(|| WeightSeries::zero(cfg));
        out.push(x.add(&y).expect("same config"));
    }
    poly_trim(&mut out);
    out
}

fn poly_mul(a: &[WeightSeries], b: &[WeightSeries], cfg: &Arc<WeightConfig>) -> Vec<WeightSeries> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![WeightSeries::zero(cfg); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y).expect("cfg")).expect("cfg");
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_neg(a: &[WeightSeries]) -> Vec<WeightSeries> {
    a.iter().map(|c| c.neg()).collect()
}

/// Evaluates at a rational point by Horner's rule.
fn poly_eval(a: &[WeightSeries], at: &Rat, cfg: &Arc<WeightConfig>) -> WeightSeries {
    let mut acc = WeightSeries::zero(cfg);
    for c in a.iter().rev() {
        acc = acc.scale(at).add(c).expect("cfg");
    }
    acc
}

/// Exact division by the monic factor `(z - c)`, `c = ±1`; the remainder
/// must vanish (caller checks via evaluation).
fn poly_div_linear(a: &[WeightSeries], c: i64, cfg: &Arc<WeightConfig>) -> Vec<WeightSeries> {
    if a.is_empty() {
        return Vec::new();
    }
    let cr = rat_int(c);
    let mut out = vec![WeightSeries::zero(cfg); a.len() - 1];
    let mut carry = WeightSeries::zero(cfg);
    for i in (1..a.len()).rev() {
        let b = a[i].add(&carry).expect("cfg");
        carry = b.scale(&cr);
        out[i - 1] = b;
    }
    debug_assert!(
        a[0].add(&carry).expect("cfg").is_zero(),
        "nonzero remainder"
    );
    poly_trim(&mut out);
    out
}

/// Coefficients of `P(c + w)` as a polynomial in `w`.
fn poly_recentre(a: &[WeightSeries], c: i64, cfg: &Arc<WeightConfig>) -> Vec<WeightSeries> {
    let n = a.len();
    let mut out = vec![WeightSeries::zero(cfg); n];
    for (i, coeff) in a.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        // (c + w)^i = Σ_j C(i, j) c^{i-j} w^j
        let mut cpow = Rat::one();
        for j in (0..=i).rev() {
            let scale = binomial_rat(i as u64, j as u64) * cpow.clone();
            out[j] = out[j].add(&coeff.scale(&scale)).expect("cfg");
            cpow *= rat_int(c);
        }
    }
    poly_trim(&mut out);
    out
}

// ---------------------------------------------------------------------------

impl ZRational {
    /// The zero function.
    pub fn zero(cfg: &Arc<WeightConfig>) -> Self {
        Self {
            num: Vec::new(),
            dz: 0,
            dm: 0,
            dp: 0,
            cfg: cfg.clone(),
        }
    }

    /// The constant 1.
    pub fn one(cfg: &Arc<WeightConfig>) -> Self {
        Self::constant(WeightSeries::one(cfg))
    }

    /// A constant function.
    pub fn constant(c: WeightSeries) -> Self {
        let cfg = c.config().clone();
        let mut r = Self {
            num: vec![c],
            dz: 0,
            dm: 0,
            dp: 0,
            cfg,
        };
        poly_trim(&mut r.num);
        r
    }

    /// `z^k` for any integer `k` (negative powers go to the denominator).
    pub fn z_pow(cfg: &Arc<WeightConfig>, k: i32) -> Self {
        if k >= 0 {
            let mut num = vec![WeightSeries::zero(cfg); k as usize + 1];
            num[k as usize] = WeightSeries::one(cfg);
            Self {
                num,
                dz: 0,
                dm: 0,
                dp: 0,
                cfg: cfg.clone(),
            }
        } else {
            Self {
                num: vec![WeightSeries::one(cfg)],
                dz: (-k) as u32,
                dm: 0,
                dp: 0,
                cfg: cfg.clone(),
            }
        }
    }

    /// Builds from numerator coefficients and denominator exponents,
    /// canonicalising the result.
    pub fn from_parts(
        cfg: &Arc<WeightConfig>,
        num: Vec<WeightSeries>,
        dz: u32,
        dm: u32,
        dp: u32,
    ) -> Self {
        let mut r = Self {
            num,
            dz,
            dm,
            dp,
            cfg: cfg.clone(),
        };
        r.canonicalize();
        r
    }

    /// A polynomial with the given `z`-coefficients.
    pub fn poly(cfg: &Arc<WeightConfig>, coeffs: Vec<WeightSeries>) -> Self {
        Self::from_parts(cfg, coeffs, 0, 0, 0)
    }

    /// `coeff / (z - c)^order` for `c = ±1` or `c = 0`.
    pub fn polar(cfg: &Arc<WeightConfig>, c: i64, order: u32, coeff: WeightSeries) -> Self {
        let (dz, dm, dp) = match c {
            0 => (order, 0, 0),
            1 => (0, order, 0),
            -1 => (0, 0, order),
            _ => panic!("polar centre must be 0 or ±1"),
        };
        Self::from_parts(cfg, vec![coeff], dz, dm, dp)
    }

    fn canonicalize(&mut self) {
        poly_trim(&mut self.num);
        if self.num.is_empty() {
            self.dz = 0;
            self.dm = 0;
            self.dp = 0;
            return;
        }
        while self.dz > 0 && self.num[0].is_zero() {
            self.num.remove(0);
            self.dz -= 1;
        }
        while self.dm > 0 && poly_eval(&self.num, &rat_int(1), &self.cfg).is_zero() {
            self.num = poly_div_linear(&self.num, 1, &self.cfg);
            self.dm -= 1;
        }
        while self.dp > 0 && poly_eval(&self.num, &rat_int(-1), &self.cfg).is_zero() {
            self.num = poly_div_linear(&self.num, -1, &self.cfg);
            self.dp -= 1;
        }
        poly_trim(&mut self.num);
        if self.num.is_empty() {
            self.dz = 0;
            self.dm = 0;
            self.dp = 0;
        }
    }

    /// The shared configuration.
    pub fn config(&self) -> &Arc<WeightConfig> {
        &self.cfg
    }

    /// True for the zero function.
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Numerator degree (zero function reports 0).
    pub fn num_degree(&self) -> usize {
        self.num.len().saturating_sub(1)
    }

    /// Denominator exponents `(p, m, q)` of `z^p (z-1)^m (z+1)^q`.
    pub fn den_exponents(&self) -> (u32, u32, u32) {
        (self.dz, self.dm, self.dp)
    }

    /// Pole order at an expansion point (upper bound equals the exact order
    /// thanks to canonical form; at ∞ this is degree growth).
    pub fn pole_order(&self, at: ExpansionPoint) -> i32 {
        if self.is_zero() {
            return 0;
        }
        match at {
            ExpansionPoint::Zero => self.dz as i32,
            ExpansionPoint::One => self.dm as i32,
            ExpansionPoint::MinusOne => self.dp as i32,
            ExpansionPoint::Infinity => {
                self.num_degree() as i32 - (self.dz + self.dm + self.dp) as i32
            }
        }
    }

    fn check_cfg(&self, other: &Self) -> Result<()> {
        if self.cfg == other.cfg {
            Ok(())
        } else {
            Err(Error::ConfigMismatch("ZRational operands".into()))
        }
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_cfg(other)?;
        let dz = self.dz.max(other.dz);
        let dm = self.dm.max(other.dm);
        let dp = self.dp.max(other.dp);
        let lift = |r: &Self| -> Vec<WeightSeries> {
            let mut p = r.num.clone();
            for _ in 0..dz - r.dz {
                p.insert(0, WeightSeries::zero(&self.cfg));
            }
            for _ in 0..dm - r.dm {
                p = poly_mul(
                    &p,
                    &[
                        WeightSeries::constant(&self.cfg, rat_int(-1)),
                        WeightSeries::one(&self.cfg),
                    ],
                    &self.cfg,
                );
            }
            for _ in 0..dp - r.dp {
                p = poly_mul(
                    &p,
                    &[WeightSeries::one(&self.cfg), WeightSeries::one(&self.cfg)],
                    &self.cfg,
                );
            }
            p
        };
        let num = poly_add(&lift(self), &lift(other), &self.cfg);
        Ok(Self::from_parts(&self.cfg, num, dz, dm, dp))
    }

    /// Exact difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self {
            num: poly_neg(&self.num),
            dz: self.dz,
            dm: self.dm,
            dp: self.dp,
            cfg: self.cfg.clone(),
        }
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_cfg(other)?;
        let num = poly_mul(&self.num, &other.num, &self.cfg);
        Ok(Self::from_parts(
            &self.cfg,
            num,
            self.dz + other.dz,
            self.dm + other.dm,
            self.dp + other.dp,
        ))
    }

    /// Multiplies by a series scalar.
    pub fn scale(&self, c: &WeightSeries) -> Self {
        let num = self.num.iter().map(|x| x.mul(c).expect("cfg")).collect();
        Self::from_parts(&self.cfg, num, self.dz, self.dm, self.dp)
    }

    /// Multiplies by a rational scalar.
    pub fn scale_rat(&self, c: &Rat) -> Self {
        let num = self.num.iter().map(|x| x.scale(c)).collect();
        Self::from_parts(&self.cfg, num, self.dz, self.dm, self.dp)
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.cfg);
        for _ in 0..k {
            acc = acc.mul(self).expect("cfg");
        }
        acc
    }

    /// The substitution `z → 1/z`, re-canonicalised within the family.
    pub fn involute(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let deg = self.num_degree() as i32;
        let mut rev: Vec<WeightSeries> = self.num.iter().rev().cloned().collect();
        let shift = (self.dz + self.dm + self.dp) as i32 - deg;
        let sign_flip = self.dm % 2 == 1;
        if sign_flip {
            rev = poly_neg(&rev);
        }
        let (num, dz) = if shift >= 0 {
            let mut n = vec![WeightSeries::zero(&self.cfg); shift as usize];
            n.extend(rev);
            (n, 0)
        } else {
            (rev, (-shift) as u32)
        };
        Self::from_parts(&self.cfg, num, dz, self.dm, self.dp)
    }

    /// Derivative `d/dz`.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let cfg = &self.cfg;
        let one = WeightSeries::one(cfg);
        let z = vec![WeightSeries::zero(cfg), one.clone()];
        let zm1 = vec![WeightSeries::constant(cfg, rat_int(-1)), one.clone()];
        let zp1 = vec![one.clone(), one.clone()];
        // P' · z(z-1)(z+1)
        let mut dnum: Vec<WeightSeries> = self
            .num
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&rat_int(i as i64)))
            .collect();
        poly_trim(&mut dnum);
        let mut term1 = poly_mul(&dnum, &z, cfg);
        term1 = poly_mul(&term1, &zm1, cfg);
        term1 = poly_mul(&term1, &zp1, cfg);
        // P · (p(z-1)(z+1) + m z(z+1) + q z(z-1))
        let mut dlog = vec![WeightSeries::zero(cfg)];
        if self.dz > 0 {
            let f = poly_mul(&zm1, &zp1, cfg);
            dlog = poly_add(
                &dlog,
                &f.iter()
                    .map(|c| c.scale(&rat_int(self.dz as i64)))
                    .collect::<Vec<_>>(),
                cfg,
            );
        }
        if self.dm > 0 {
            let f = poly_mul(&z, &zp1, cfg);
            dlog = poly_add(
                &dlog,
                &f.iter()
                    .map(|c| c.scale(&rat_int(self.dm as i64)))
                    .collect::<Vec<_>>(),
                cfg,
            );
        }
        if self.dp > 0 {
            let f = poly_mul(&z, &zm1, cfg);
            dlog = poly_add(
                &dlog,
                &f.iter()
                    .map(|c| c.scale(&rat_int(self.dp as i64)))
                    .collect::<Vec<_>>(),
                cfg,
            );
        }
        let term2 = poly_mul(&self.num, &dlog, cfg);
        let num = poly_add(&term1, &poly_neg(&term2), cfg);
        Self::from_parts(&self.cfg, num, self.dz + 1, self.dm + 1, self.dp + 1)
    }

    /// The substitution `z → z²`; requires a denominator that is a pure
    /// power of `z`.
    pub fn subst_square(&self) -> Result<Self> {
        if self.dm != 0 || self.dp != 0 {
            return Err(Error::DenominatorNotZPower);
        }
        let mut num = vec![WeightSeries::zero(&self.cfg); 2 * self.num.len()];
        for (i, c) in self.num.iter().enumerate() {
            num[2 * i] = c.clone();
        }
        Ok(Self::from_parts(&self.cfg, num, 2 * self.dz, 0, 0))
    }

    /// Evaluates at a rational point that is not a pole.
    pub fn eval(&self, at: &Rat) -> Result<WeightSeries> {
        let mut den = Rat::one();
        for (root, e) in [
            (rat_int(0), self.dz),
            (rat_int(1), self.dm),
            (rat_int(-1), self.dp),
        ] {
            let f = at - root;
            if e > 0 && f.is_zero() {
                return Err(Error::PoleAtEvaluation(crate::rat::format_rat(at)));
            }
            for _ in 0..e {
                den *= f.clone();
            }
        }
        let num = poly_eval(&self.num, at, &self.cfg);
        Ok(num.scale(&(Rat::one() / den)))
    }

    /// Coefficient of `z^j` when the denominator is a pure power of `z`
    /// (the function is then a Laurent polynomial).
    pub fn laurent_coeff(&self, j: i32) -> Result<WeightSeries> {
        if self.dm != 0 || self.dp != 0 {
            return Err(Error::DenominatorNotZPower);
        }
        let idx = j + self.dz as i32;
        if idx < 0 || idx as usize >= self.num.len() {
            return Ok(WeightSeries::zero(&self.cfg));
        }
        Ok(self.num[idx as usize].clone())
    }

    /// Exact Laurent expansion at one of the four marked points, with
    /// coefficients computed through `w^order`.
    pub fn expand(&self, at: ExpansionPoint, order: i32) -> Result<LocalSeries<WeightSeries>> {
        let zero = WeightSeries::zero(&self.cfg);
        if self.is_zero() {
            return Ok(LocalSeries::zero(at, order, zero));
        }
        if at == ExpansionPoint::Infinity {
            // coefficient of ζ^j (ζ = 1/z) = coefficient of the expansion of
            // the involuted function at 0
            let inv = self.involute();
            let s = inv.expand(ExpansionPoint::Zero, order)?;
            return Ok(LocalSeries::generate(
                ExpansionPoint::Infinity,
                s.start(),
                s.known_to(),
                zero,
                |j| s.coeff(j).expect("in range").clone(),
            ));
        }
        let (c, k_c): (i64, u32) = match at {
            ExpansionPoint::Zero => (0, self.dz),
            ExpansionPoint::One => (1, self.dm),
            ExpansionPoint::MinusOne => (-1, self.dp),
            ExpansionPoint::Infinity => unreachable!(),
        };
        let t = order + k_c as i32;
        if t < 0 {
            return Ok(LocalSeries::zero(at, order, zero));
        }
        let t = t as usize;
        // numerator recentred at c
        let mut acc = poly_recentre(&self.num, c, &self.cfg);
        acc.truncate(t + 1);
        // analytic denominator factors (w + (c - root))^{-e}
        for (root, e) in [(0i64, self.dz), (1, self.dm), (-1, self.dp)] {
            if e == 0 || root == c {
                continue;
            }
            let a = rat_int(c - root);
            let mut series: Vec<Rat> = Vec::with_capacity(t + 1);
            let mut apow = Rat::one();
            for _ in 0..e {
                apow *= a.clone();
            }
            // (a + w)^{-e} = Σ_j C(e-1+j, j) (-1)^j a^{-e-j} w^j
            for j in 0..=t {
                let b = binomial_rat((e as u64) - 1 + j as u64, j as u64);
                let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
                series.push(b * sign / apow.clone());
                apow *= a.clone();
            }
            // multiply acc by the scalar series
            let mut next = vec![WeightSeries::zero(&self.cfg); t + 1];
            for (i, x) in acc.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, s) in series.iter().enumerate() {
                    if i + j > t {
                        break;
                    }
                    next[i + j] = next[i + j].add(&x.scale(s)).expect("cfg");
                }
            }
            acc = next;
        }
        acc.resize(t + 1, WeightSeries::zero(&self.cfg));
        Ok(LocalSeries::new(at, -(k_c as i32), acc, zero).trim_front())
    }

    /// Residue of `self · dz` at the given point. At ∞ this is minus the
    /// coefficient of `z^{-1}` in the expansion at ∞.
    pub fn residue(&self, at: ExpansionPoint) -> Result<WeightSeries> {
        match at {
            ExpansionPoint::Infinity => {
                let s = self.expand(at, 1)?;
                Ok(s.coeff(1)?.neg())
            }
            _ => {
                let s = self.expand(at, -1)?;
                Ok(s.coeff(-1)?.clone())
            }
        }
    }
}

impl fmt::Display for ZRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut num_parts = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let coeff = if cs.contains(' ') {
                format!("({cs})")
            } else {
                cs
            };
            match i {
                0 => num_parts.push(coeff),
                1 if coeff == "1" => num_parts.push("z".into()),
                1 => num_parts.push(format!("{coeff}*z")),
                _ if coeff == "1" => num_parts.push(format!("z^{i}")),
                _ => num_parts.push(format!("{coeff}*z^{i}")),
            }
        }
        let num = num_parts.join(" + ");
        let mut den_parts = Vec::new();
        for (txt, e) in [("z", self.dz), ("(z-1)", self.dm), ("(z+1)", self.dp)] {
            match e {
                0 => {}
                1 => den_parts.push(txt.to_string()),
                _ => den_parts.push(format!("{txt}^{e}")),
            }
        }
        if den_parts.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / ({})", den_parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn cfg0() -> Arc<WeightConfig> {
        WeightConfig::empty(0)
    }

    fn c(v: i64) -> WeightSeries {
        WeightSeries::constant(&cfg0(), rat_int(v))
    }

    /// `P(z)/(z^p (z-1)^m (z+1)^q)` with integer numerator coefficients.
    fn zr(num: &[i64], dz: u32, dm: u32, dp: u32) -> ZRational {
        ZRational::from_parts(&cfg0(), num.iter().map(|&v| c(v)).collect(), dz, dm, dp)
    }

    #[test]
    fn partial_fraction_identity() {
        // 1/(z-1) + 1/(z+1) = 2z/((z-1)(z+1))
        let a = zr(&[1], 0, 1, 0);
        let b = zr(&[1], 0, 0, 1);
        assert_eq!(a.add(&b).unwrap(), zr(&[0, 2], 0, 1, 1));
    }

    #[test]
    fn mul_clears_z_pole() {
        // (z + 2 + 1/z) * z = (1+z)²
        let x = zr(&[1, 2, 1], 1, 0, 0);
        let z = zr(&[0, 1], 0, 0, 0);
        assert_eq!(x.mul(&z).unwrap(), zr(&[1, 2, 1], 0, 0, 0));
    }

    #[test]
    fn y_times_x_at_zero_weights() {
        // (z/(1+z)) * ((1+z)²/z) = 1 + z
        let y = zr(&[0, 1], 0, 0, 1);
        let x = zr(&[1, 2, 1], 1, 0, 0);
        assert_eq!(y.mul(&x).unwrap(), zr(&[1, 1], 0, 0, 0));
    }

    #[test]
    fn involute_basics() {
        let z = zr(&[0, 1], 0, 0, 0);
        assert_eq!(z.involute(), zr(&[1], 1, 0, 0));

        // x_bip at γ² = 1 is σ-invariant
        let x = zr(&[1, 2, 1], 1, 0, 0);
        assert_eq!(x.involute(), x);

        // z/(1+z) → 1/(1+z)
        let y = zr(&[0, 1], 0, 0, 1);
        assert_eq!(y.involute(), zr(&[1], 0, 0, 1));
    }

    #[test]
    fn expand_double_pole() {
        let a = zr(&[1], 0, 2, 0);
        let s = a.expand(ExpansionPoint::One, 0).unwrap();
        assert_eq!(s.start(), -2);
        assert_eq!(s.coeff(-2).unwrap(), &c(1));
        assert!(s.coeff(-1).unwrap().is_zero());
        assert!(s.coeff(0).unwrap().is_zero());
    }

    #[test]
    fn expand_simple_pole_at_minus_one() {
        // z/(1+z) = 1 - 1/(1+z): coefficients -1, 1, 0, …
        let a = zr(&[0, 1], 0, 0, 1);
        let s = a.expand(ExpansionPoint::MinusOne, 1).unwrap();
        assert_eq!(s.start(), -1);
        assert_eq!(s.coeff(-1).unwrap(), &c(-1));
        assert_eq!(s.coeff(0).unwrap(), &c(1));
        assert!(s.coeff(1).unwrap().is_zero());
    }

    #[test]
    fn expand_at_infinity() {
        // (1+z)²/z at ∞ → z + 2 + z^{-1}
        let a = zr(&[1, 2, 1], 1, 0, 0);
        let s = a.expand(ExpansionPoint::Infinity, 2).unwrap();
        assert_eq!(s.start(), -1);
        assert_eq!(s.coeff(-1).unwrap(), &c(1)); // z¹
        assert_eq!(s.coeff(0).unwrap(), &c(2));
        assert_eq!(s.coeff(1).unwrap(), &c(1)); // z⁻¹
        assert!(s.coeff(2).unwrap().is_zero());
    }

    #[test]
    fn residues() {
        // residue of (1/z) dz at 0 is 1
        assert_eq!(
            zr(&[1], 1, 0, 0).residue(ExpansionPoint::Zero).unwrap(),
            c(1)
        );

        // the l = 1 disk extraction at zero weights:
        // residue of (z+2+1/z)(1-1/z) dz at ∞ is +1
        let x = zr(&[1, 2, 1], 1, 0, 0);
        let w = zr(&[-1, 1], 1, 0, 0);
        let integrand = x.mul(&w).unwrap();
        assert_eq!(integrand.residue(ExpansionPoint::Infinity).unwrap(), c(1));

        // no simple-pole part in 1/(z-1)²
        assert!(zr(&[1], 0, 2, 0)
            .residue(ExpansionPoint::One)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn polar_resummation_round_trip() {
        // expand a purely polar function and resum its polar coefficients
        let a = zr(&[3, -2, 5], 0, 3, 0); // (3 - 2z + 5z²)/(z-1)³
        let s = a.expand(ExpansionPoint::One, -1).unwrap();
        let mut resummed = ZRational::zero(&cfg0());
        for k in 1..=3 {
            let coeff = s.coeff(-k).unwrap().clone();
            resummed = resummed
                .add(&ZRational::polar(&cfg0(), 1, k as u32, coeff))
                .unwrap();
        }
        assert_eq!(resummed, a);
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dz [1/(z-1)] = -1/(z-1)²
        assert_eq!(zr(&[1], 0, 1, 0).derivative(), zr(&[-1], 0, 2, 0));
        // d/dz [z²] = 2z
        assert_eq!(zr(&[0, 0, 1], 0, 0, 0).derivative(), zr(&[0, 2], 0, 0, 0));
        // d/dz [(1+z)²/z] = 1 - 1/z² (the bipartite dx/dz at γ²=1)
        let x = zr(&[1, 2, 1], 1, 0, 0);
        assert_eq!(x.derivative(), zr(&[-1, 0, 1], 2, 0, 0));
    }

    #[test]
    fn eval_and_poles() {
        let a = zr(&[1, 1], 0, 1, 0); // (1+z)/(z-1)
        assert_eq!(a.eval(&rat_int(3)).unwrap(), c(2));
        assert!(matches!(
            a.eval(&rat_int(1)),
            Err(Error::PoleAtEvaluation(_))
        ));
        assert_eq!(
            a.eval(&rat(1, 2)).unwrap(),
            WeightSeries::constant(&cfg0(), rat_int(-3))
        );
    }

    #[test]
    fn subst_square() {
        let x = zr(&[1, 2, 1], 1, 0, 0);
        let sq = x.subst_square().unwrap();
        assert_eq!(sq, zr(&[1, 0, 2, 0, 1], 2, 0, 0));
        assert!(zr(&[1], 0, 1, 0).subst_square().is_err());
    }

    fn zr_strategy() -> impl Strategy<Value = ZRational> {
        let coeff = -4i64..=4;
        (
            proptest::collection::vec(coeff, 1..5),
            0u32..=2,
            0u32..=2,
            0u32..=2,
        )
            .prop_map(|(num, dz, dm, dp)| zr(&num, dz, dm, dp))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn involution_is_an_involution(a in zr_strategy()) {
            prop_assert_eq!(a.involute().involute(), a);
        }

        #[test]
        fn canonical_difference_is_structural_zero(a in zr_strategy()) {
            prop_assert!(a.sub(&a).unwrap().is_zero());
        }

        #[test]
        fn residue_theorem_on_the_sphere(a in zr_strategy()) {
            // poles can only sit at 0, ±1, ∞, so the four residues sum to zero
            let mut total = WeightSeries::zero(&cfg0());
            for at in [
                ExpansionPoint::Zero,
                ExpansionPoint::One,
                ExpansionPoint::MinusOne,
                ExpansionPoint::Infinity,
            ] {
                total = total.add(&a.residue(at).unwrap()).unwrap();
            }
            prop_assert!(total.is_zero());
        }

        #[test]
        fn add_mul_consistency(a in zr_strategy(), b in zr_strategy()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            // evaluation is a ring homomorphism away from the poles
            let pt = rat(5, 2);
            let lhs = a.add(&b).unwrap().eval(&pt).unwrap();
            let rhs = a.eval(&pt).unwrap().add(&b.eval(&pt).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
