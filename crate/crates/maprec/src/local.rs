//! Truncated local Laurent expansions.
//!
//! A [`LocalSeries`] holds finitely many coefficients of an expansion
//! `Σ_j c_j w^j` around one of the four marked points of the sphere, with
//! the range of known exponents tracked explicitly: `start` is the lowest
//! represented exponent and `known_to` the highest one that is trusted.
//! Requesting a coefficient above `known_to` is an error, never a silent
//! zero; residue extraction relies on this.
//!
//! The coefficient type is generic so the same arithmetic serves plain
//! [`WeightSeries`](crate::weights::WeightSeries) coefficients (expansion of
//! a rational function) and the spectator-leg sums used by the recursion
//! engine.

use crate::error::{Error, Result};
use crate::weights::WeightSeries;

/// Expansion points supported by the rational-function layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpansionPoint {
    /// `z = 0`.
    Zero,
    /// `z = +1`.
    One,
    /// `z = -1`.
    MinusOne,
    /// `z = ∞`; coefficients index powers of `1/z`.
    Infinity,
}

impl std::fmt::Display for ExpansionPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExpansionPoint::Zero => write!(f, "0"),
            ExpansionPoint::One => write!(f, "+1"),
            ExpansionPoint::MinusOne => write!(f, "-1"),
            ExpansionPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Ring operations required of a local-series coefficient.
pub trait Coeff: Clone {
    /// A zero element compatible with `self`.
    fn zero_like(&self) -> Self;
    /// True if the element is zero.
    fn is_zero_elem(&self) -> bool;
    /// Sum.
    fn add_elem(&self, other: &Self) -> Self;
    /// Product.
    fn mul_elem(&self, other: &Self) -> Self;
    /// Negation.
    fn neg_elem(&self) -> Self;
}

impl Coeff for WeightSeries {
    fn zero_like(&self) -> Self {
        WeightSeries::zero(self.config())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, other: &Self) -> Self {
        self.add(other).expect("same config")
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self.mul(other).expect("same config")
    }
    fn neg_elem(&self) -> Self {
        self.neg()
    }
}

/// Finite window `Σ_{j=start}^{known_to} c_j w^j` of a Laurent expansion.
#[derive(Debug, Clone)]
pub struct LocalSeries<C> {
    point: ExpansionPoint,
    start: i32,
    coeffs: Vec<C>,
    zero: C,
}

impl<C: Coeff> LocalSeries<C> {
    /// Builds a series from explicit coefficients for `w^start, …`.
    pub fn new(point: ExpansionPoint, start: i32, coeffs: Vec<C>, zero: C) -> Self {
        Self {
            point,
            start,
            coeffs,
            zero,
        }
    }

    /// Zero series known through `known_to`.
    pub fn zero(point: ExpansionPoint, known_to: i32, zero: C) -> Self {
        Self {
            point,
            start: known_to + 1,
            coeffs: Vec::new(),
            zero,
        }
    }

    /// Builds coefficients `f(start), …, f(known_to)`.
    pub fn generate(
        point: ExpansionPoint,
        start: i32,
        known_to: i32,
        zero: C,
        mut f: impl FnMut(i32) -> C,
    ) -> Self {
        let coeffs = (start..=known_to).map(&mut f).collect();
        Self {
            point,
            start,
            coeffs,
            zero,
        }
    }

    /// The expansion point.
    pub fn point(&self) -> ExpansionPoint {
        self.point
    }

    /// Lowest represented exponent.
    pub fn start(&self) -> i32 {
        self.start
    }

    /// Highest trusted exponent.
    pub fn known_to(&self) -> i32 {
        self.start + self.coeffs.len() as i32 - 1
    }

    /// Coefficient of `w^j`; zero below `start`, error above `known_to`.
    pub fn coeff(&self, j: i32) -> Result<&C> {
        if j > self.known_to() {
            return Err(Error::OrderDeficit {
                requested: j,
                known: self.known_to(),
            });
        }
        if j < self.start {
            return Ok(&self.zero);
        }
        Ok(&self.coeffs[(j - self.start) as usize])
    }

    /// True if every represented coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_elem())
    }

    /// Drops leading zero coefficients, raising `start`.
    pub fn trim_front(mut self) -> Self {
        while let Some(first) = self.coeffs.first() {
            if first.is_zero_elem() {
                self.coeffs.remove(0);
                self.start += 1;
            } else {
                break;
            }
        }
        self
    }

    /// Multiplies by `w^k`.
    pub fn shift(mut self, k: i32) -> Self {
        self.start += k;
        self
    }

    /// Discards coefficients above `kt` (lowers `known_to`).
    pub fn truncate_to(mut self, kt: i32) -> Self {
        let keep = (kt - self.start + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        if self.coeffs.is_empty() {
            self.start = kt + 1;
        }
        self
    }

    /// Scales every coefficient.
    pub fn scale(&self, c: &C) -> Self {
        Self {
            point: self.point,
            start: self.start,
            coeffs: self.coeffs.iter().map(|x| x.mul_elem(c)).collect(),
            zero: self.zero.clone(),
        }
    }

    /// Negates every coefficient.
    pub fn neg(&self) -> Self {
        Self {
            point: self.point,
            start: self.start,
            coeffs: self.coeffs.iter().map(|x| x.neg_elem()).collect(),
            zero: self.zero.clone(),
        }
    }

    /// Exact sum; the result is trusted through the smaller `known_to`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.point != other.point {
            return Err(Error::InvalidRequest(format!(
                "local series at {} and {} cannot be combined",
                self.point, other.point
            )));
        }
        let kt = self.known_to().min(other.known_to());
        let start = self.start.min(other.start).min(kt + 1);
        let mut coeffs = Vec::new();
        for j in start..=kt {
            let a = self.coeff(j)?;
            let b = other.coeff(j)?;
            coeffs.push(a.add_elem(b));
        }
        Ok(Self {
            point: self.point,
            start,
            coeffs,
            zero: self.zero.clone(),
        })
    }

    /// Exact product with worst-case order tracking: the result is trusted
    /// through `min(a.known_to + b.start, b.known_to + a.start)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.point != other.point {
            return Err(Error::InvalidRequest(format!(
                "local series at {} and {} cannot be combined",
                self.point, other.point
            )));
        }
        let start = self.start + other.start;
        let kt = (self.known_to() + other.start).min(other.known_to() + self.start);
        let mut coeffs: Vec<C> = Vec::new();
        for j in start..=kt {
            let mut acc = self.zero.zero_like();
            for i in self.start..=self.known_to() {
                let k = j - i;
                if k < other.start || k > other.known_to() {
                    continue;
                }
                acc = acc.add_elem(&self.coeff(i)?.mul_elem(other.coeff(k)?));
            }
            coeffs.push(acc);
        }
        Ok(Self {
            point: self.point,
            start,
            coeffs,
            zero: self.zero.clone(),
        })
    }

    /// Linear combination `Σ w_i · s_i` of series at the same point.
    pub fn combine(series: &[Self], weights: &[C]) -> Result<Self> {
        if series.is_empty() || series.len() != weights.len() {
            return Err(Error::InvalidRequest(
                "combine requires equally many series and weights".into(),
            ));
        }
        let mut acc = series[0].scale(&weights[0]);
        for (s, w) in series.iter().zip(weights).skip(1) {
            acc = acc.add(&s.scale(w))?;
        }
        Ok(acc)
    }
}

impl LocalSeries<WeightSeries> {
    /// Inverse of a series with unit leading coefficient, trusted through
    /// `target`. Fails with an order deficit if the input window is too
    /// short, and with [`Error::NonUnitLeading`] if the leading coefficient
    /// is not invertible.
    pub fn invert(&self, target: i32) -> Result<Self> {
        let t = self.clone().trim_front();
        if t.coeffs.is_empty() {
            return Err(Error::DegenerateCurve(format!("{}", t.point)));
        }
        let v = t.start;
        let lead = t.coeffs[0].clone();
        if !lead.is_unit() {
            return Err(Error::NonUnitLeading);
        }
        // self = w^v · lead · (1 + E), so self⁻¹ = w^{-v} · lead⁻¹ · Σ (-E)^k.
        let rel_order = target + v; // relative order needed of (1+E)⁻¹
        if t.known_to() - v < rel_order {
            return Err(Error::OrderDeficit {
                requested: rel_order + v,
                known: t.known_to(),
            });
        }
        let lead_inv = lead.inverse()?;
        let zero = self.zero.clone();
        let unit_part = LocalSeries::generate(t.point, 0, rel_order, zero.clone(), |j| {
            t.coeff(j + v).expect("checked").mul_elem(&lead_inv)
        });
        // geometric series in E = unit_part - 1
        let mut e = unit_part;
        if rel_order >= 0 {
            e.coeffs[0] = e.coeffs[0]
                .sub(&WeightSeries::one(lead.config()))
                .expect("cfg");
        }
        let mut acc = LocalSeries::generate(t.point, 0, rel_order, zero.clone(), |j| {
            if j == 0 {
                WeightSeries::one(lead.config())
            } else {
                zero.clone()
            }
        });
        let mut epow = acc.clone();
        for _ in 0..=rel_order.max(0) {
            epow = epow.mul(&e)?.neg().truncate_to(rel_order);
            if epow.is_zero() {
                break;
            }
            acc = acc.add(&epow)?;
        }
        Ok(acc.scale(&lead_inv).shift(-v))
    }
}
