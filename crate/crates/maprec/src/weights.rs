//! Truncated multivariate power series in the face weights.
//!
//! A [`WeightSeries`] is an element of `ℚ[[t_{2k_1}, …, t_{2k_r}]]` modulo
//! total degree `> N`, stored sparsely as a map from exponent vectors to
//! nonzero rational coefficients. The active weight indices and the
//! truncation order live in a shared [`WeightConfig`]; two series combine
//! only when their configurations coincide.
//!
//! Invariants kept by every constructor and operation:
//! * no stored exponent vector has total degree above the truncation order;
//! * no stored coefficient is zero;
//! * arithmetic is exact; the ring has no general division, only
//!   [`WeightSeries::inverse`] on units.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{format_rat, rat_int, Rat};

/// Active weight indices and the truncation order of the series ring.
///
/// Each active weight may carry a rational scale: the formal variable
/// `t_{2k}` then enters every formula as `scale · t_{2k}`, so weighted
/// models need no second code path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightConfig {
    /// Active weight indices `2k`, sorted, distinct, even and positive.
    indices: Vec<u32>,
    /// Rational scale per active index.
    scales: Vec<Rat>,
    /// Maximum total degree retained.
    trunc: u32,
}

impl WeightConfig {
    /// Builds a configuration with unit scales.
    pub fn new(indices: &[u32], trunc: u32) -> Result<Arc<Self>> {
        let pairs: Vec<(u32, Rat)> = indices.iter().map(|&i| (i, rat_int(1))).collect();
        Self::with_scales(&pairs, trunc)
    }

    /// Builds a configuration from `(index, scale)` pairs.
    pub fn with_scales(pairs: &[(u32, Rat)], trunc: u32) -> Result<Arc<Self>> {
        let mut sorted = pairs.to_vec();
        sorted.sort_unstable_by_key(|(i, _)| *i);
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidConfig("duplicate weight index".into()));
            }
        }
        for (i, s) in &sorted {
            if *i == 0 || *i % 2 != 0 {
                return Err(Error::InvalidConfig(format!(
                    "weight index {i} must be even and positive"
                )));
            }
            if s.is_zero() {
                return Err(Error::InvalidConfig(format!("weight t{i} has zero scale")));
            }
        }
        let (indices, scales) = sorted.into_iter().unzip();
        Ok(Arc::new(Self {
            indices,
            scales,
            trunc,
        }))
    }

    /// Configuration with no active weights (all `t_{2k} = 0`).
    pub fn empty(trunc: u32) -> Arc<Self> {
        Arc::new(Self {
            indices: Vec::new(),
            scales: Vec::new(),
            trunc,
        })
    }

    /// The sorted active indices.
    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    /// Number of active weights.
    pub fn arity(&self) -> usize {
        self.indices.len()
    }

    /// Truncation order `N`.
    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Largest active index `2d`, if any weight is active.
    pub fn max_index(&self) -> Option<u32> {
        self.indices.last().copied()
    }

    /// Position of index `idx` in the exponent vector.
    pub fn position(&self, idx: u32) -> Option<usize> {
        self.indices.iter().position(|&i| i == idx)
    }

    /// The rational scale attached to an active index.
    pub fn scale_of(&self, idx: u32) -> Option<&Rat> {
        self.position(idx).map(|p| &self.scales[p])
    }

    /// True when every active weight has scale 1.
    pub fn unit_scales(&self) -> bool {
        self.scales.iter().all(|s| s.is_one())
    }

    /// Same indices and scales, different truncation order.
    pub fn with_trunc(&self, trunc: u32) -> Arc<Self> {
        Arc::new(Self {
            indices: self.indices.clone(),
            scales: self.scales.clone(),
            trunc,
        })
    }
}

/// Sparse truncated power series over [`Rat`] in the active weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSeries {
    cfg: Arc<WeightConfig>,
    terms: BTreeMap<Vec<u16>, Rat>,
}

fn total_degree(exps: &[u16]) -> u32 {
    exps.iter().map(|&e| e as u32).sum()
}

impl WeightSeries {
    /// The zero series.
    pub fn zero(cfg: &Arc<WeightConfig>) -> Self {
        Self {
            cfg: cfg.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The constant series 1.
    pub fn one(cfg: &Arc<WeightConfig>) -> Self {
        Self::constant(cfg, rat_int(1))
    }

    /// A constant series.
    pub fn constant(cfg: &Arc<WeightConfig>, value: Rat) -> Self {
        let mut s = Self::zero(cfg);
        if !value.is_zero() {
            s.terms.insert(vec![0; cfg.arity()], value);
        }
        s
    }

    /// The weight `t_idx` times `coeff`, with the configured per-weight
    /// scale applied.
    pub fn weight(cfg: &Arc<WeightConfig>, idx: u32, coeff: Rat) -> Result<Self> {
        let pos = cfg
            .position(idx)
            .ok_or_else(|| Error::InvalidConfig(format!("t{idx} is not an active weight")))?;
        let mut s = Self::zero(cfg);
        let value = coeff * &cfg.scales[pos];
        if !value.is_zero() && cfg.trunc() >= 1 {
            let mut exps = vec![0u16; cfg.arity()];
            exps[pos] = 1;
            s.terms.insert(exps, value);
        }
        Ok(s)
    }

    /// Builds a series from `(exponents, coefficient)` pairs, dropping zero
    /// coefficients and anything above the truncation order.
    pub fn from_terms(
        cfg: &Arc<WeightConfig>,
        terms: impl IntoIterator<Item = (Vec<u16>, Rat)>,
    ) -> Result<Self> {
        let mut s = Self::zero(cfg);
        for (exps, c) in terms {
            if exps.len() != cfg.arity() {
                return Err(Error::InvalidConfig(format!(
                    "exponent vector of length {} for arity {}",
                    exps.len(),
                    cfg.arity()
                )));
            }
            if c.is_zero() || total_degree(&exps) > cfg.trunc() {
                continue;
            }
            let entry = s.terms.entry(exps).or_insert_with(Rat::zero);
            *entry += c;
        }
        s.terms.retain(|_, c| !c.is_zero());
        Ok(s)
    }

    /// The shared configuration.
    pub fn config(&self) -> &Arc<WeightConfig> {
        &self.cfg
    }

    /// True if all coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[u16]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// The degree-zero coefficient.
    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.cfg.arity()])
    }

    /// True if invertible in the truncated ring (nonzero constant term).
    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Iterates stored `(exponents, coefficient)` pairs in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u16>, &Rat)> {
        self.terms.iter()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when the series stores no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_cfg(&self, other: &Self) -> Result<()> {
        if self.cfg == other.cfg {
            Ok(())
        } else {
            Err(Error::ConfigMismatch(format!(
                "{:?}/N={} vs {:?}/N={}",
                self.cfg.indices(),
                self.cfg.trunc(),
                other.cfg.indices(),
                other.cfg.trunc()
            )))
        }
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_cfg(other)?;
        let mut out = self.clone();
        for (exps, c) in &other.terms {
            let entry = out.terms.entry(exps.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Exact difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    /// Exact product, truncated to the configured total degree.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_cfg(other)?;
        let n = self.cfg.trunc();
        let mut out = Self::zero(&self.cfg);
        for (ea, ca) in &self.terms {
            let da = total_degree(ea);
            for (eb, cb) in &other.terms {
                if da + total_degree(eb) > n {
                    continue;
                }
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(exps).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero(&self.cfg);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= r;
        }
        out
    }

    /// `self^k` in the truncated ring.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.cfg);
        for _ in 0..k {
            acc = acc.mul(self).expect("same config");
        }
        acc
    }

    /// Multiplicative inverse of a unit.
    ///
    /// Writes `a = c(1 + u)` with `u` of positive valuation; `u^{N+1}`
    /// vanishes in the truncated ring, so the geometric series is finite.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NonUnit);
        }
        let c_inv = Rat::one() / c;
        let scaled = self.scale(&c_inv);
        let mut u = scaled;
        u.terms.remove(&vec![0; self.cfg.arity()]);
        let mut acc = Self::one(&self.cfg);
        let mut upow = Self::one(&self.cfg);
        for _ in 0..self.cfg.trunc() {
            upow = upow.mul(&u).expect("same config").neg();
            if upow.is_zero() {
                break;
            }
            acc = acc.add(&upow).expect("same config");
        }
        Ok(acc.scale(&c_inv))
    }

    /// Square root with constant term 1, by Newton iteration
    /// `b ← (b + a·b⁻¹)/2`.
    pub fn sqrt(&self) -> Result<Self> {
        let c = self.constant_term();
        if !c.is_one() {
            return Err(Error::SqrtBranch(format_rat(&c)));
        }
        let half = crate::rat::rat(1, 2);
        let mut b = Self::one(&self.cfg);
        // Each Newton step doubles the number of correct degrees.
        let mut correct = 0u32;
        while correct < self.cfg.trunc() {
            let binv = b.inverse()?;
            b = b.add(&self.mul(&binv)?)?.scale(&half);
            correct = (2 * correct + 1).min(self.cfg.trunc());
        }
        Ok(b)
    }

    /// Truncates to a lower total degree `m`, returning a series over the
    /// matching configuration.
    pub fn truncated(&self, m: u32) -> Self {
        let cfg = self.cfg.with_trunc(m);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| total_degree(e) <= m)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self { cfg, terms }
    }

    /// Divides by `scale · t_idx`, i.e. shifts the exponent of `t_idx` down
    /// by one. Every stored term must contain the factor.
    pub fn div_by_weight(&self, idx: u32, scale: &Rat) -> Result<Self> {
        let pos = self
            .cfg
            .position(idx)
            .ok_or_else(|| Error::InvalidConfig(format!("t{idx} is not an active weight")))?;
        if scale.is_zero() {
            return Err(Error::NonUnit);
        }
        let mut out = Self::zero(&self.cfg);
        for (exps, c) in &self.terms {
            if exps[pos] == 0 {
                return Err(Error::InvalidRequest(format!(
                    "series is not divisible by t{idx}"
                )));
            }
            let mut e = exps.clone();
            e[pos] -= 1;
            out.terms.insert(e, c / scale);
        }
        Ok(out)
    }

    /// True if every coefficient is a non-negative integer.
    pub fn is_nonneg_integer(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.denom().is_one() && !c.numer().is_negative())
    }

    /// Coefficient-wise `self ≤ other` (difference has no negative
    /// coefficient).
    pub fn le_coeffwise(&self, other: &Self) -> Result<bool> {
        let diff = other.sub(self)?;
        Ok(diff.terms.values().all(|c| !c.is_negative()))
    }
}

impl fmt::Display for WeightSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Sort by total degree, then lexicographically.
        let mut keys: Vec<_> = self.terms.keys().collect();
        keys.sort_by_key(|e| (total_degree(e), (*e).clone()));
        for (i, exps) in keys.iter().enumerate() {
            let c = &self.terms[*exps];
            let mono = monomial_string(&self.cfg, exps);
            if i == 0 {
                if mono.is_empty() {
                    write!(f, "{}", format_rat(c))?;
                } else if c.is_one() {
                    write!(f, "{mono}")?;
                } else if (-c.clone()).is_one() {
                    write!(f, "-{mono}")?;
                } else {
                    write!(f, "{}*{mono}", format_rat(c))?;
                }
            } else {
                let (sign, mag) = if c.is_negative() {
                    ("-", -c.clone())
                } else {
                    ("+", c.clone())
                };
                if mono.is_empty() {
                    write!(f, " {sign} {}", format_rat(&mag))?;
                } else if mag.is_one() {
                    write!(f, " {sign} {mono}")?;
                } else {
                    write!(f, " {sign} {}*{mono}", format_rat(&mag))?;
                }
            }
        }
        Ok(())
    }
}

fn monomial_string(cfg: &WeightConfig, exps: &[u16]) -> String {
    let mut parts = Vec::new();
    for (pos, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let idx = cfg.indices()[pos];
        if e == 1 {
            parts.push(format!("t{idx}"));
        } else {
            parts.push(format!("t{idx}^{e}"));
        }
    }
    parts.join("*")
}
