//! Exact rationals and truncated Laurent series in the formal variable `h`
//! (with `q = e^h`).
//!
//! An [`HSeries`] knows its coefficients on the closed range
//! `[min_exp, cap]`. Anything above `cap` is unknown, never silently zero,
//! and every operation propagates the cap it can actually certify: adding
//! series meets the caps, multiplying by something with valuation `v` moves
//! the other factor's cap by `v`, inverting a series of valuation `v` costs
//! `2v` orders.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Default global truncation order `N`.
pub const DEFAULT_ORDER: i64 = 4;

/// Default bound on the pole order of any intermediate series.
pub const DEFAULT_POLE_CAP: i64 = 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("pole of order {order} exceeds the configured pole cap {pole_cap}")]
    PoleCap { order: i64, pole_cap: i64 },
    #[error("exponential needs a series with no constant or polar part (valuation {0})")]
    ExpDomain(i64),
    #[error("logarithm needs a series with constant term 1")]
    LogDomain,
    #[error("series has no nonzero coefficient up to order {0}; cannot invert")]
    NotInvertible(i64),
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("malformed series: {0}")]
    Malformed(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// `(2j-1)!!` with the convention `(-1)!! = 1`.
pub fn double_factorial_odd(j: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 1..=j {
        acc *= 2 * k - 1;
    }
    Rational::from_integer(acc)
}

/// Formats a rational as `"p/q"` (the denominator is always written).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, SeriesError> {
    let bad = || SeriesError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Truncated Laurent series `sum_k c_k h^k`, known exactly for `min_exp <= k <= cap`.
#[derive(Clone)]
pub struct HSeries {
    min_exp: i64,
    cap: i64,
    pole_cap: i64,
    // nonzero coefficients only, all keys inside [min_exp, cap]
    coeffs: BTreeMap<i64, Rational>,
}

impl HSeries {
    pub fn zero(cap: i64) -> Self {
        HSeries {
            min_exp: 0,
            cap,
            pole_cap: DEFAULT_POLE_CAP,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(cap: i64) -> Self {
        Self::constant(Rational::one(), cap)
    }

    pub fn constant(c: Rational, cap: i64) -> Self {
        Self::monomial(c, 0, cap)
    }

    /// `c * h^exp`, known up to `cap`.
    pub fn monomial(c: Rational, exp: i64, cap: i64) -> Self {
        let mut s = Self::zero(cap);
        s.min_exp = exp.min(0);
        if exp <= cap && !c.is_zero() {
            s.coeffs.insert(exp, c);
        }
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs; pairs above `cap` are dropped.
    pub fn from_terms<I>(terms: I, cap: i64) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut s = Self::zero(cap);
        for (k, c) in terms {
            if k <= cap {
                s.min_exp = s.min_exp.min(k);
                s.add_at(k, c);
            }
        }
        s
    }

    /// `q^c = exp(c h)`.
    pub fn q_power(c: &Rational, cap: i64) -> Self {
        let mut terms = Vec::new();
        let mut pow = Rational::one();
        for k in 0..=cap.max(0) {
            terms.push((k, &pow / factorial(k as u64)));
            pow *= c;
        }
        Self::from_terms(terms, cap)
    }

    pub fn with_pole_cap(mut self, pole_cap: i64) -> Self {
        self.pole_cap = pole_cap;
        self
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn pole_cap(&self) -> i64 {
        self.pole_cap
    }

    /// Coefficient of `h^k`, or `None` when `k` lies beyond the cap.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k > self.cap {
            return None;
        }
        Some(self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficient of `h^k`, panicking beyond the cap.
    pub fn at(&self, k: i64) -> Rational {
        self.coeff(k)
            .unwrap_or_else(|| panic!("coefficient h^{k} lies beyond cap {}", self.cap))
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or(self.cap + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    fn add_at(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    fn check_poles(self) -> Result<Self, SeriesError> {
        if let Some(v) = self.valuation() {
            if v < -self.pole_cap {
                return Err(SeriesError::PoleCap {
                    order: -v,
                    pole_cap: self.pole_cap,
                });
            }
        }
        Ok(self)
    }

    /// Lowers the cap to `cap` (no-op if already lower).
    pub fn truncate(&self, cap: i64) -> Self {
        let mut out = self.clone();
        if cap < out.cap {
            out.cap = cap;
            out.coeffs.retain(|k, _| *k <= cap);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.coeffs.clear();
            return out;
        }
        for v in out.coeffs.values_mut() {
            *v *= c;
        }
        out
    }

    /// Exact multiplication by `h^k`; the cap moves with it.
    pub fn shift(&self, k: i64) -> Self {
        HSeries {
            min_exp: self.min_exp + k,
            cap: self.cap + k,
            pole_cap: self.pole_cap,
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn try_add(&self, other: &HSeries) -> Result<HSeries, SeriesError> {
        let cap = self.cap.min(other.cap);
        let mut out = HSeries {
            min_exp: self.min_exp.min(other.min_exp),
            cap,
            pole_cap: self.pole_cap.min(other.pole_cap),
            coeffs: BTreeMap::new(),
        };
        for (k, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if *k <= cap {
                out.add_at(*k, c.clone());
            }
        }
        out.check_poles()
    }

    pub fn try_mul(&self, other: &HSeries) -> Result<HSeries, SeriesError> {
        let cap = (self.cap + other.effective_valuation())
            .min(other.cap + self.effective_valuation());
        let mut out = HSeries {
            min_exp: self.min_exp + other.min_exp,
            cap,
            pole_cap: self.pole_cap.min(other.pole_cap),
            coeffs: BTreeMap::new(),
        };
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if i + j > cap {
                    break;
                }
                out.add_at(i + j, a * b);
            }
        }
        out.check_poles()
    }

    /// `sum_k a^k / k!`, defined when `a` has no constant or polar part.
    pub fn try_exp(&self) -> Result<HSeries, SeriesError> {
        let v = self.effective_valuation();
        if v < 1 {
            return Err(SeriesError::ExpDomain(v));
        }
        let cap = self.cap;
        let mut out = HSeries::one(cap).with_pole_cap(self.pole_cap);
        let mut power = HSeries::one(cap).with_pole_cap(self.pole_cap);
        let mut k = 1u64;
        loop {
            power = power.try_mul(self)?.truncate(cap);
            if power.is_zero() {
                break;
            }
            out = out.try_add(&power.scale(&(Rational::one() / factorial(k))))?;
            k += 1;
        }
        out.min_exp = 0;
        Ok(out.truncate(cap))
    }

    /// `log(a)` for `a` with constant term 1 and no polar part.
    pub fn try_log(&self) -> Result<HSeries, SeriesError> {
        let v = self.effective_valuation();
        if v != 0 || self.at(0) != Rational::one() {
            return Err(SeriesError::LogDomain);
        }
        let u = self.try_add(&HSeries::one(self.cap).scale(&int(-1)))?;
        let cap = self.cap;
        let mut out = HSeries::zero(cap);
        let mut power = HSeries::one(cap);
        let mut k = 1i64;
        loop {
            power = power.try_mul(&u)?.truncate(cap);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.try_add(&power.scale(&rat(sign, k)))?;
            k += 1;
        }
        Ok(out)
    }

    /// Multiplicative inverse; a series `h^v (c + ...)` known to `cap` yields
    /// `h^{-v} (1/c + ...)` known to `cap - 2v`.
    pub fn try_inverse(&self) -> Result<HSeries, SeriesError> {
        let v = self
            .valuation()
            .ok_or(SeriesError::NotInvertible(self.cap))?;
        let unit = self.shift(-v);
        let cap = unit.cap;
        let lead_inv = Rational::one() / unit.at(0);
        // Newton-free recurrence: b_0 = 1/a_0, b_n = -(1/a_0) sum_{k>=1} a_k b_{n-k}
        let mut b: Vec<Rational> = Vec::new();
        for n in 0..=cap.max(-1) {
            if n == 0 {
                b.push(lead_inv.clone());
                continue;
            }
            let mut acc = Rational::zero();
            for (k, a) in unit.coeffs.range(1..=n) {
                acc += a * &b[(n - k) as usize];
            }
            b.push(-(acc * &lead_inv));
        }
        let inv = HSeries::from_terms(
            b.into_iter().enumerate().map(|(n, c)| (n as i64, c)),
            cap,
        )
        .with_pole_cap(self.pole_cap);
        inv.shift(-v).check_poles()
    }

    pub fn try_div(&self, other: &HSeries) -> Result<HSeries, SeriesError> {
        self.try_mul(&other.try_inverse()?)
    }

    pub fn pow(&self, n: u32) -> Result<HSeries, SeriesError> {
        if n == 0 {
            return Ok(HSeries::one(self.cap).with_pole_cap(self.pole_cap));
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// Exact agreement of every coefficient up to `order` (both sides must know it).
    pub fn agrees_to(&self, other: &HSeries, order: i64) -> bool {
        if self.cap < order || other.cap < order {
            return false;
        }
        let lo = self.min_exp.min(other.min_exp);
        (lo..=order).all(|k| self.at(k) == other.at(k))
    }

    /// True if no coefficient below `h^0` is nonzero.
    pub fn is_power_series(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }
}

impl PartialEq for HSeries {
    fn eq(&self, other: &Self) -> bool {
        self.cap == other.cap && self.coeffs == other.coeffs
    }
}

impl Eq for HSeries {}

impl fmt::Debug for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [cap {}]", self.cap)
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let (sign, abs) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match k {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{abs}*h")?,
                _ => write!(f, "{abs}*h^{k}")?,
            }
        }
        write!(f, " + O(h^{})", self.cap + 1)
    }
}

impl Add for &HSeries {
    type Output = HSeries;
    fn add(self, rhs: &HSeries) -> HSeries {
        self.try_add(rhs).expect("series addition")
    }
}

impl Sub for &HSeries {
    type Output = HSeries;
    fn sub(self, rhs: &HSeries) -> HSeries {
        self.try_add(&-rhs).expect("series subtraction")
    }
}

impl Neg for &HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        self.scale(&int(-1))
    }
}

/// Panics if the product's pole exceeds the pole cap; use [`HSeries::try_mul`] to handle that.
impl Mul for &HSeries {
    type Output = HSeries;
    fn mul(self, rhs: &HSeries) -> HSeries {
        self.try_mul(rhs).expect("series multiplication")
    }
}

#[derive(Serialize, Deserialize)]
struct HSeriesRepr {
    min_exp: i64,
    coeffs: BTreeMap<String, String>,
    cap: i64,
}

impl Serialize for HSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HSeriesRepr {
            min_exp: self.min_exp,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k.to_string(), format_rational(c)))
                .collect(),
            cap: self.cap,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = HSeriesRepr::deserialize(d)?;
        let mut s = HSeries::zero(repr.cap);
        s.min_exp = repr.min_exp;
        for (k, c) in repr.coeffs {
            let k: i64 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent {k:?}")))?;
            if k < repr.min_exp || k > repr.cap {
                return Err(D::Error::custom(format!(
                    "exponent {k} outside [{}, {}]",
                    repr.min_exp, repr.cap
                )));
            }
            s.add_at(k, parse_rational(&c).map_err(D::Error::custom)?);
        }
        Ok(s)
    }
}

/// Modified Bernoulli number `b_{2m}`: coefficient of `x^{2m}` in
/// `(1/2) log(sinh(x/2) / (x/2))`.
pub fn modified_bernoulli(m: u32) -> Rational {
    let cap = 2 * m as i64;
    let log = sinh_ratio(&Rational::one(), cap)
        .try_log()
        .expect("sinh ratio has constant term 1");
    log.at(cap) / int(2)
}

/// Power series of `sinh(c h / 2) / (c h / 2)`; equals 1 for `c = 0`.
pub fn sinh_ratio(c: &Rational, cap: i64) -> HSeries {
    let half = c / int(2);
    let half_sq = &half * &half;
    let mut terms = Vec::new();
    let mut pow = Rational::one();
    let mut k = 0i64;
    while 2 * k <= cap {
        terms.push((2 * k, &pow / factorial(2 * k as u64 + 1)));
        pow *= &half_sq;
        k += 1;
    }
    HSeries::from_terms(terms, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(terms: &[(i64, i64)], cap: i64) -> HSeries {
        HSeries::from_terms(terms.iter().map(|&(k, c)| (k, int(c))), cap)
    }

    #[test]
    fn difference_of_squares() {
        let a = s(&[(0, 1), (1, 1)], 4);
        let b = s(&[(0, 1), (1, -1)], 4);
        assert_eq!(&a * &b, s(&[(0, 1), (2, -1)], 4));
    }

    #[test]
    fn exponent_cancellation() {
        let a = HSeries::monomial(int(1), -1, 4);
        let b = HSeries::monomial(int(1), 1, 4);
        let p = &a * &b;
        assert_eq!(p.at(0), int(1));
        assert!(p.terms().count() == 1);
        assert_eq!(p.min_exp(), -1);
    }

    #[test]
    fn addition_meets_caps() {
        let a = s(&[(0, 1)], 4);
        let b = s(&[(0, 1), (5, 3)], 6);
        let c = &a + &b;
        assert_eq!(c.cap(), 4);
        assert_eq!(c.coeff(5), None);
    }

    #[test]
    fn exp_taylor_and_identity() {
        let c = int(3);
        let e = HSeries::monomial(c.clone(), 1, 5).try_exp().unwrap();
        assert_eq!(e.at(2), &c * &c / int(2));
        assert_eq!(HSeries::zero(5).try_exp().unwrap(), HSeries::one(5));
        let x = HSeries::monomial(rat(1, 24), 2, 6);
        let y = HSeries::monomial(rat(-1, 24), 2, 6);
        let p = &x.try_exp().unwrap() * &y.try_exp().unwrap();
        assert_eq!(p, HSeries::one(6));
    }

    #[test]
    fn exp_rejects_constant_part() {
        assert!(matches!(
            HSeries::one(3).try_exp(),
            Err(SeriesError::ExpDomain(0))
        ));
        assert!(HSeries::monomial(int(1), -1, 3).try_exp().is_err());
    }

    #[test]
    fn geometric_inverse() {
        let a = s(&[(0, 1), (1, 1)], 5);
        let inv = a.try_inverse().unwrap();
        assert_eq!(inv, s(&[(0, 1), (1, -1), (2, 1), (3, -1), (4, 1), (5, -1)], 5));
        assert_eq!(&a * &inv, HSeries::one(5));
    }

    #[test]
    fn inverse_with_pole_shift() {
        let a = s(&[(1, 1), (2, 1)], 5);
        let inv = a.try_inverse().unwrap();
        assert_eq!(inv.min_exp(), -1);
        assert_eq!(inv.cap(), 3);
        assert_eq!(inv.at(-1), int(1));
        assert_eq!(inv.at(0), int(-1));
        assert_eq!(inv.at(1), int(1));
        let back = &a * &inv;
        assert!(back.agrees_to(&HSeries::one(3), 3));
    }

    #[test]
    fn inverse_of_constant_and_zero() {
        assert_eq!(
            HSeries::constant(int(2), 3).try_inverse().unwrap(),
            HSeries::constant(rat(1, 2), 3)
        );
        assert!(matches!(
            HSeries::zero(3).try_inverse(),
            Err(SeriesError::NotInvertible(3))
        ));
    }

    #[test]
    fn pole_cap_enforced() {
        let a = HSeries::monomial(int(1), -3, 4).with_pole_cap(4);
        assert!(matches!(a.try_mul(&a), Err(SeriesError::PoleCap { order: 6, .. })));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(modified_bernoulli(1), rat(1, 48));
        assert_eq!(modified_bernoulli(2), rat(-1, 5760));
        // odd part of the defining series vanishes
        let log = sinh_ratio(&int(1), 9).try_log().unwrap();
        for k in [1, 3, 5, 7, 9] {
            assert_eq!(log.at(k), int(0));
        }
    }

    #[test]
    fn sinh_ratio_values() {
        let s1 = sinh_ratio(&int(1), 4);
        assert_eq!(s1.at(0), int(1));
        assert_eq!(s1.at(2), rat(1, 24));
        assert_eq!(s1.at(4), rat(1, 1920));
        assert_eq!(sinh_ratio(&int(0), 6), HSeries::one(6));
        assert_eq!(sinh_ratio(&int(-1), 6), sinh_ratio(&int(1), 6));
    }

    #[test]
    fn json_round_trip_and_format() {
        let a = HSeries::from_terms([(-1, rat(1, 2)), (2, rat(-3, 4))], 4);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"min_exp":-1,"coeffs":{"-1":"1/2","2":"-3/4"},"cap":4}"#);
        let back: HSeries = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<HSeries>(r#"{"min_exp":0,"coeffs":{"7":"1"},"cap":4}"#).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&int(3)), "3/1");
    }
}
