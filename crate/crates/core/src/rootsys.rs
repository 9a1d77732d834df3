//! Root systems of type A, their Weyl groups, and the Lie side of the
//! comparison: the quantum dimension data of the unknot and Le's formula
//! for the perturbative invariant.
//!
//! Weights are written in simple-root coordinates; the form is the Cartan
//! matrix, so every root has `(a, a) = 2`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::liews::{wick, LieAlgebraData, SymTensor, WeightTensor};
use crate::qseries::{factorial, int, sinh_ratio, HSeries, Rational, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("unsupported root system {0:?} (A1, A2, A3 are built in)")]
    Unsupported(String),
    #[error("coefficient h^{exp} of g_beta is beyond the cap {cap}")]
    OutOfRange { exp: i64, cap: i64 },
    #[error("framing 0: not a rational homology sphere surgery")]
    ZeroFraming,
    #[error("the two evaluations of the perturbative invariant disagree")]
    RouteMismatch,
    #[error("perturbative invariant keeps a pole of order {0}")]
    ResidualPole(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("malformed weight sum file: {0}")]
    Format(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Action on simple-root coordinates (column `j` is the image of `alpha_j`).
    pub matrix: Vec<Vec<i64>>,
    pub sign: i32,
}

impl WeylElement {
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, x)| int(*a) * x).sum())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: String,
    cartan: Matrix,
    positive_roots: Vec<Vec<i64>>,
    rho: Vec<Rational>,
    weyl: Vec<WeylElement>,
}

fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

impl RootSystem {
    pub fn build(label: &str) -> Result<Self, RootError> {
        let r = match label {
            "A1" => 1usize,
            "A2" => 2,
            "A3" => 3,
            _ => return Err(RootError::Unsupported(label.to_string())),
        };
        let cartan: Matrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match i.abs_diff(j) {
                        0 => int(2),
                        1 => int(-1),
                        _ => int(0),
                    })
                    .collect()
            })
            .collect();
        let mut positive_roots: Vec<Vec<i64>> = Vec::new();
        for i in 0..r {
            for j in i..r {
                positive_roots.push((0..r).map(|k| i64::from(i <= k && k <= j)).collect());
            }
        }
        let mut rho = vec![Rational::zero(); r];
        for a in &positive_roots {
            for (k, x) in a.iter().enumerate() {
                rho[k] += Rational::new((*x).into(), 2.into());
            }
        }
        let weyl = weyl_closure(&cartan);
        Ok(RootSystem {
            label: label.to_string(),
            cartan,
            positive_roots,
            rho,
            weyl,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &Matrix {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &[Rational] {
        &self.rho
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn form(&self, a: &[Rational], b: &[Rational]) -> Rational {
        linalg::bilinear(&self.cartan, a, b)
    }

    pub fn norm_sq(&self, a: &[Rational]) -> Rational {
        self.form(a, a)
    }

    /// `(rho, alpha)` for each positive root.
    pub fn rho_pairings(&self) -> Vec<Rational> {
        self.positive_roots
            .iter()
            .map(|a| self.form(&self.rho, &to_rational(a)))
            .collect()
    }

    /// The matching `sl_n`.
    pub fn lie_algebra(&self) -> LieAlgebraData {
        LieAlgebraData::build_sl(self.rank() + 1).expect("A1..A3 correspond to sl_2..sl_4")
    }
}

fn weyl_closure(cartan: &Matrix) -> Vec<WeylElement> {
    let r = cartan.len();
    let gens: Vec<Vec<Vec<i64>>> = (0..r)
        .map(|i| {
            // s_i(alpha_j) = alpha_j - A_ij alpha_i
            let mut m = vec![vec![0i64; r]; r];
            for j in 0..r {
                m[j][j] = 1;
                m[i][j] -= i64::try_from(cartan[i][j].to_integer()).expect("integral Cartan matrix");
            }
            m
        })
        .collect();
    let id: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen = BTreeSet::new();
    seen.insert(id.clone());
    let mut out = vec![WeylElement { matrix: id, sign: 1 }];
    let mut frontier = 0;
    while frontier < out.len() {
        let w = out[frontier].clone();
        frontier += 1;
        for g in &gens {
            let m: Vec<Vec<i64>> = (0..r)
                .map(|i| (0..r).map(|j| (0..r).map(|k| g[i][k] * w.matrix[k][j]).sum()).collect())
                .collect();
            if seen.insert(m.clone()) {
                out.push(WeylElement { matrix: m, sign: -w.sign });
            }
        }
    }
    out
}

/// Finite formal sum `sum_mu c_mu q^mu` over weights in simple-root coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalExpSum {
    terms: BTreeMap<Vec<Rational>, Rational>,
}

impl FormalExpSum {
    pub fn monomial(mu: Vec<Rational>, c: Rational) -> Self {
        let mut s = FormalExpSum::default();
        s.add_term(mu, c);
        s
    }

    pub fn add_term(&mut self, mu: Vec<Rational>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mu.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mu);
        }
    }

    pub fn mul(&self, other: &FormalExpSum) -> Self {
        let mut out = FormalExpSum::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mu = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(mu, ca * cb);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Rational>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct WeylDenominatorReport {
    pub product: FormalExpSum,
    pub alternating: FormalExpSum,
    pub holds: bool,
    pub product_squared: FormalExpSum,
    pub double_sum: FormalExpSum,
    pub square_holds: bool,
}

/// `prod_{a>0} (q^{a/2} - q^{-a/2})` against `sum_w sign(w) q^{w rho}`, and their squares.
pub fn weyl_denominator(rs: &RootSystem) -> WeylDenominatorReport {
    let r = rs.rank();
    let mut product = FormalExpSum::monomial(vec![Rational::zero(); r], Rational::one());
    for a in rs.positive_roots() {
        let half: Vec<Rational> = a.iter().map(|&x| Rational::new(x.into(), 2.into())).collect();
        let neg: Vec<Rational> = half.iter().map(|x| -x).collect();
        let mut factor = FormalExpSum::monomial(half, Rational::one());
        factor.add_term(neg, -Rational::one());
        product = product.mul(&factor);
    }
    let mut alternating = FormalExpSum::default();
    for w in rs.weyl_group() {
        alternating.add_term(w.apply(rs.rho()), int(w.sign.into()));
    }
    let mut double_sum = FormalExpSum::default();
    for w in rs.weyl_group() {
        for w2 in rs.weyl_group() {
            let mu = w.apply(rs.rho()).iter().zip(w2.apply(rs.rho())).map(|(x, y)| x + y).collect();
            double_sum.add_term(mu, int((w.sign * w2.sign).into()));
        }
    }
    let product_squared = product.mul(&product);
    WeylDenominatorReport {
        holds: product == alternating,
        square_holds: product_squared == double_sum,
        product,
        alternating,
        product_squared,
        double_sum,
    }
}

/// `sum_beta g_beta(h) q^{(beta, lambda)}` with `beta` in the root lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExponentialWeightSum {
    terms: BTreeMap<Vec<i64>, HSeries>,
}

#[derive(Serialize, Deserialize)]
struct WeightSumEntry {
    beta: Vec<i64>,
    series: HSeries,
}

impl ExponentialWeightSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, beta: Vec<i64>, g: HSeries) {
        if g.is_zero() {
            self.terms.remove(&beta);
        } else {
            self.terms.insert(beta, g);
        }
    }

    pub fn get(&self, beta: &[i64]) -> Option<&HSeries> {
        self.terms.get(beta)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &HSeries)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    /// Smallest cap among the `g_beta`.
    pub fn cap(&self) -> Option<i64> {
        self.terms.values().map(HSeries::cap).min()
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<WeightSumEntry> = self
            .terms
            .iter()
            .map(|(b, s)| WeightSumEntry {
                beta: b.clone(),
                series: s.clone(),
            })
            .collect();
        serde_json::to_string_pretty(&entries).expect("weight sums serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, RootError> {
        let entries: Vec<WeightSumEntry> = serde_json::from_str(s).map_err(|e| RootError::Format(e.to_string()))?;
        let mut out = Self::new();
        for e in entries {
            if out.terms.contains_key(&e.beta) {
                return Err(RootError::Format(format!("beta {:?} listed twice", e.beta)));
            }
            out.insert(e.beta, e.series);
        }
        Ok(out)
    }
}

/// `Q_g(unknot)(lambda - rho)`: the squared Weyl sum over the squared
/// denominator `prod_{a>0} (q^{(rho,a)/2} - q^{-(rho,a)/2})^2`, known to `h^cap`.
pub fn quantum_dim_sq_shifted(rs: &RootSystem, cap: i64) -> ExponentialWeightSum {
    let p = rs.positive_roots().len() as i64;
    // (q^{c/2} - q^{-c/2}) = c h sinh_ratio(c)
    let mut unit = HSeries::one(cap + 2 * p);
    for c in rs.rho_pairings() {
        let s = sinh_ratio(&c, cap + 2 * p).scale(&c);
        unit = unit.try_mul(&s).and_then(|u| u.try_mul(&s)).expect("power series");
    }
    let inv = unit.try_inverse().expect("unit leading term").shift(-2 * p);
    let mut counts: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for w in rs.weyl_group() {
        for w2 in rs.weyl_group() {
            let beta: Vec<i64> = w
                .apply(rs.rho())
                .iter()
                .zip(w2.apply(rs.rho()))
                .map(|(x, y)| (x + y).to_integer().try_into().expect("root lattice"))
                .collect();
            *counts.entry(beta).or_insert(0) += i64::from(w.sign * w2.sign);
        }
    }
    let mut out = ExponentialWeightSum::new();
    for (beta, n) in counts {
        if n != 0 {
            out.insert(beta, inv.scale(&int(n)));
        }
    }
    out
}

/// `c_{beta,j,n} = [h^{n-j}] g_beta / j!`.
pub fn c_coeff(e: &ExponentialWeightSum, beta: &[i64], j: u32, n: i64) -> Result<Rational, RootError> {
    let exp = n - i64::from(j);
    let Some(g) = e.get(beta) else {
        return Ok(Rational::zero());
    };
    let c = g.coeff(exp).ok_or(RootError::OutOfRange { exp, cap: g.cap() })?;
    Ok(c / factorial(j.into()))
}

/// Both evaluations of Le's formula and the final invariant.
#[derive(Clone, Debug)]
pub struct TauPg {
    /// `sum c_{beta,2j,n} (2j-1)!! (-|beta|^2/f)^j h^{n-j}`.
    pub literal_sum: HSeries,
    /// `sum g_beta(h) exp(-h |beta|^2 / 2f)`.
    pub exponential_sum: HSeries,
    pub value: HSeries,
}

fn sign_of(f: i64) -> i64 {
    if f > 0 {
        1
    } else {
        -1
    }
}

/// `(1/|W|) q^{(s-f)|rho|^2/2} prod_{a>0} (1 - q^{s (rho,a)})`, `s = sign(f)`.
pub fn tau_prefactor(rs: &RootSystem, f: i64, cap: i64) -> HSeries {
    let s = sign_of(f);
    let rho_sq = rs.norm_sq(rs.rho());
    let mut out = HSeries::q_power(&(int(s - f) * &rho_sq / int(2)), cap)
        .scale(&Rational::new(1.into(), (rs.weyl_group().len() as i64).into()));
    for c in rs.rho_pairings() {
        let factor = &HSeries::one(cap) - &HSeries::q_power(&(int(s) * c), cap);
        out = out.try_mul(&factor).expect("power series");
    }
    out
}

/// Le's formula for surgery with framing `f` on a knot with data `e`.
/// The result is known to `h^{cap(e) + |Phi_+|}`.
pub fn tau_pg(rs: &RootSystem, e: &ExponentialWeightSum, f: i64) -> Result<TauPg, RootError> {
    if f == 0 {
        return Err(RootError::ZeroFraming);
    }
    let cap = e.cap().unwrap_or(0);
    let fr = int(f);
    let mut literal = HSeries::zero(cap);
    let mut exponential = HSeries::zero(cap);
    for (beta, g) in e.terms() {
        let b = to_rational(beta);
        let norm = rs.norm_sq(&b);
        let mut terms = Vec::new();
        for (n_prime, _) in g.terms() {
            let mut j = 0u32;
            while n_prime + i64::from(j) <= cap {
                let n = n_prime + 2 * i64::from(j);
                let c = c_coeff(e, beta, 2 * j, n)?;
                let w = crate::qseries::double_factorial_odd(j.into()) * num_traits::pow(-(&norm / &fr), j as usize);
                terms.push((n - i64::from(j), c * w));
                j += 1;
            }
        }
        literal = literal.try_add(&HSeries::from_terms(terms, cap).with_pole_cap(g.pole_cap()))?;
        let depth = -g.valuation().unwrap_or(0).min(0);
        let gauss = HSeries::q_power(&(-(&norm / (int(2) * &fr))), cap + depth);
        exponential = exponential.try_add(&g.try_mul(&gauss)?.truncate(cap))?;
    }
    if literal != exponential {
        return Err(RootError::RouteMismatch);
    }
    let p = rs.positive_roots().len() as i64;
    let value = tau_prefactor(rs, f, cap + 2 * p).try_mul(&exponential)?;
    if let Some(v) = value.valuation() {
        if v < 0 {
            return Err(RootError::ResidualPole(-v));
        }
    }
    Ok(TauPg {
        literal_sum: literal,
        exponential_sum: exponential,
        value,
    })
}

/// The Gaussian applied to the squared Weyl sum, computed by Wick
/// contraction of `exp((beta, x))` in the matching `sl_n`.
#[derive(Clone, Debug)]
pub struct GaussianWeylCheck {
    pub wick_value: HSeries,
    /// `(-1)^{|Phi_+|} |W| prod_{a>0} (1 - q^{-(rho,a)/f})`.
    pub closed_form: HSeries,
    /// `|W| prod_{a>0} (1 - q^{-(rho,a)/f}) q^{-|rho|^2/f}`.
    pub unsigned_with_rho_factor: HSeries,
    /// `|W| (-1/f)^{|Phi_+|} prod (rho,a)`, the `h^{|Phi_+|}` coefficient.
    pub leading_expected: Rational,
    pub leading_order: Option<i64>,
}

impl GaussianWeylCheck {
    pub fn closed_form_holds(&self) -> bool {
        self.wick_value == self.closed_form
    }

    pub fn leading_holds(&self, rs: &RootSystem) -> bool {
        let p = rs.positive_roots().len() as i64;
        self.leading_order == Some(p) && self.wick_value.at(p) == self.leading_expected
    }
}

pub fn gaussian_weyl_check(rs: &RootSystem, f: i64, cap: i64) -> Result<GaussianWeylCheck, RootError> {
    if f == 0 {
        return Err(RootError::ZeroFraming);
    }
    let g = rs.lie_algebra();
    let fr = int(f);
    let one = HSeries::one(cap);
    let mut tensor = WeightTensor::zero(cap);
    for w in rs.weyl_group() {
        for w2 in rs.weyl_group() {
            let beta: Vec<Rational> = w.apply(rs.rho()).iter().zip(w2.apply(rs.rho())).map(|(x, y)| x + y).collect();
            let t_beta = g.embed(&beta);
            let sign = int((w.sign * w2.sign).into());
            let mut series = SymTensor::default();
            for k in 0..=(2 * cap) as usize {
                series = series.add(&SymTensor::vector_power(&t_beta, k).scale(&(&sign / factorial(k as u64))));
            }
            tensor = tensor.add(&WeightTensor::from_sym(&series, &one));
        }
    }
    let wick_value = wick(&tensor, &g, &fr).expect("f != 0");
    let order = rs.weyl_group().len() as i64;
    let p = rs.positive_roots().len();
    let mut prod = HSeries::one(cap);
    for c in rs.rho_pairings() {
        let factor = &HSeries::one(cap) - &HSeries::q_power(&(-(c / &fr)), cap);
        prod = prod.try_mul(&factor)?.truncate(cap);
    }
    let sign = if p.is_multiple_of(2) { 1 } else { -1 };
    let closed_form = prod.scale(&int(sign * order));
    let rho_factor = HSeries::q_power(&(-(rs.norm_sq(rs.rho()) / &fr)), cap);
    let unsigned_with_rho_factor = prod.try_mul(&rho_factor)?.scale(&int(order));
    let leading_expected = int(order)
        * num_traits::pow(-(Rational::one() / &fr), p)
        * rs.rho_pairings().into_iter().product::<Rational>();
    Ok(GaussianWeylCheck {
        leading_order: wick_value.valuation(),
        wick_value,
        closed_form,
        unsigned_with_rho_factor,
        leading_expected,
    })
}

/// True if every `g_beta` equals `g_{-beta}`.
pub fn is_weyl_symmetric(e: &ExponentialWeightSum) -> bool {
    e.terms().all(|(b, g)| {
        let neg: Vec<i64> = b.iter().map(|x| -x).collect();
        e.get(&neg) == Some(g)
    })
}

/// `|det|` of a Weyl element acting on simple-root coordinates; used to
/// cross-check signs.
pub fn weyl_determinant(w: &WeylElement) -> Rational {
    let m: Matrix = w.matrix.iter().map(|r| to_rational(r)).collect();
    linalg::determinant(&m)
}
