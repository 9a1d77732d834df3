//! End-to-end comparison for surgery on a framed knot: the weighted LMO
//! invariant by two routes, the perturbative invariant from root data, and
//! the identity checks that tie the two sides together.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::balg::{self, fg_integral, omega_with_policy, pair, wheeling_inverse, BalgError};
use crate::diagrams::{DiagramSeries, JacobiDiagram, TruncationPolicy};
use crate::liews::{wick, LieError, WeightSystem};
use crate::qseries::{int, modified_bernoulli, rat, sinh_ratio, HSeries, Rational, SeriesError};
use crate::rootsys::{
    gaussian_weyl_check, quantum_dim_sq_shifted, tau_pg, weyl_denominator, ExponentialWeightSum,
    RootError, RootSystem,
};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Balg(#[from] BalgError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("invalid surgery input: {0}")]
    Input(String),
    #[error("no Q-data supplied for a knot other than the unknot")]
    MissingQData,
}

#[derive(Clone, Debug)]
pub enum KnotInput {
    /// Built-in: the wheeled 0-framed unknot is `Omega`.
    Unknot,
    /// The 0-framed knot's series, strut-free.
    Series(DiagramSeries),
}

#[derive(Clone, Debug)]
pub struct SurgeryInput {
    pub knot: KnotInput,
    pub framing: i64,
    /// Highest `h`-order the input series is trusted to.
    pub declared_valid_degree: i64,
}

impl SurgeryInput {
    pub fn unknot(framing: i64) -> Result<Self, PipelineError> {
        Self::new(KnotInput::Unknot, framing, i64::MAX)
    }

    pub fn new(knot: KnotInput, framing: i64, declared_valid_degree: i64) -> Result<Self, PipelineError> {
        if framing == 0 {
            return Err(PipelineError::Input("framing must be nonzero".into()));
        }
        if let KnotInput::Series(s) = &knot {
            if s.terms().any(|(k, _)| k.strut_count() > 0) {
                return Err(PipelineError::Input("knot series contains strut components".into()));
            }
        }
        Ok(SurgeryInput {
            knot,
            framing,
            declared_valid_degree,
        })
    }

    pub fn sign(&self) -> i64 {
        self.framing.signum()
    }

    /// `|H_1| = f sign(f)`.
    pub fn h1_order(&self) -> i64 {
        self.framing * self.sign()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Definition,
    Lemma,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub lie: String,
    pub framing: i64,
    pub order: i64,
    pub certified_order: i64,
    pub mode: String,
    pub lmo_side: HSeries,
    pub taupg_side: Option<HSeries>,
    pub h1_power: String,
    pub equal: bool,
    pub difference: Option<HSeries>,
    pub checks: Vec<CheckResult>,
}

impl ComparisonReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Truncation, weight system and cached wheeling data for one Lie type and order.
pub struct Pipeline {
    rs: RootSystem,
    ws: WeightSystem,
    order: i64,
    policy: TruncationPolicy,
    omega: DiagramSeries,
    wheeled_omega: Option<DiagramSeries>,
}

impl Pipeline {
    /// Works to `h^order` with internal-vertex bound `2 order`.
    pub fn new(lie: &str, order: i64) -> Result<Self, PipelineError> {
        if order < 0 {
            return Err(PipelineError::Input("order must be nonnegative".into()));
        }
        let rs = RootSystem::build(lie)?;
        let ws = WeightSystem::new(rs.lie_algebra());
        let i_max = 2 * order as usize;
        let policy = TruncationPolicy::new(i_max, 2 * i_max);
        Ok(Pipeline {
            rs,
            ws,
            order,
            policy,
            omega: omega_with_policy(policy),
            wheeled_omega: None,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn weight_system(&mut self) -> &mut WeightSystem {
        &mut self.ws
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn omega(&self) -> &DiagramSeries {
        &self.omega
    }

    /// Highest order at which both truncation and the input are trusted.
    pub fn certified_order(&self, input: &SurgeryInput) -> i64 {
        (self.policy.max_internal as i64 / 2).min(input.declared_valid_degree)
    }

    fn wheeled_omega(&mut self) -> Result<DiagramSeries, PipelineError> {
        if self.wheeled_omega.is_none() {
            self.wheeled_omega = Some(wheeling_inverse(&self.omega)?);
        }
        Ok(self.wheeled_omega.clone().unwrap())
    }

    /// `Omega-hat^{-1}` of the 0-framed knot series.
    pub fn wheeled_input(&mut self, input: &SurgeryInput) -> Result<DiagramSeries, PipelineError> {
        match &input.knot {
            KnotInput::Unknot => self.wheeled_omega(),
            KnotInput::Series(s) => Ok(wheeling_inverse(&s.with_policy(self.policy))?),
        }
    }

    fn framing_exponential(&self, f: i64, with_theta: bool) -> DiagramSeries {
        let mut gen = DiagramSeries::from_diagram(&balg::strut(), rat(f, 2), self.policy);
        if with_theta {
            gen.add_diagram(&balg::theta(), rat(-f, 48));
        }
        gen.exp_union().expect("positive degree")
    }

    /// `Omega-hat^{-1}(K) u Omega-hat^{-1}(Omega) u exp((f/2)(strut - theta/24))`.
    pub fn reduced_input(&mut self, input: &SurgeryInput) -> Result<DiagramSeries, PipelineError> {
        let xk = self.wheeled_input(input)?;
        let xo = self.wheeled_omega()?;
        Ok(xk.union(&xo).union(&self.framing_exponential(input.framing, true)))
    }

    /// `W` of the Gaussian integral of `s`, as a scalar series.
    pub fn integrated_scalar(&mut self, s: &DiagramSeries) -> Result<HSeries, PipelineError> {
        let closed = fg_integral(s, None)?;
        Ok(self.ws.hat_scalar(&closed))
    }

    /// Weighted ratio of Gaussian integrals against the unknot with framing `sign(f)`.
    pub fn lmo_via_definition(&mut self, input: &SurgeryInput) -> Result<HSeries, PipelineError> {
        let num = self.reduced_input(input)?;
        let num = self.integrated_scalar(&num)?;
        let den = self.reduced_input(&SurgeryInput::unknot(input.sign())?)?;
        let den = self.integrated_scalar(&den)?;
        if den.at(0) != Rational::one() {
            return Err(PipelineError::Input(format!("denominator has constant term {}", den.at(0))));
        }
        Ok(num.try_div(&den)?.truncate(self.order))
    }

    /// `W(theta)` with its degree-1 grading.
    pub fn hat_theta(&mut self) -> HSeries {
        let th = DiagramSeries::from_diagram(&balg::theta(), Rational::one(), self.policy);
        self.ws.hat_scalar(&th)
    }

    /// `W(<Omega, Omega>)`.
    pub fn omega_pairing(&mut self) -> Result<HSeries, PipelineError> {
        let p = pair(&self.omega, &self.omega)?;
        Ok(self.ws.hat_scalar(&p))
    }

    /// `W<Omega,Omega> exp((3s-f)/48 W(theta)) W(int Omega-hat^{-1}(K u O) u exp(f/2 strut))`.
    pub fn lmo_via_lemma(&mut self, input: &SurgeryInput) -> Result<HSeries, PipelineError> {
        let f = input.framing;
        let s = input.sign();
        let oo = self.omega_pairing()?;
        let framing_factor = self.hat_theta().scale(&rat(3 * s - f, 48)).try_exp()?;
        let integrand = self
            .wheeled_input(input)?
            .union(&self.wheeled_omega()?)
            .union(&self.framing_exponential(f, false));
        let integral = self.integrated_scalar(&integrand)?;
        Ok(oo.try_mul(&framing_factor)?.try_mul(&integral)?.truncate(self.order))
    }

    /// Le's formula on the unknot's data or on supplied data.
    pub fn taupg(&self, input: &SurgeryInput, qdata: Option<&ExponentialWeightSum>) -> Result<HSeries, PipelineError> {
        let p = self.rs.positive_roots().len() as i64;
        let owned;
        let e = match (&input.knot, qdata) {
            (_, Some(q)) => q,
            (KnotInput::Unknot, None) => {
                owned = quantum_dim_sq_shifted(&self.rs, self.order - p);
                &owned
            }
            (KnotInput::Series(_), None) => return Err(PipelineError::MissingQData),
        };
        Ok(tau_pg(&self.rs, e, input.framing)?.value.truncate(self.order))
    }

    pub fn compare(
        &mut self,
        input: &SurgeryInput,
        qdata: Option<&ExponentialWeightSum>,
        route: Route,
    ) -> Result<ComparisonReport, PipelineError> {
        let certified = self.certified_order(input).min(self.order);
        let mut checks = Vec::new();
        let lmo = match route {
            Route::Definition => self.lmo_via_definition(input)?,
            Route::Lemma => self.lmo_via_lemma(input)?,
            Route::Both => {
                let a = self.lmo_via_definition(input)?;
                let b = self.lmo_via_lemma(input)?;
                checks.push(CheckResult::new(
                    "routes agree",
                    a.agrees_to(&b, certified),
                    format!("definition {a} / lemma {b}"),
                ));
                a
            }
        };
        let lmo = lmo.truncate(certified);
        let h1_power = num_traits::pow(int(input.h1_order()), self.rs.positive_roots().len());
        let has_qdata = qdata.is_some() || matches!(input.knot, KnotInput::Unknot);
        let (taupg_side, equal, difference, mode) = if has_qdata {
            let tau = self.taupg(input, qdata)?.truncate(certified);
            checks.push(CheckResult::new(
                "taupg pole-free",
                tau.is_power_series(),
                format!("valuation {:?}", tau.valuation()),
            ));
            let rhs = tau.scale(&h1_power);
            let equal = lmo.agrees_to(&rhs, certified);
            checks.push(CheckResult::new(
                "lmo = |H1|^|Phi+| taupg",
                equal,
                format!("lmo {lmo} / rhs {rhs}"),
            ));
            let diff = lmo.try_add(&rhs.scale(&-Rational::one()))?;
            (Some(tau), equal, Some(diff), "full")
        } else {
            (None, false, None, "lmo-only")
        };
        Ok(ComparisonReport {
            lie: self.rs.label().to_string(),
            framing: input.framing,
            order: self.order,
            certified_order: certified,
            mode: mode.to_string(),
            lmo_side: lmo,
            taupg_side,
            h1_power: crate::qseries::format_rational(&h1_power),
            equal,
            difference,
            checks,
        })
    }
}

/// Selection for [`verify_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Omega,
    Theta,
    Circle,
    Bridge,
    Weyl,
    Bernoulli,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "all" => Suite::All,
            "omega" => Suite::Omega,
            "theta" => Suite::Theta,
            "circle" => Suite::Circle,
            "bridge" => Suite::Bridge,
            "weyl" => Suite::Weyl,
            "bernoulli" => Suite::Bernoulli,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

/// `exp(2 sum_{m<=M} b_{2m} x^{2m}) (x/2)/sinh(x/2) = 1 + O(x^{2M+2})`.
pub fn check_bernoulli(max_power: i64) -> CheckResult {
    let mut log = HSeries::zero(max_power);
    for m in 1..=(max_power / 2) {
        log = &log + &HSeries::monomial(modified_bernoulli(m as u32) * int(2), 2 * m, max_power);
    }
    let lhs = log.try_exp().and_then(|e| e.try_div(&sinh_ratio(&Rational::one(), max_power)));
    let values_ok = modified_bernoulli(1) == rat(1, 48) && modified_bernoulli(2) == rat(-1, 5760);
    match lhs {
        Ok(v) => CheckResult::new(
            "bernoulli",
            values_ok && v == HSeries::one(max_power),
            format!("b2 = {}, b4 = {}, round trip to x^{max_power}: {v}", modified_bernoulli(1), modified_bernoulli(2)),
        ),
        Err(e) => CheckResult::new("bernoulli", false, e.to_string()),
    }
}

pub fn check_weyl(label: &str) -> Result<CheckResult, PipelineError> {
    let rep = weyl_denominator(&RootSystem::build(label)?);
    Ok(CheckResult::new(
        format!("weyl {label}"),
        rep.holds && rep.square_holds,
        format!("{} alternating terms, {} squared terms", rep.alternating.len(), rep.double_sum.len()),
    ))
}

pub fn check_theta(label: &str) -> Result<CheckResult, PipelineError> {
    let mut p = Pipeline::new(label, 1)?;
    let w = p.hat_theta();
    let expected = int(24) * p.rs.norm_sq(p.rs.rho());
    Ok(CheckResult::new(
        format!("theta {label}"),
        w == HSeries::monomial(expected.clone(), 1, 1),
        format!("W(theta) = {w}, 24(rho,rho) = {expected}"),
    ))
}

/// `W<Omega,Omega> = prod_{a>0} sinh_ratio((rho,a))`.
pub fn check_omega(label: &str, order: i64) -> Result<CheckResult, PipelineError> {
    let mut p = Pipeline::new(label, order)?;
    let lhs = p.omega_pairing()?;
    let mut rhs = HSeries::one(order);
    for c in p.rs.rho_pairings() {
        rhs = rhs.try_mul(&sinh_ratio(&c, order))?;
    }
    Ok(CheckResult::new(
        format!("omega {label}"),
        lhs == rhs,
        format!("diagrams {lhs} / closed form {rhs}"),
    ))
}

/// `W(int reduced(unknot, +-1)) = W<Omega,Omega>^{-1} exp(-+W(theta)/16)`.
pub fn check_circle(label: &str, order: i64, sign: i64) -> Result<CheckResult, PipelineError> {
    let mut p = Pipeline::new(label, order)?;
    let red = p.reduced_input(&SurgeryInput::unknot(sign)?)?;
    let lhs = p.integrated_scalar(&red)?;
    let oo = p.omega_pairing()?;
    let rhs = oo.try_inverse()?.try_mul(&p.hat_theta().scale(&rat(-sign, 16)).try_exp()?)?;
    Ok(CheckResult::new(
        format!("circle {label} sign {sign:+}"),
        lhs == rhs,
        format!("integral {lhs} / closed form {rhs}"),
    ))
}

/// The strut-free test family for the gluing/Wick bridge.
pub fn bridge_family(policy: TruncationPolicy) -> Vec<(String, DiagramSeries)> {
    let one = |d: &JacobiDiagram| DiagramSeries::from_diagram(d, Rational::one(), policy);
    let w2 = one(&balg::wheel(1));
    let w4 = one(&balg::wheel(2));
    let th = one(&balg::theta());
    let w6 = one(&balg::wheel(3));
    let glued = balg::partial(&w2, &w4).expect("strut-free gluing");
    let mut family = vec![
        ("w2".to_string(), w2.clone()),
        ("w4".to_string(), w4.clone()),
        ("w2 u w2".to_string(), w2.union(&w2)),
        ("w2 u w4".to_string(), w2.union(&w4)),
        ("w2 u theta".to_string(), w2.union(&th)),
        ("w6".to_string(), w6),
        ("w2 u w2 u w2".to_string(), w2.union(&w2).union(&w2)),
        ("partial(w2, w4)".to_string(), glued),
        (
            "1 + w2/48 - w4/5760".to_string(),
            DiagramSeries::unit(policy)
                .add(&w2.scale(&rat(1, 48)))
                .add(&w4.scale(&rat(-1, 5760))),
        ),
    ];
    family.retain(|(_, s)| !s.is_zero());
    family
}

/// `W(int_f Y) = wick(W(Y) in exponent coordinates, f)` over the family.
pub fn check_bridge(label: &str, order: i64, framings: &[i64]) -> Result<Vec<CheckResult>, PipelineError> {
    let rs = RootSystem::build(label)?;
    let g = rs.lie_algebra();
    let mut ws = WeightSystem::new(g.clone());
    let policy = TruncationPolicy::new(2 * order as usize, 2 * order as usize);
    let mut out = Vec::new();
    for (name, y) in bridge_family(policy) {
        let tensor = ws.hat_weight(&y).exponent_coordinates();
        let mut ok = true;
        let mut detail = String::new();
        for &f in framings {
            let fr = int(f);
            let glued = ws.hat_scalar(&fg_integral(&y, Some(&fr))?);
            let w = wick(&tensor, &g, &fr)?;
            if glued != w {
                ok = false;
                detail = format!("f = {f}: gluing {glued} / wick {w}");
                break;
            }
        }
        if ok {
            detail = format!("f in {framings:?}");
        }
        out.push(CheckResult::new(format!("bridge {label} {name}"), ok, detail));
    }
    Ok(out)
}

/// The Gaussian applied to the squared Weyl sum.
pub fn check_gaussian_weyl(label: &str, f: i64, order: i64) -> Result<CheckResult, PipelineError> {
    let rs = RootSystem::build(label)?;
    // the leading term sits at h^{|Phi+|}
    let order = order.max(rs.positive_roots().len() as i64 + 1);
    let c = gaussian_weyl_check(&rs, f, order)?;
    Ok(CheckResult::new(
        format!("gaussian weyl {label} f {f}"),
        c.closed_form_holds() && c.leading_holds(&rs),
        format!("wick {} / closed form {}", c.wick_value, c.closed_form),
    ))
}

pub fn verify_suite(suite: Suite, order: i64) -> Result<Vec<CheckResult>, PipelineError> {
    let want = |s: Suite| suite == Suite::All || suite == s;
    let mut out = Vec::new();
    if want(Suite::Bernoulli) {
        out.push(check_bernoulli(12));
    }
    if want(Suite::Weyl) {
        for l in ["A1", "A2", "A3"] {
            out.push(check_weyl(l)?);
        }
        for l in ["A1", "A2"] {
            for f in [1, -1, 2, -2, 3] {
                out.push(check_gaussian_weyl(l, f, order)?);
            }
        }
    }
    if want(Suite::Theta) {
        for l in ["A1", "A2", "A3"] {
            out.push(check_theta(l)?);
        }
    }
    if want(Suite::Omega) {
        for l in ["A1", "A2"] {
            out.push(check_omega(l, order)?);
        }
    }
    if want(Suite::Circle) {
        for s in [1, -1] {
            out.push(check_circle("A1", order, s)?);
        }
    }
    if want(Suite::Bridge) {
        for l in ["A1", "A2"] {
            out.extend(check_bridge(l, order, &[1, -1, 2, -2, 3])?);
        }
    }
    Ok(out)
}

/// The coefficient of `h^k`, or zero where the series is silent below its support.
pub fn coefficient(s: &HSeries, k: i64) -> Rational {
    s.coeff(k).unwrap_or_else(Rational::zero)
}

/// `|f|^{|Phi_+|}`.
pub fn h1_power(rs: &RootSystem, f: i64) -> Rational {
    num_traits::pow(int(f).abs(), rs.positive_roots().len())
}
