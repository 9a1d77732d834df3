//! Wheels, the wheeling element, gluing of legs, and the formal Gaussian
//! integral on diagram series.
//!
//! Gluing works on concrete ports. A glued pair of legs disappears and the
//! two edges ending there are joined into one; chains of struts are followed
//! until they reach a trivalent vertex or a surviving leg.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagrams::{
    canonicalize_half_edges, Canonical, DiagramError, DiagramKey, DiagramSeries, HalfEdges,
    JacobiDiagram, TruncationPolicy,
};
use crate::qseries::{factorial, modified_bernoulli, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalgError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("strut content is not an exponential: {0}")]
    StrutContent(String),
    #[error("framing 0: not a rational homology sphere surgery")]
    NotRationalHomologySphere,
    #[error("integrand contains strut components")]
    StrutfulIntegrand,
}

/// The `2k`-wheel.
pub fn wheel(k: usize) -> JacobiDiagram {
    assert!(k >= 1, "wheel(k) needs k >= 1");
    JacobiDiagram::polygon_wheel(2 * k)
}

pub fn strut() -> JacobiDiagram {
    JacobiDiagram::strut()
}

pub fn theta() -> JacobiDiagram {
    JacobiDiagram::theta()
}

/// `exp_union(sum_{2m <= i_max} b_{2m} w_{2m})` truncated at `i_max` internal vertices.
pub fn omega(i_max: usize) -> DiagramSeries {
    omega_with_policy(TruncationPolicy::new(i_max, i_max))
}

pub fn omega_with_policy(policy: TruncationPolicy) -> DiagramSeries {
    let mut log = DiagramSeries::zero(policy);
    for m in 1..=policy.max_internal / 2 {
        log.add_diagram(&wheel(m), modified_bernoulli(m as u32));
    }
    log.exp_union().expect("wheels have positive degree")
}

/// Joins the legs of `d` to legs of `y` according to `map` (`map[l]` is the
/// leg of `y` glued to leg `l` of `d`). Trivalent vertices of `d` come first.
pub(crate) fn glue(d: &HalfEdges, y: &HalfEdges, map: &[Option<usize>]) -> Result<HalfEdges, DiagramError> {
    const NONE: usize = usize::MAX;
    let t = d.t + y.t;
    let total = 3 * t + d.m + y.m;
    let d_port = |p: usize| if p < 3 * d.t { p } else { 3 * t + (p - 3 * d.t) };
    let y_port = |p: usize| {
        if p < 3 * y.t {
            3 * d.t + p
        } else {
            3 * t + d.m + (p - 3 * y.t)
        }
    };
    let mut partner = vec![NONE; total];
    for (p, &q) in d.partner.iter().enumerate() {
        partner[d_port(p)] = d_port(q);
    }
    for (p, &q) in y.partner.iter().enumerate() {
        partner[y_port(p)] = y_port(q);
    }
    let mut through = vec![NONE; total];
    for (l, target) in map.iter().enumerate() {
        if let Some(yl) = target {
            let a = 3 * t + l;
            let b = 3 * t + d.m + yl;
            through[a] = b;
            through[b] = a;
        }
    }
    let mut new_id = vec![NONE; total];
    let mut m = 0;
    for (p, id) in new_id.iter_mut().enumerate() {
        if p < 3 * t {
            *id = p;
        } else if through[p] == NONE {
            *id = 3 * t + m;
            m += 1;
        }
    }
    let mut visited = vec![false; total];
    let mut new_partner = vec![NONE; 3 * t + m];
    for p in 0..total {
        if new_id[p] == NONE {
            continue;
        }
        let mut q = partner[p];
        while through[q] != NONE {
            visited[q] = true;
            let r = through[q];
            visited[r] = true;
            q = partner[r];
        }
        new_partner[new_id[p]] = new_id[q];
    }
    if (0..total).any(|p| through[p] != NONE && !visited[p]) {
        return Err(DiagramError::CircleFormed);
    }
    let mut rot = Vec::with_capacity(t);
    rot.extend(d.rot.iter().copied());
    rot.extend(y.rot.iter().map(|r| [r[0] + 3 * d.t, r[1] + 3 * d.t, r[2] + 3 * d.t]));
    Ok(HalfEdges {
        t,
        m,
        partner: new_partner,
        rot,
    })
}

fn for_each_injection<F>(k: usize, n: usize, f: &mut F) -> Result<(), DiagramError>
where
    F: FnMut(&[Option<usize>]) -> Result<(), DiagramError>,
{
    fn rec<F>(
        i: usize,
        k: usize,
        n: usize,
        used: &mut [bool],
        map: &mut Vec<Option<usize>>,
        f: &mut F,
    ) -> Result<(), DiagramError>
    where
        F: FnMut(&[Option<usize>]) -> Result<(), DiagramError>,
    {
        if i == k {
            return f(map);
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                map[i] = Some(j);
                rec(i + 1, k, n, used, map, f)?;
                used[j] = false;
            }
        }
        Ok(())
    }
    if k > n {
        return Ok(());
    }
    rec(0, k, n, &mut vec![false; n], &mut vec![None; k], f)
}

/// Calls `f` on every perfect matching of `0..n`, as a list of pairs.
pub fn for_each_perfect_matching<F: FnMut(&[(usize, usize)])>(n: usize, f: &mut F) {
    fn rec<F: FnMut(&[(usize, usize)])>(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, f: &mut F) {
        if free.is_empty() {
            f(acc);
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            acc.push((a, b));
            rec(free, acc, f);
            acc.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    if n % 2 == 1 {
        return;
    }
    rec(&mut (0..n).collect(), &mut Vec::new(), f);
}

/// Canonical forms of all gluings of every leg of `d` to distinct legs of `y`.
/// With `total` the leg counts must match (bijections), otherwise injections.
pub fn gluings(d: &JacobiDiagram, y: &JacobiDiagram, total: bool) -> Result<Vec<Canonical>, DiagramError> {
    let (hd, hy) = (d.half_edges(), y.half_edges());
    let mut out = Vec::new();
    if total && hd.m != hy.m {
        return Ok(out);
    }
    for_each_injection(hd.m, hy.m, &mut |map| {
        out.push(canonicalize_half_edges(&glue(&hd, &hy, map)?));
        Ok(())
    })?;
    Ok(out)
}

struct KeyCache(HashMap<DiagramKey, HalfEdges>);

impl KeyCache {
    fn new() -> Self {
        KeyCache(HashMap::new())
    }

    fn get(&mut self, key: &DiagramKey) -> HalfEdges {
        self.0
            .entry(key.clone())
            .or_insert_with(|| key.to_diagram().half_edges())
            .clone()
    }
}

/// The pairing: all ways of gluing every leg of `d` to every leg of `y`.
/// The result lives under the policy of `y`.
pub fn pair(d: &DiagramSeries, y: &DiagramSeries) -> Result<DiagramSeries, BalgError> {
    let policy = y.policy();
    let mut out = DiagramSeries::zero(policy);
    let mut cache = KeyCache::new();
    for (kd, cd) in d.terms() {
        for (ky, cy) in y.terms() {
            if kd.m() != ky.m() {
                continue;
            }
            if kd.t() + ky.t() > policy.max_internal {
                out.mark_truncated();
                continue;
            }
            let (hd, hy) = (cache.get(kd), cache.get(ky));
            let c = cd * cy;
            if kd.t() == 0 {
                glue_struts_into(&hd, &hy, &c, &mut out)?;
            } else {
                for_each_injection(hd.m, hy.m, &mut |map| {
                    out.add_canonical(&canonicalize_half_edges(&glue(&hd, &hy, map)?), c.clone());
                    Ok(())
                })?;
            }
        }
    }
    Ok(out)
}

/// Pure strut factor glued onto `y`: each perfect matching of the legs of
/// `y` arises from `k! 2^k` bijections.
fn glue_struts_into(
    struts: &HalfEdges,
    y: &HalfEdges,
    c: &Rational,
    out: &mut DiagramSeries,
) -> Result<(), DiagramError> {
    let k = struts.m / 2;
    let weight = c * factorial(k as u64) * Rational::from_integer(num_bigint::BigInt::from(1u64 << k));
    // strut legs come in partner pairs
    let mut pairs = Vec::with_capacity(k);
    for l in 0..struts.m {
        let other = struts.partner[struts.leg_port(l)] - 3 * struts.t;
        if l < other {
            pairs.push((l, other));
        }
    }
    let mut result = Ok(());
    for_each_perfect_matching(y.m, &mut |matching| {
        if result.is_err() {
            return;
        }
        let mut map = vec![None; struts.m];
        for (i, &(a, b)) in matching.iter().enumerate() {
            map[pairs[i].0] = Some(a);
            map[pairs[i].1] = Some(b);
        }
        match glue(struts, y, &map) {
            Ok(he) => out.add_canonical(&canonicalize_half_edges(&he), weight.clone()),
            Err(e) => result = Err(e),
        }
    });
    result
}

/// Reference implementation of [`pair`] that always enumerates bijections.
pub fn pair_by_bijections(d: &DiagramSeries, y: &DiagramSeries) -> Result<DiagramSeries, BalgError> {
    let policy = y.policy();
    let mut out = DiagramSeries::zero(policy);
    for (kd, cd) in d.terms() {
        for (ky, cy) in y.terms() {
            if kd.m() != ky.m() || kd.t() + ky.t() > policy.max_internal {
                continue;
            }
            for c in gluings(&kd.to_diagram(), &ky.to_diagram(), true)? {
                out.add_canonical(&c, cd * cy);
            }
        }
    }
    Ok(out)
}

/// `d` acting as a differential operator on `target`: all legs of `d` are
/// glued to some subset of the legs of `target`.
pub fn partial(d: &DiagramSeries, target: &DiagramSeries) -> Result<DiagramSeries, BalgError> {
    let policy = target.policy();
    let mut out = DiagramSeries::zero(policy);
    let mut cache = KeyCache::new();
    for (kd, cd) in d.terms() {
        for (ky, cy) in target.terms() {
            if kd.m() > ky.m() {
                continue;
            }
            if kd.t() + ky.t() > policy.max_internal {
                out.mark_truncated();
                continue;
            }
            let (hd, hy) = (cache.get(kd), cache.get(ky));
            let c = cd * cy;
            for_each_injection(hd.m, hy.m, &mut |map| {
                out.add_canonical(&canonicalize_half_edges(&glue(&hd, &hy, map)?), c.clone());
                Ok(())
            })?;
        }
    }
    Ok(out)
}

/// Inverse of `D -> partial(omega, D)`, solved degree by degree in the
/// internal-vertex grading: `(1 + N)^{-1} = sum_k (-N)^k`.
pub fn wheeling_inverse(s: &DiagramSeries) -> Result<DiagramSeries, BalgError> {
    let policy = s.policy();
    let n_op = omega_with_policy(policy).sub(&DiagramSeries::unit(policy));
    let mut out = s.clone();
    let mut term = s.clone();
    let mut sign = Rational::one();
    loop {
        term = partial(&n_op, &term)?;
        if term.is_zero() {
            break;
        }
        sign = -sign;
        out = out.add(&term.scale(&sign));
    }
    Ok(out)
}

/// `s = exp_union((f/2) strut) u Y` with `Y` strut-free.
#[derive(Clone, Debug)]
pub struct StrutSplit {
    pub framing: Rational,
    pub reduced: DiagramSeries,
}

impl StrutSplit {
    pub fn framing_part(&self) -> Rational {
        &self.framing / Rational::from_integer(2.into())
    }
}

fn strut_key(k: usize) -> DiagramKey {
    DiagramKey::from_components(vec![crate::diagrams::ComponentKey::strut(); k])
}

pub fn strut_exponential(c: &Rational, max_legs: usize) -> DiagramSeries {
    DiagramSeries::from_key(strut_key(1), c.clone(), TruncationPolicy::new(usize::MAX, max_legs))
        .exp_union()
        .expect("a strut has degree 1")
}

pub fn strut_split(s: &DiagramSeries) -> Result<StrutSplit, BalgError> {
    let c = s.coeff(&strut_key(1));
    let reduced = s.filter(|k| k.strut_count() == 0);
    let policy = s.policy();
    let rebuilt = strut_exponential(&c, policy.max_legs).union(&reduced).with_policy(policy);
    if rebuilt != *s {
        let diff = s.sub(&rebuilt);
        let (k, v) = diff.terms().next().expect("nonzero difference");
        return Err(BalgError::StrutContent(format!(
            "term {k} has coefficient off by {v} from exp((c) strut) u Y with c = {c}"
        )));
    }
    Ok(StrutSplit {
        framing: c * Rational::from_integer(2.into()),
        reduced,
    })
}

/// `<exp_union(-strut / 2f), Y>`. With `f_override` the input is taken to be `Y` itself.
pub fn fg_integral(s: &DiagramSeries, f_override: Option<&Rational>) -> Result<DiagramSeries, BalgError> {
    let (f, y) = match f_override {
        Some(f) => {
            if s.terms().any(|(k, _)| k.strut_count() > 0) {
                return Err(BalgError::StrutfulIntegrand);
            }
            (f.clone(), s.clone())
        }
        None => {
            let split = strut_split(s)?;
            (split.framing, split.reduced)
        }
    };
    if f.is_zero() {
        return Err(BalgError::NotRationalHomologySphere);
    }
    let c = -(Rational::one() / (Rational::from_integer(2.into()) * &f));
    let gauss = strut_exponential(&c, y.max_legs_present());
    pair(&gauss, &y)
}
