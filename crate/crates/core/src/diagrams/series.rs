//! Rational linear combinations of canonical diagrams.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Canonical, DiagramError, DiagramKey, JacobiDiagram};
use crate::qseries::{format_rational, parse_rational, Rational};

/// Bounds on the internal-vertex count and the leg count of stored terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub max_internal: usize,
    pub max_legs: usize,
}

impl TruncationPolicy {
    pub fn new(max_internal: usize, max_legs: usize) -> Self {
        TruncationPolicy {
            max_internal,
            max_legs,
        }
    }

    pub fn admits(&self, key: &DiagramKey) -> bool {
        key.t() <= self.max_internal && key.m() <= self.max_legs
    }

    pub fn admits_counts(&self, t: usize, m: usize) -> bool {
        t <= self.max_internal && m <= self.max_legs
    }

    /// The tighter of two policies.
    pub fn meet(&self, other: &TruncationPolicy) -> TruncationPolicy {
        TruncationPolicy {
            max_internal: self.max_internal.min(other.max_internal),
            max_legs: self.max_legs.min(other.max_legs),
        }
    }
}

/// `sum_i c_i D_i` over canonical diagrams, truncated by a [`TruncationPolicy`].
///
/// `truncated` records whether some term was ever dropped by the policy.
#[derive(Clone, Debug)]
pub struct DiagramSeries {
    policy: TruncationPolicy,
    terms: BTreeMap<DiagramKey, Rational>,
    truncated: bool,
}

/// One entry of a series file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub coeff: String,
    pub diagram: JacobiDiagram,
}

impl PartialEq for DiagramSeries {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for DiagramSeries {}

impl DiagramSeries {
    pub fn zero(policy: TruncationPolicy) -> Self {
        DiagramSeries {
            policy,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    /// The empty diagram with coefficient 1.
    pub fn unit(policy: TruncationPolicy) -> Self {
        let mut s = Self::zero(policy);
        s.add_key(DiagramKey::empty(), Rational::one());
        s
    }

    pub fn from_diagram(d: &JacobiDiagram, coeff: Rational, policy: TruncationPolicy) -> Self {
        let mut s = Self::zero(policy);
        s.add_diagram(d, coeff);
        s
    }

    pub fn from_key(key: DiagramKey, coeff: Rational, policy: TruncationPolicy) -> Self {
        let mut s = Self::zero(policy);
        s.add_key(key, coeff);
        s
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiagramKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &DiagramKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of a diagram, folding in its AS sign.
    pub fn coeff_of(&self, d: &JacobiDiagram) -> Rational {
        match d.canonicalize() {
            Canonical::Zero => Rational::zero(),
            Canonical::Form { key, sign } => self.coeff(&key) * Rational::from_integer(sign.into()),
        }
    }

    /// Adds `c * key`; returns false if the policy dropped it.
    pub fn add_key(&mut self, key: DiagramKey, c: Rational) -> bool {
        if c.is_zero() {
            return true;
        }
        if !self.policy.admits(&key) {
            self.truncated = true;
            return false;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
        true
    }

    pub fn add_canonical(&mut self, c: &Canonical, coeff: Rational) {
        if let Canonical::Form { key, sign } = c {
            self.add_key(key.clone(), coeff * Rational::from_integer((*sign).into()));
        }
    }

    pub fn add_diagram(&mut self, d: &JacobiDiagram, coeff: Rational) {
        self.add_canonical(&d.canonicalize(), coeff);
    }

    /// Same terms under a (usually tighter) policy.
    pub fn with_policy(&self, policy: TruncationPolicy) -> Self {
        let mut out = Self::zero(policy);
        out.truncated = self.truncated;
        for (k, c) in &self.terms {
            out.add_key(k.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &DiagramSeries) -> Self {
        let mut out = self.with_policy(self.policy.meet(&other.policy));
        out.truncated |= other.truncated;
        for (k, c) in &other.terms {
            out.add_key(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiagramSeries) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.policy);
        out.truncated = self.truncated;
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    /// Bilinear disjoint union.
    pub fn union(&self, other: &DiagramSeries) -> Self {
        let policy = self.policy.meet(&other.policy);
        let mut out = Self::zero(policy);
        out.truncated = self.truncated || other.truncated;
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if policy.admits_counts(ka.t() + kb.t(), ka.m() + kb.m()) {
                    out.add_key(ka.union(kb), ca * cb);
                } else {
                    out.truncated = true;
                }
            }
        }
        out
    }

    /// `sum_k a^k / k!` under the policy of `self`.
    pub fn exp_union(&self) -> Result<Self, DiagramError> {
        if self.terms.keys().any(DiagramKey::is_empty) {
            return Err(DiagramError::DegreeZeroPart);
        }
        let mut out = Self::unit(self.policy);
        let mut power = Self::unit(self.policy);
        let mut k = 1u64;
        loop {
            power = power.union(self).scale(&Rational::new(1.into(), k.into()));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
            k += 1;
        }
        out.truncated |= power.truncated;
        Ok(out)
    }

    /// Sub-series of terms satisfying `keep`.
    pub fn filter<F: Fn(&DiagramKey) -> bool>(&self, keep: F) -> Self {
        let mut out = Self::zero(self.policy);
        out.truncated = self.truncated;
        out.terms = self
            .terms
            .iter()
            .filter(|(k, _)| keep(k))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        out
    }

    pub fn max_legs_present(&self) -> usize {
        self.terms.keys().map(DiagramKey::m).max().unwrap_or(0)
    }

    pub fn max_internal_present(&self) -> usize {
        self.terms.keys().map(DiagramKey::t).max().unwrap_or(0)
    }

    pub fn to_entries(&self) -> Vec<SeriesEntry> {
        self.terms
            .iter()
            .map(|(k, c)| SeriesEntry {
                coeff: format_rational(c),
                diagram: k.to_diagram(),
            })
            .collect()
    }

    pub fn from_entries(entries: &[SeriesEntry], policy: TruncationPolicy) -> Result<Self, DiagramError> {
        let mut out = Self::zero(policy);
        for e in entries {
            let c = parse_rational(&e.coeff).map_err(|err| DiagramError::Format(err.to_string()))?;
            out.add_diagram(&e.diagram, c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_entries()).expect("series entries serialize")
    }

    pub fn from_json(s: &str, policy: TruncationPolicy) -> Result<Self, DiagramError> {
        let entries: Vec<SeriesEntry> =
            serde_json::from_str(s).map_err(|e| DiagramError::Format(e.to_string()))?;
        Self::from_entries(&entries, policy)
    }
}
