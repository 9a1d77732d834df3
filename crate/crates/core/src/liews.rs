//! The Lie-algebra weight system as an exact tensor-network contraction,
//! and the Gaussian (Wick) operator on the resulting symmetric tensors.
//!
//! Every trivalent vertex contributes `f_{abc} = b([x_a, x_b], x_c)` with
//! indices in the vertex's cyclic order, every edge the inverse Gram matrix
//! `B^{ab}`. Legs stay open. The structure constants of `sl_n` are integers,
//! so contraction runs on `i128` with the inverse Gram matrix scaled by the
//! common denominator of its entries; the scale is divided out at the end.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::diagrams::{ComponentKey, DiagramKey, DiagramSeries, HalfEdges, JacobiDiagram};
use crate::linalg::{self, Matrix};
use crate::qseries::{double_factorial_odd, int, HSeries, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("sl_{0} is outside the supported range 2..=4")]
    Unsupported(usize),
    #[error("structure tensor check failed: {0}")]
    Inconsistent(String),
    #[error("Gaussian operator needs f != 0")]
    ZeroFraming,
    #[error("weight vector has {got} coordinates, rank is {rank}")]
    BadWeight { got: usize, rank: usize },
}

/// Structure constants, invariant form and Cartan data of `sl_n`.
#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    n: usize,
    labels: Vec<String>,
    matrices: Vec<Vec<Vec<i64>>>,
    gram: Matrix,
    inv_gram: Matrix,
    inv_gram_scaled: Vec<Vec<i128>>,
    scale: i128,
    f: Vec<i64>,
    f_sparse: Vec<([u8; 3], i128)>,
    cartan: Matrix,
    cartan_embed: Matrix,
}

fn mat_prod(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn trace(a: &[Vec<i64>]) -> i64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

fn commutator(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (ab, ba) = (mat_prod(a, b), mat_prod(b, a));
    ab.iter()
        .zip(&ba)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

impl LieAlgebraData {
    /// `sl_n` with basis `E_ij (i != j)` then `H_k = E_kk - E_{k+1,k+1}`,
    /// and the trace form of the defining representation.
    pub fn build_sl(n: usize) -> Result<Self, LieError> {
        if !(2..=4).contains(&n) {
            return Err(LieError::Unsupported(n));
        }
        let unit = |i: usize, j: usize| {
            let mut m = vec![vec![0i64; n]; n];
            m[i][j] = 1;
            m
        };
        let mut labels = Vec::new();
        let mut matrices = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    labels.push(format!("E{}{}", i + 1, j + 1));
                    matrices.push(unit(i, j));
                }
            }
        }
        for k in 0..n - 1 {
            labels.push(format!("H{}", k + 1));
            let mut m = unit(k, k);
            m[k + 1][k + 1] = -1;
            matrices.push(m);
        }
        let dim = matrices.len();
        let rank = n - 1;
        let gram: Matrix = (0..dim)
            .map(|a| (0..dim).map(|b| int(trace(&mat_prod(&matrices[a], &matrices[b])))).collect())
            .collect();
        let inv_gram = linalg::inverse(&gram).ok_or_else(|| LieError::Inconsistent("degenerate form".into()))?;
        let scale_big = linalg::common_denominator(&inv_gram);
        let scale = scale_big.to_i128().expect("small denominator");
        let inv_gram_scaled = inv_gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * Rational::from_integer(scale_big.clone())).to_integer().to_i128().unwrap())
                    .collect()
            })
            .collect();
        let mut f = vec![0i64; dim * dim * dim];
        let mut f_sparse = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                let br = commutator(&matrices[a], &matrices[b]);
                for c in 0..dim {
                    let v = trace(&mat_prod(&br, &matrices[c]));
                    f[(a * dim + b) * dim + c] = v;
                    if v != 0 {
                        f_sparse.push(([a as u8, b as u8, c as u8], v as i128));
                    }
                }
            }
        }
        let h0 = dim - rank;
        let cartan = (0..rank)
            .map(|i| (0..rank).map(|j| gram[h0 + i][h0 + j].clone()).collect())
            .collect();
        let cartan_embed = (0..dim)
            .map(|a| {
                (0..rank)
                    .map(|i| if a == h0 + i { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        let g = LieAlgebraData {
            n,
            labels,
            matrices,
            gram,
            inv_gram,
            inv_gram_scaled,
            scale,
            f,
            f_sparse,
            cartan,
            cartan_embed,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The defining-representation matrix of basis element `a`.
    pub fn matrix(&self, a: usize) -> &[Vec<i64>] {
        &self.matrices[a]
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn inverse_gram(&self) -> &Matrix {
        &self.inv_gram
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> i64 {
        let d = self.dim();
        self.f[(a * d + b) * d + c]
    }

    /// Number of nonzero `f_{abc}`.
    pub fn structure_nnz(&self) -> usize {
        self.f_sparse.len()
    }

    /// Form on the weight space in simple-root coordinates.
    pub fn cartan(&self) -> &Matrix {
        &self.cartan
    }

    /// Column `i` is the coordinate vector of `t_{alpha_i}`.
    pub fn cartan_embed(&self) -> &Matrix {
        &self.cartan_embed
    }

    /// Coordinates of `t_lambda` for `lambda` in simple-root coordinates.
    pub fn embed(&self, lambda: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.cartan_embed, lambda)
    }

    /// `b(x, y)` for coordinate vectors.
    pub fn form(&self, x: &[Rational], y: &[Rational]) -> Rational {
        linalg::bilinear(&self.gram, x, y)
    }

    fn validate(&self) -> Result<(), LieError> {
        let dim = self.dim();
        let bad = |s: String| Err(LieError::Inconsistent(s));
        if !linalg::is_symmetric(&self.gram) {
            return bad("gram not symmetric".into());
        }
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let v = self.structure_constant(a, b, c);
                    if v != -self.structure_constant(b, a, c) || v != self.structure_constant(b, c, a) {
                        return bad(format!("f not totally antisymmetric at {a},{b},{c}"));
                    }
                    let rhs = trace(&mat_prod(&self.matrices[a], &commutator(&self.matrices[b], &self.matrices[c])));
                    if v != rhs {
                        return bad(format!("b([x,y],z) != b(x,[y,z]) at {a},{b},{c}"));
                    }
                }
            }
        }
        // lowered Jacobi: sum_{e,e'} f_{abe} B^{ee'} f_{e'cd} + cyclic in (a,b,c) = 0
        let mut raised = vec![0i128; dim * dim * dim];
        for &([a, b, e], v) in &self.f_sparse {
            for (e2, &w) in self.inv_gram_scaled[e as usize].iter().enumerate() {
                if w != 0 {
                    raised[((a as usize) * dim + b as usize) * dim + e2] += v * w;
                }
            }
        }
        let bracket = |a: usize, b: usize, c: usize, d: usize| -> i128 {
            (0..dim)
                .map(|e| raised[(a * dim + b) * dim + e] * self.structure_constant(e, c, d) as i128)
                .sum()
        };
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    for d in 0..dim {
                        if bracket(a, b, c, d) + bracket(b, c, a, d) + bracket(c, a, b, d) != 0 {
                            return bad(format!("Jacobi identity fails at {a},{b},{c},{d}"));
                        }
                    }
                }
            }
        }
        let h0 = dim - self.rank();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let (ti, tj) = (&self.cartan_embed.iter().map(|r| r[i].clone()).collect::<Vec<_>>(), &self.cartan_embed.iter().map(|r| r[j].clone()).collect::<Vec<_>>());
                if self.form(ti, tj) != self.gram[h0 + i][h0 + j] {
                    return bad("cartan embedding does not preserve the form".into());
                }
            }
        }
        let two = int(2);
        if (0..self.rank()).any(|i| self.cartan[i][i] != two) {
            return bad("simple roots do not have (a,a) = 2".into());
        }
        Ok(())
    }
}

/// Symmetric tensor stored as a polynomial: sorted index tuple to coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymTensor {
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl SymTensor {
    pub fn scalar(c: Rational) -> Self {
        let mut s = SymTensor::default();
        s.add_term(Vec::new(), c);
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty monomial.
    pub fn scalar_part(&self) -> Rational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, mono: &[u8]) -> Rational {
        let mut k = mono.to_vec();
        k.sort_unstable();
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mut mono: Vec<u8>, c: Rational) {
        if c.is_zero() {
            return;
        }
        mono.sort_unstable();
        let e = self.terms.entry(mono.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = SymTensor::default();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &SymTensor) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    /// Polynomial product.
    pub fn mul(&self, other: &SymTensor) -> Self {
        let mut out = SymTensor::default();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mut k = ka.clone();
                k.extend_from_slice(kb);
                out.add_term(k, va * vb);
            }
        }
        out
    }

    /// `(sum_a v_a x_a)^k`.
    pub fn vector_power(v: &[Rational], k: usize) -> Self {
        let mut lin = SymTensor::default();
        for (a, c) in v.iter().enumerate() {
            lin.add_term(vec![a as u8], c.clone());
        }
        let mut out = SymTensor::scalar(Rational::one());
        for _ in 0..k {
            out = out.mul(&lin);
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Factor {
    vars: Vec<usize>,
    entries: HashMap<Vec<u8>, i128>,
}

fn contract_pair(a: &Factor, b: &Factor) -> Factor {
    let shared: Vec<usize> = a.vars.iter().copied().filter(|v| b.vars.contains(v)).collect();
    let pos = |f: &Factor, v: usize| f.vars.iter().position(|&w| w == v).unwrap();
    let a_shared: Vec<usize> = shared.iter().map(|&v| pos(a, v)).collect();
    let b_shared: Vec<usize> = shared.iter().map(|&v| pos(b, v)).collect();
    let a_rest: Vec<usize> = (0..a.vars.len()).filter(|i| !a_shared.contains(i)).collect();
    let b_rest: Vec<usize> = (0..b.vars.len()).filter(|i| !b_shared.contains(i)).collect();
    let mut index: HashMap<Vec<u8>, Vec<(Vec<u8>, i128)>> = HashMap::new();
    for (k, &v) in &b.entries {
        let proj = b_shared.iter().map(|&i| k[i]).collect();
        let rest = b_rest.iter().map(|&i| k[i]).collect();
        index.entry(proj).or_default().push((rest, v));
    }
    let mut entries: HashMap<Vec<u8>, i128> = HashMap::new();
    for (k, &va) in &a.entries {
        let proj: Vec<u8> = a_shared.iter().map(|&i| k[i]).collect();
        if let Some(list) = index.get(&proj) {
            let head: Vec<u8> = a_rest.iter().map(|&i| k[i]).collect();
            for (rest, vb) in list {
                let mut key = head.clone();
                key.extend_from_slice(rest);
                let prod = va.checked_mul(*vb).expect("contraction overflow");
                let e = entries.entry(key).or_insert(0);
                *e = e.checked_add(prod).expect("contraction overflow");
            }
        }
    }
    entries.retain(|_, v| *v != 0);
    let mut vars: Vec<usize> = a_rest.iter().map(|&i| a.vars[i]).collect();
    vars.extend(b_rest.iter().map(|&i| b.vars[i]));
    Factor { vars, entries }
}

/// Order in which the tensor network is contracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Always contract the pair with the smallest product of sizes.
    Greedy,
    /// Uniformly random connected pair, seeded.
    Random(u64),
}

fn network(he: &HalfEdges, g: &LieAlgebraData) -> (Vec<Factor>, usize) {
    let mut factors = Vec::new();
    for r in &he.rot {
        let entries = g
            .f_sparse
            .iter()
            .map(|(idx, v)| (idx.to_vec(), *v))
            .collect();
        factors.push(Factor {
            vars: r.to_vec(),
            entries,
        });
    }
    let dim = g.dim();
    let mut edges = 0;
    for (p, &q) in he.partner.iter().enumerate() {
        if p < q {
            edges += 1;
            let mut entries = HashMap::new();
            for a in 0..dim {
                for b in 0..dim {
                    let v = g.inv_gram_scaled[a][b];
                    if v != 0 {
                        entries.insert(vec![a as u8, b as u8], v);
                    }
                }
            }
            factors.push(Factor { vars: vec![p, q], entries });
        }
    }
    (factors, edges)
}

fn contract_all(mut factors: Vec<Factor>, schedule: Schedule) -> Factor {
    let mut rng = match schedule {
        Schedule::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        Schedule::Greedy => None,
    };
    if factors.is_empty() {
        let mut entries = HashMap::new();
        entries.insert(Vec::new(), 1);
        return Factor { vars: Vec::new(), entries };
    }
    while factors.len() > 1 {
        let mut candidates = Vec::new();
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if factors[i].vars.iter().any(|v| factors[j].vars.contains(v)) {
                    candidates.push((i, j));
                }
            }
        }
        if candidates.is_empty() {
            candidates.push((0, 1));
        }
        let (i, j) = match rng.as_mut() {
            Some(r) => candidates[r.gen_range(0..candidates.len())],
            None => *candidates
                .iter()
                .min_by_key(|(i, j)| factors[*i].entries.len() * factors[*j].entries.len())
                .unwrap(),
        };
        let b = factors.swap_remove(j);
        let a = factors.swap_remove(i);
        factors.push(contract_pair(&a, &b));
    }
    factors.pop().unwrap()
}

/// Tensor with legs in their numbering order, as map from index tuple to value.
fn ordered_from_half_edges(he: &HalfEdges, g: &LieAlgebraData, schedule: Schedule) -> BTreeMap<Vec<u8>, Rational> {
    let (factors, edges) = network(he, g);
    let result = contract_all(factors, schedule);
    let order: Vec<usize> = (0..he.m)
        .map(|l| {
            let port = he.leg_port(l);
            result.vars.iter().position(|&v| v == port).expect("leg stays open")
        })
        .collect();
    let denom = Rational::from_integer(BigInt::from(g.scale).pow(edges as u32));
    result
        .entries
        .iter()
        .map(|(k, v)| {
            let key = order.iter().map(|&i| k[i]).collect();
            (key, Rational::from_integer(BigInt::from(*v)) / &denom)
        })
        .collect()
}

/// Unsymmetrized tensor of `d` in `g^{(x)m}`, legs in the order `t..t+m`.
pub fn ordered_weight(d: &JacobiDiagram, g: &LieAlgebraData) -> BTreeMap<Vec<u8>, Rational> {
    ordered_from_half_edges(&d.half_edges(), g, Schedule::Greedy)
}

/// `W_g(d)` as a polynomial in `S(g)`.
pub fn weight_tensor(d: &JacobiDiagram, g: &LieAlgebraData) -> SymTensor {
    weight_tensor_scheduled(d, g, Schedule::Greedy)
}

pub fn weight_tensor_scheduled(d: &JacobiDiagram, g: &LieAlgebraData, schedule: Schedule) -> SymTensor {
    let mut out = SymTensor::default();
    for (k, v) in ordered_from_half_edges(&d.half_edges(), g, schedule) {
        out.add_term(k, v);
    }
    out
}

/// Internal-vertex bounds above this are treated as unbounded when deriving caps.
const MAX_TRACKED_INTERNAL: usize = 1 << 12;

/// Graded symmetric tensor with `HSeries` coefficients.
///
/// The coefficient of an `m`-leg monomial is known to `h^{(I+m)/2}` when
/// the source series was truncated at `I` internal vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTensor {
    closed_cap: i64,
    terms: BTreeMap<Vec<u8>, HSeries>,
}

impl WeightTensor {
    pub fn zero(closed_cap: i64) -> Self {
        WeightTensor {
            closed_cap,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff * sym` with every monomial carrying the same series.
    pub fn from_sym(sym: &SymTensor, coeff: &HSeries) -> Self {
        let mut out = WeightTensor::zero(coeff.cap());
        for (k, v) in sym.terms() {
            out.add_term(k.clone(), &coeff.scale(v));
        }
        out
    }

    pub fn closed_cap(&self) -> i64 {
        self.closed_cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &HSeries)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: Vec<u8>, s: &HSeries) {
        match self.terms.get_mut(&mono) {
            Some(e) => *e = e.try_add(s).expect("weight coefficients stay within the pole cap"),
            None => {
                self.terms.insert(mono, s.clone());
            }
        }
    }

    pub fn add(&self, other: &WeightTensor) -> Self {
        let mut out = self.clone();
        out.closed_cap = out.closed_cap.min(other.closed_cap);
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        out
    }

    /// The leg-free part.
    pub fn scalar(&self) -> HSeries {
        let base = HSeries::zero(self.closed_cap);
        match self.terms.get(&Vec::new()) {
            Some(s) => base.try_add(s).unwrap(),
            None => base,
        }
    }

    pub fn max_legs(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Divides each `m`-leg coefficient by `h^m`: the Gaussian is then taken
    /// in the coordinates where the exponent `(beta, x)` carries no `h`.
    pub fn exponent_coordinates(&self) -> Self {
        WeightTensor {
            closed_cap: self.closed_cap,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.shift(-(k.len() as i64))))
                .collect(),
        }
    }
}

/// `W_g` on canonical keys with a per-component cache.
pub struct WeightSystem {
    g: LieAlgebraData,
    cache: HashMap<ComponentKey, SymTensor>,
}

impl WeightSystem {
    pub fn new(g: LieAlgebraData) -> Self {
        WeightSystem {
            g,
            cache: HashMap::new(),
        }
    }

    pub fn algebra(&self) -> &LieAlgebraData {
        &self.g
    }

    pub fn component_weight(&mut self, c: &ComponentKey) -> SymTensor {
        if let Some(w) = self.cache.get(c) {
            return w.clone();
        }
        let d = DiagramKey::from_components(vec![c.clone()]).to_diagram();
        let w = weight_tensor(&d, &self.g);
        self.cache.insert(c.clone(), w.clone());
        w
    }

    /// Weight of the reference diagram of `key`.
    pub fn weight_key(&mut self, key: &DiagramKey) -> SymTensor {
        let mut out = SymTensor::scalar(Rational::one());
        for c in key.components() {
            out = out.mul(&self.component_weight(c));
        }
        out
    }

    /// `sum c_D h^{deg D} W_g(D)`.
    pub fn hat_weight(&mut self, s: &DiagramSeries) -> WeightTensor {
        let i_max = s.policy().max_internal.min(MAX_TRACKED_INTERNAL) as i64;
        let mut out = WeightTensor::zero(i_max / 2);
        for (key, c) in s.terms() {
            let w = self.weight_key(key);
            let deg = key.degree() as i64;
            for (mono, v) in w.terms() {
                let cap = (i_max + mono.len() as i64) / 2;
                out.add_term(mono.clone(), &HSeries::monomial(c * v, deg, cap));
            }
        }
        out
    }

    /// Scalar part of `hat_weight`, for series of closed diagrams.
    pub fn hat_scalar(&mut self, s: &DiagramSeries) -> HSeries {
        self.hat_weight(s).scalar()
    }
}

/// Coordinates of a weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightCoords {
    SimpleRoot(Vec<Rational>),
    Fundamental(Vec<Rational>),
}

impl WeightCoords {
    /// Simple-root coordinates.
    pub fn simple_root(&self, g: &LieAlgebraData) -> Result<Vec<Rational>, LieError> {
        let v = match self {
            WeightCoords::SimpleRoot(v) | WeightCoords::Fundamental(v) => v,
        };
        if v.len() != g.rank() {
            return Err(LieError::BadWeight {
                got: v.len(),
                rank: g.rank(),
            });
        }
        Ok(match self {
            WeightCoords::SimpleRoot(v) => v.clone(),
            // (lambda, alpha_k) = d_k, so c = A^{-1} d
            WeightCoords::Fundamental(d) => {
                linalg::mat_vec(&linalg::inverse(g.cartan()).expect("Cartan matrix is invertible"), d)
            }
        })
    }
}

/// Replaces each `x_a` by `lambda(x_a) = b(t_lambda, x_a)`.
pub fn evaluate_at(t: &WeightTensor, g: &LieAlgebraData, lambda: &WeightCoords) -> Result<HSeries, LieError> {
    let tl = g.embed(&lambda.simple_root(g)?);
    let values = linalg::mat_vec(g.gram(), &tl);
    let mut acc = HSeries::zero(t.closed_cap());
    for (mono, s) in t.terms() {
        let v: Rational = mono.iter().map(|&a| values[a as usize].clone()).product();
        if !v.is_zero() {
            acc = acc.try_add(&s.scale(&v)).expect("evaluation stays within the pole cap");
        }
    }
    Ok(acc)
}

/// Sum over perfect matchings of the slots of `mono` of the product of `B_{ab}`.
pub fn wick_monomial(g: &LieAlgebraData, mono: &[u8]) -> Rational {
    fn rec(g: &LieAlgebraData, slots: &mut Vec<u8>) -> Rational {
        if slots.is_empty() {
            return Rational::one();
        }
        let a = slots.remove(0);
        let mut total = Rational::zero();
        for i in 0..slots.len() {
            let w = &g.gram[a as usize][slots[i] as usize];
            if w.is_zero() {
                continue;
            }
            let b = slots.remove(i);
            total += w * rec(g, slots);
            slots.insert(i, b);
        }
        slots.insert(0, a);
        total
    }
    if mono.len() % 2 == 1 {
        return Rational::zero();
    }
    rec(g, &mut mono.to_vec())
}

/// `exp(-(h/2f) Laplacian)` at 0: each matched pair of slots contributes `(-h/f) B_{ab}`.
pub fn wick(t: &WeightTensor, g: &LieAlgebraData, f: &Rational) -> Result<HSeries, LieError> {
    if f.is_zero() {
        return Err(LieError::ZeroFraming);
    }
    let pair = -(Rational::one() / f);
    let mut acc = HSeries::zero(t.closed_cap());
    let mut memo: HashMap<&Vec<u8>, Rational> = HashMap::new();
    for (mono, s) in t.terms() {
        if mono.len() % 2 == 1 {
            continue;
        }
        let j = mono.len() / 2;
        let w = memo.entry(mono).or_insert_with(|| wick_monomial(g, mono)).clone();
        if w.is_zero() {
            continue;
        }
        let factor = w * num_traits::pow(pair.clone(), j);
        acc = acc
            .try_add(&s.scale(&factor).shift(j as i64))
            .expect("Gaussian stays within the pole cap");
    }
    Ok(acc)
}

/// `(2j-1)!! (-h |beta|^2 / f)^j` in closed form.
pub fn pure_power_wick_check(
    j: u32,
    beta: &[Rational],
    g: &LieAlgebraData,
    f: &Rational,
    cap: i64,
) -> Result<HSeries, LieError> {
    if f.is_zero() {
        return Err(LieError::ZeroFraming);
    }
    let b = WeightCoords::SimpleRoot(beta.to_vec()).simple_root(g)?;
    let norm = linalg::bilinear(g.cartan(), &b, &b);
    let c = double_factorial_odd(j as u64) * num_traits::pow(-(norm / f), j as usize);
    Ok(HSeries::monomial(c, j as i64, cap))
}
