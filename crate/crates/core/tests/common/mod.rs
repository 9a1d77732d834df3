//! Independent oracles: plain power series, `gl(n)` matrices and type-A root
//! data in orthonormal coordinates. Nothing here calls into the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    q(n, 1)
}

fn fact(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * qi(k as i64))
}

/// Power series `sum c_k h^k` known through `h^N`, `N = len - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ps(pub Vec<Q>);

impl Ps {
    pub fn one(n: usize) -> Self {
        let mut v = vec![Q::zero(); n + 1];
        v[0] = Q::one();
        Ps(v)
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn mul(&self, o: &Ps) -> Ps {
        let n = self.order().min(o.order());
        let mut v = vec![Q::zero(); n + 1];
        for i in 0..=n {
            for j in 0..=n - i {
                v[i + j] += &self.0[i] * &o.0[j];
            }
        }
        Ps(v)
    }

    pub fn scale(&self, c: &Q) -> Ps {
        Ps(self.0.iter().map(|x| x * c).collect())
    }

    pub fn inverse(&self) -> Ps {
        let n = self.order();
        let a0 = self.0[0].clone();
        assert!(!a0.is_zero());
        let mut v = vec![Q::zero(); n + 1];
        v[0] = Q::one() / &a0;
        for k in 1..=n {
            let mut s = Q::zero();
            for i in 1..=k {
                s += &self.0[i] * &v[k - i];
            }
            v[k] = -s / &a0;
        }
        Ps(v)
    }

    /// `exp(c h)`.
    pub fn exp_linear(c: &Q, n: usize) -> Ps {
        Ps((0..=n).map(|k| num_traits::pow(c.clone(), k) / fact(k)).collect())
    }

    /// `sinh(c h)/(c h)`.
    pub fn sinh_over(c: &Q, n: usize) -> Ps {
        Ps((0..=n)
            .map(|k| {
                if k % 2 == 1 {
                    Q::zero()
                } else {
                    num_traits::pow(c.clone(), k) / fact(k + 1)
                }
            })
            .collect())
    }

    /// `exp(s)` for `s` without constant term.
    pub fn exp(&self) -> Ps {
        assert!(self.0[0].is_zero());
        let n = self.order();
        // e' = s' e
        let mut e = vec![Q::zero(); n + 1];
        e[0] = Q::one();
        for k in 1..=n {
            let mut acc = Q::zero();
            for i in 1..=k {
                acc += qi(i as i64) * &self.0[i] * &e[k - i];
            }
            e[k] = acc / qi(k as i64);
        }
        Ps(e)
    }

    pub fn coeff(&self, k: usize) -> &Q {
        &self.0[k]
    }
}

/// Bernoulli numbers `B_0..B_n` from `sum_{k<=n} C(n+1,k) B_k = 0`.
pub fn bernoulli(n: usize) -> Vec<Q> {
    let mut b = vec![Q::one()];
    for m in 1..=n {
        let mut s = Q::zero();
        let mut binom = Q::one();
        for (k, bk) in b.iter().enumerate() {
            s += &binom * bk;
            binom = binom * qi((m + 1 - k) as i64) / qi(k as i64 + 1);
        }
        b.push(-s / qi(m as i64 + 1));
    }
    b
}

/// Positive roots of `A_r` as `e_i - e_j`, `i < j`, with `(rho, alpha) = j - i`.
pub fn rho_pairings(rank: usize) -> Vec<i64> {
    let n = rank + 1;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((j - i) as i64);
        }
    }
    out
}

/// Twice `rho` in orthonormal coordinates: `(r, r-2, ..., -r)`.
pub fn two_rho(rank: usize) -> Vec<i64> {
    (0..=rank).map(|i| rank as i64 - 2 * i as i64).collect()
}

/// `|rho|^2`.
pub fn rho_norm_sq(rank: usize) -> Q {
    let s: i64 = two_rho(rank).iter().map(|x| x * x).sum();
    q(s, 4)
}

/// Permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<(Vec<usize>, i64)>) {
        if prefix.len() == n {
            let mut sign = 1;
            for i in 0..n {
                for j in i + 1..n {
                    if prefix[i] > prefix[j] {
                        sign = -sign;
                    }
                }
            }
            out.push((prefix.clone(), sign));
            return;
        }
        for k in 0..n {
            if !prefix.contains(&k) {
                prefix.push(k);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// `E_ij` as an `n x n` integer matrix.
pub fn elementary(n: usize, i: usize, j: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    m[i][j] = 1;
    m
}

pub fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn commutator(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (ab, ba) = (matmul(a, b), matmul(b, a));
    ab.iter()
        .zip(&ba)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn trace(a: &[Vec<i64>]) -> i64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// `tr([x, y] z)`.
pub fn bracket_form(x: &[Vec<i64>], y: &[Vec<i64>], z: &[Vec<i64>]) -> i64 {
    trace(&matmul(&commutator(x, y), z))
}

/// Theta graph weight with the planar orientation, from `gl(n)` dual pairs
/// `(E_ij, E_ji)`; the central direction drops out of every bracket.
pub fn theta_weight_gl(n: usize) -> i64 {
    type Matrix = Vec<Vec<i64>>;
    let pairs: Vec<(Matrix, Matrix)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (elementary(n, i, j), elementary(n, j, i)))
        .collect();
    let mut total = 0;
    for (xa, ya) in &pairs {
        for (xb, yb) in &pairs {
            let ab = commutator(xa, xb);
            for (xc, yc) in &pairs {
                let left = trace(&matmul(&ab, xc));
                if left != 0 {
                    total += left * bracket_form(yc, yb, ya);
                }
            }
        }
    }
    total
}

/// Weighted LMO invariant of surgery on the unknot with framing `f`, in
/// closed form: `q^{|rho|^2 ((s-f)/2 + s - 1/f)} prod_a f sinh((rho,a)h/2f)/sinh((rho,a)h/2)`.
pub fn lens_space_closed_form(rank: usize, f: i64, n: usize) -> Ps {
    let s = f.signum();
    let rho2 = rho_norm_sq(rank);
    let e = &rho2 * (q(s - f, 2) + qi(s) - q(1, f));
    let mut out = Ps::exp_linear(&e, n);
    for c in rho_pairings(rank) {
        // f sinh(c h/2f)/sinh(c h/2) = sinh_over(c/2f)/sinh_over(c/2)
        let num = Ps::sinh_over(&q(c, 2 * f), n);
        let den = Ps::sinh_over(&q(c, 2), n);
        out = out.mul(&num.mul(&den.inverse()));
    }
    out
}

/// `prod_a sinh((rho,a)h/2)/((rho,a)h/2)`.
pub fn omega_closed_form(rank: usize, n: usize) -> Ps {
    rho_pairings(rank)
        .into_iter()
        .fold(Ps::one(n), |acc, c| acc.mul(&Ps::sinh_over(&q(c, 2), n)))
}
