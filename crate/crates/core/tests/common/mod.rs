//! Brute-force oracles shared by the integration tests. None of these call
//! the crate's elimination, valuation or evaluation routines.
#![allow(dead_code)]

use std::collections::BTreeMap;

use abstor::linalg::Matrix;
use abstor::{BasedChainComplex, FamilyMatrix, GaussRat, Poly, Rat, RatFunc};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn g(re: i64) -> GaussRat {
    GaussRat::from(re)
}

pub fn conj(x: &GaussRat) -> GaussRat {
    GaussRat::new(x.re.clone(), -x.im.clone())
}

/// Horner evaluation of a coefficient list (constant term first).
pub fn horner(coeffs: &[GaussRat], x: &GaussRat) -> GaussRat {
    coeffs.iter().rev().fold(GaussRat::zero(), |acc, c| acc * x.clone() + c.clone())
}

pub fn eval(f: &RatFunc, x: &GaussRat) -> Option<GaussRat> {
    let d = horner(f.denom().coeffs(), x);
    (!d.is_zero()).then(|| horner(f.numer().coeffs(), x) / d)
}

/// Multiplicity of `t0` as a root, by repeated synthetic division.
pub fn root_order(coeffs: &[GaussRat], t0: &GaussRat) -> Option<i64> {
    let mut c: Vec<GaussRat> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return None;
    }
    let mut k = 0;
    while horner(&c, t0).is_zero() {
        let n = c.len() - 1;
        let mut q = vec![GaussRat::zero(); n];
        q[n - 1] = c[n].clone();
        for i in (1..n).rev() {
            q[i - 1] = c[i].clone() + t0.clone() * q[i].clone();
        }
        c = q;
        k += 1;
    }
    Some(k)
}

/// Order of vanishing of `f` at `t0`; `None` for `f = 0`.
pub fn ord(f: &RatFunc, t0: &GaussRat) -> Option<i64> {
    Some(root_order(f.numer().coeffs(), t0)? - root_order(f.denom().coeffs(), t0).expect("nonzero denominator"))
}

/// Cofactor expansion along the first row.
pub fn det(rows: &[Vec<RatFunc>]) -> RatFunc {
    let n = rows.len();
    if n == 0 {
        return RatFunc::one();
    }
    let mut acc = RatFunc::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RatFunc>> =
            rows[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = rows[0][j].clone() * det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn minors(m: &FamilyMatrix, k: usize) -> Vec<RatFunc> {
    let mut out = Vec::new();
    for rs in subsets(m.nrows(), k) {
        for cs in subsets(m.ncols(), k) {
            let rows: Vec<Vec<RatFunc>> = rs.iter().map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
            out.push(det(&rows));
        }
    }
    out
}

/// Rank over the function field and elementary divisor valuations at `t0`
/// from determinantal divisors: `d_k` is the least order of a `k × k` minor.
pub fn divisors(m: &FamilyMatrix, t0: &GaussRat) -> (usize, Vec<u64>) {
    let mut d = vec![0i64];
    for k in 1..=m.nrows().min(m.ncols()) {
        match minors(m, k).iter().filter_map(|x| ord(x, t0)).min() {
            Some(v) => d.push(v),
            None => break,
        }
    }
    let mut vals: Vec<u64> = d.windows(2).map(|w| (w[1] - w[0]) as u64).collect();
    vals.sort_unstable();
    (d.len() - 1, vals)
}

/// `dim 𝔗_k` for `k = 0..=m`: torsion length of `coker ∂_{k+1}`.
pub fn torsion_dims(c: &BasedChainComplex, t0: &GaussRat) -> Vec<u64> {
    let m = c.top_degree();
    (0..=m).map(|k| if k < m { divisors(c.boundary(k + 1), t0).1.iter().sum() } else { 0 }).collect()
}

pub fn euler(dims: &[u64]) -> i64 {
    dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

/// Sign of `Re(f(t0 + δ) · conj f(t0 - δ))`.
pub fn relative_sign(f: &RatFunc, t0: &GaussRat, delta: &Rat) -> Option<i8> {
    let d = GaussRat::real(delta.clone());
    let p = eval(f, &(t0.clone() + d.clone()))?;
    let q = eval(f, &(t0.clone() - d))?;
    let re = p.re.clone() * q.re.clone() + p.im.clone() * q.im.clone();
    (!re.is_zero()).then(|| if re > Rat::zero() { 1 } else { -1 })
}

pub fn rand_rat(rng: &mut ChaCha8Rng, span: i64) -> Rat {
    Rat::new(rng.gen_range(-span..=span).into(), rng.gen_range(1..=4i64).into())
}

pub fn rand_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    let im = if rng.gen_bool(0.3) { rand_rat(rng, 3) } else { Rat::zero() };
    GaussRat::new(rand_rat(rng, 5), im)
}

pub fn rand_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::new((0..=deg).map(|_| rand_gauss(rng)).collect())
}

pub fn linear(t0: &GaussRat) -> Poly {
    Poly::new(vec![-t0.clone(), GaussRat::one()])
}

/// `(t - t0)^e · p`, with `p` random and possibly zero.
pub fn planted(rng: &mut ChaCha8Rng, t0: &GaussRat, max_e: u32, max_deg: usize) -> RatFunc {
    let e = rng.gen_range(0..=max_e);
    RatFunc::from_poly(linear(t0).pow(e) * rand_poly(rng, max_deg))
}

/// Nonzero rational function with zeros and poles planted at `t0`.
pub fn rand_ratfunc(rng: &mut ChaCha8Rng, t0: &GaussRat) -> RatFunc {
    loop {
        let num = planted(rng, t0, 3, 2);
        let den = planted(rng, t0, 3, 2);
        if let Some(f) = RatFunc::new(num.numer().clone(), den.numer().clone()) {
            if !f.is_zero() {
                return f;
            }
        }
    }
}

/// Matrix over the local ring at `t0`, often rank deficient.
pub fn rand_local_matrix(rng: &mut ChaCha8Rng, t0: &GaussRat) -> FamilyMatrix {
    let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let entry = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.2) { RatFunc::zero() } else { planted(rng, t0, 2, 1) };
    if rng.gen_bool(0.5) {
        let rows = (0..r).map(|_| (0..c).map(|_| entry(rng)).collect()).collect();
        return Matrix::from_rows(rows);
    }
    let inner = rng.gen_range(1..=r.min(c));
    let a: FamilyMatrix = Matrix::from_rows((0..r).map(|_| (0..inner).map(|_| entry(rng)).collect()).collect());
    let b: FamilyMatrix = Matrix::from_rows((0..inner).map(|_| (0..c).map(|_| entry(rng)).collect()).collect());
    &a * &b
}

/// Laurent polynomials in `s` with integer coefficients.
pub type SLaurent = BTreeMap<i64, i64>;

fn s_add(a: &SLaurent, b: &SLaurent, sign: i64) -> SLaurent {
    let mut out = a.clone();
    for (&e, &c) in b {
        *out.entry(e).or_insert(0) += sign * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn s_mul(a: &SLaurent, b: &SLaurent) -> SLaurent {
    let mut out = SLaurent::new();
    for (&e, &c) in a {
        for (&f, &d) in b {
            *out.entry(e + f).or_insert(0) += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn s_det(rows: &[Vec<SLaurent>]) -> SLaurent {
    if rows.is_empty() {
        return SLaurent::from([(0, 1)]);
    }
    let mut acc = SLaurent::new();
    for j in 0..rows.len() {
        let minor: Vec<Vec<SLaurent>> =
            rows[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        acc = s_add(&acc, &s_mul(&rows[0][j], &s_det(&minor)), if j % 2 == 0 { 1 } else { -1 });
    }
    acc
}

/// `∇(z)` coefficients from `det(s V - s⁻¹ Vᵀ)` with `z = s - s⁻¹`.
pub fn conway_oracle(v: &[Vec<i64>]) -> Vec<i64> {
    let n = v.len();
    let rows: Vec<Vec<SLaurent>> = (0..n)
        .map(|i| (0..n).map(|j| s_add(&SLaurent::from([(1, v[i][j])]), &SLaurent::from([(-1, v[j][i])]), -1)).collect())
        .collect();
    let mut rest = s_det(&rows);
    let z = SLaurent::from([(1, 1), (-1, -1)]);
    let mut out = Vec::new();
    while let Some((&k, &c)) = rest.iter().next_back() {
        let k = k as usize;
        if out.len() <= k {
            out.resize(k + 1, 0);
        }
        out[k] = c;
        let mut zk = SLaurent::from([(0, c)]);
        for _ in 0..k {
            zk = s_mul(&zk, &z);
        }
        rest = s_add(&rest, &zk, -1);
    }
    out
}
