use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Conjugate, Field};

/// Univariate polynomial in `t`, coefficients in ascending degree. The
/// coefficient vector never has a trailing zero, so the zero polynomial is
/// the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: K) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Poly::new(vec![K::zero(), K::one()])
    }

    /// `t - a`.
    pub fn linear_root(a: K) -> Self {
        Poly::new(vec![-a, K::one()])
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &K) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divides through by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.try_inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.leading().unwrap().try_inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let prev = std::mem::replace(&mut rem[k + j], K::zero());
                rem[k + j] = prev - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient; panics (debug) if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Division by `(t - a)` via Horner; returns quotient and the value at `a`.
    pub fn deflate(&self, a: &K) -> (Self, K) {
        if self.coeffs.is_empty() {
            return (Poly::zero(), K::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![K::zero(); n - 1];
        let mut acc = K::zero();
        for k in (0..n).rev() {
            acc = acc * a.clone() + self.coeffs[k].clone();
            if k > 0 {
                q[k - 1] = acc.clone();
            }
        }
        (Poly::new(q), acc)
    }

    /// Multiplicity of `a` as a root, together with the cofactor. Panics on zero.
    pub fn root_multiplicity(&self, a: &K) -> (usize, Self) {
        assert!(!self.is_zero(), "multiplicity of a root of the zero polynomial");
        let mut p = self.clone();
        let mut mult = 0;
        loop {
            let (q, r) = p.deflate(a);
            if !r.is_zero() {
                return (mult, p);
            }
            mult += 1;
            p = q;
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out * self.clone();
        }
        out
    }

    /// Composition `self(inner(t))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * inner.clone() + Poly::constant(c.clone());
        }
        acc
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<K: Field + Conjugate> Conjugate for Poly<K> {
    fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }
}

impl<K: Field> Zero for Poly<K> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<K: Field> One for Poly<K> {
    fn one() -> Self {
        Poly { coeffs: vec![K::one()] }
    }
}

impl<K: Field> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Poly<K>) -> Poly<K> {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        for (k, c) in short.coeffs.into_iter().enumerate() {
            let prev = std::mem::replace(&mut long.coeffs[k], K::zero());
            long.coeffs[k] = prev + c;
        }
        Poly::new(long.coeffs)
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<K: Field> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Poly<K>) -> Poly<K> {
        self + (-rhs)
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Poly<K>) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prev = std::mem::replace(&mut out[i + j], K::zero());
                out[i + j] = prev + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn p(c: &[i64]) -> Poly<GaussRat> {
        Poly::new(c.iter().map(|&x| GaussRat::from(x)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[0]).is_zero());
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, -2, 0, 5, 1]);
        let b = p(&[1, 2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q * b.clone() + r.clone(), a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let common = p(&[-1, 1]); // t - 1
        let a = common.clone() * p(&[2, 1]);
        let b = common.clone() * p(&[5, 0, 3]);
        assert_eq!(a.gcd(&b), common);
        assert_eq!(p(&[2]).gcd(&p(&[0, 3])), Poly::one());
    }

    #[test]
    fn multiplicity_and_deflation() {
        let a = p(&[-1, 1]).pow(3) * p(&[1, 1]);
        let (m, cof) = a.root_multiplicity(&GaussRat::from(1));
        assert_eq!(m, 3);
        assert_eq!(cof, p(&[1, 1]));
        assert_eq!(a.eval(&GaussRat::from(2)), GaussRat::from(3));
    }

    #[test]
    fn compose_shift() {
        // (t+1)^2 composed with t-1 is t^2
        let a = p(&[1, 2, 1]);
        assert_eq!(a.compose(&p(&[-1, 1])), p(&[0, 0, 1]));
    }
}
