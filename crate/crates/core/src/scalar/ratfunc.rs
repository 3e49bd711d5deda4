use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Conjugate, Field, Poly};

/// Element of the rational function field `K(t)`.
///
/// Stored reduced: `gcd(num, den) = 1` and `den` monic. The zero function is
/// `0/1`. With this normal form, structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFunc<K> {
    /// Builds `num/den` in normal form. Returns `None` when `den` is zero.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduce(num, den))
    }

    fn reduce(num: Poly<K>, den: Poly<K>) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_constant() {
            let inv = den.leading().unwrap().try_inv().unwrap();
            return RatFunc { num: num.scale(&inv), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let lc_inv = den.leading().unwrap().try_inv().unwrap();
        RatFunc { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The parameter `t`.
    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    pub fn numer(&self) -> &Poly<K> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value at `x`; `None` at a pole.
    pub fn eval(&self, x: &K) -> Option<K> {
        let d = self.den.eval(x);
        let inv = d.try_inv()?;
        Some(self.num.eval(x) * inv)
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.try_inv().expect("negative power of zero") } else { self.clone() };
        let mut out = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            out = out * base.clone();
        }
        out
    }

    /// Substitutes the rational function `inner` for `t`.
    pub fn compose(&self, inner: &Self) -> Self {
        let eval = |p: &Poly<K>| {
            let mut acc = RatFunc::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc * inner.clone() + RatFunc::constant(c.clone());
            }
            acc
        };
        eval(&self.num) / eval(&self.den)
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> RatFunc<L> {
        RatFunc::new(self.num.map(&f), self.den.map(&f)).expect("coefficient map sends denominator to zero")
    }
}

impl<K: Field + Conjugate> Conjugate for RatFunc<K> {
    fn conj(&self) -> Self {
        // Conjugation is a field automorphism, so the image is still reduced and monic.
        RatFunc { num: self.num.conj(), den: self.den.conj() }
    }
}

impl<K: Field> Zero for RatFunc<K> {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<K: Field> One for RatFunc<K> {
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
}

impl<K: Field> Add for RatFunc<K> {
    type Output = RatFunc<K>;
    fn add(self, rhs: RatFunc<K>) -> RatFunc<K> {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            let den = self.den;
            if den.is_one() {
                return RatFunc { num: self.num + rhs.num, den };
            }
            return RatFunc::reduce(self.num + rhs.num, den);
        }
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        RatFunc::reduce(num, self.den * rhs.den)
    }
}

impl<K: Field> Neg for RatFunc<K> {
    type Output = RatFunc<K>;
    fn neg(self) -> RatFunc<K> {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl<K: Field> Sub for RatFunc<K> {
    type Output = RatFunc<K>;
    fn sub(self, rhs: RatFunc<K>) -> RatFunc<K> {
        self + (-rhs)
    }
}

impl<K: Field> Mul for RatFunc<K> {
    type Output = RatFunc<K>;
    fn mul(self, rhs: RatFunc<K>) -> RatFunc<K> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: self.num * rhs.num, den: self.den };
        }
        // Cross-cancel first so the products stay small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = if g1.is_one() { (self.num, rhs.den) } else { (self.num.div_exact(&g1), rhs.den.div_exact(&g1)) };
        let (c, b) = if g2.is_one() { (rhs.num, self.den) } else { (rhs.num.div_exact(&g2), self.den.div_exact(&g2)) };
        let num = a * c;
        let den = b * d;
        let lc_inv = den.leading().unwrap().try_inv().unwrap();
        if lc_inv.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
        }
    }
}

impl<K: Field> Div for RatFunc<K> {
    type Output = RatFunc<K>;
    fn div(self, rhs: RatFunc<K>) -> RatFunc<K> {
        self * rhs.try_inv().expect("division by the zero rational function")
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lc_inv = self.num.leading().unwrap().try_inv().unwrap();
        Some(RatFunc { num: self.den.scale(&lc_inv), den: self.num.scale(&lc_inv) })
    }
}
