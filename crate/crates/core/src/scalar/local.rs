//! Localisation of `K(t)` at a point: valuations, unit parts, germs.

use num_traits::{One, Zero};

use super::{Conjugate, Field, GaussRat, Poly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValuationError {
    #[error("valuation of zero undefined")]
    Zero,
    #[error("value has a pole at the center; not an element of the local ring")]
    NotLocal,
}

/// Order of zero (positive) or pole (negative) of `f` at `t0`.
pub fn valuation<K: Field>(f: &RatFunc<K>, t0: &K) -> Result<i64, ValuationError> {
    if f.is_zero() {
        return Err(ValuationError::Zero);
    }
    let (zn, _) = f.numer().root_multiplicity(t0);
    let (zd, _) = f.denom().root_multiplicity(t0);
    Ok(zn as i64 - zd as i64)
}

/// Splits `f = (t - t0)^ν · u` with `u(t0)` finite and nonzero.
pub fn normalize_at<K: Field>(f: &RatFunc<K>, t0: &K) -> Result<(i64, RatFunc<K>), ValuationError> {
    if f.is_zero() {
        return Err(ValuationError::Zero);
    }
    let (zn, num) = f.numer().root_multiplicity(t0);
    let (zd, den) = f.denom().root_multiplicity(t0);
    let unit = RatFunc::new(num, den).expect("cofactor of a nonzero denominator");
    Ok((zn as i64 - zd as i64, unit))
}

/// The Cayley family `z(t) = (1 + i t)/(1 - i t)`; unit modulus for every real `t`.
pub fn cayley() -> RatFunc<GaussRat> {
    cayley_of(&RatFunc::t())
}

/// `(1 + i p)/(1 - i p)`. Unit modulus wherever `p` is real.
pub fn cayley_of(p: &RatFunc<GaussRat>) -> RatFunc<GaussRat> {
    let ip = RatFunc::constant(GaussRat::i()) * p.clone();
    (RatFunc::one() + ip.clone()) / (RatFunc::one() - ip)
}

/// Coefficientwise conjugation, `t` held fixed as a real parameter.
pub fn conj_family<K: Field + Conjugate>(f: &RatFunc<K>) -> RatFunc<K> {
    f.conj()
}

/// Element of the local ring `𝒪_{t0}`: a rational function regular at `t0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalGerm<K> {
    value: RatFunc<K>,
    center: K,
}

impl<K: Field> LocalGerm<K> {
    pub fn new(value: RatFunc<K>, center: K) -> Result<Self, ValuationError> {
        if value.denom().eval(&center).is_zero() {
            return Err(ValuationError::NotLocal);
        }
        Ok(LocalGerm { value, center })
    }

    /// The uniformiser `t - t0`.
    pub fn uniformizer(center: K) -> Self {
        let value = RatFunc::from_poly(Poly::linear_root(center.clone()));
        LocalGerm { value, center }
    }

    pub fn value(&self) -> &RatFunc<K> {
        &self.value
    }

    pub fn center(&self) -> &K {
        &self.center
    }

    /// Valuation in `𝒪`; `None` for zero (infinite valuation).
    pub fn valuation(&self) -> Option<u64> {
        valuation(&self.value, &self.center).ok().map(|v| v as u64)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Image in the residue field `𝒪/𝔪 = K`.
    pub fn residue(&self) -> K {
        self.value.eval(&self.center).expect("germ is regular at its center")
    }
}
