use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Conjugate, Field, RationalField};

/// Element `re + im·i` of the Gaussian rationals ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    /// `p/q` as a real Gaussian rational. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        GaussRat::real(BigRational::new(p.into(), q.into()))
    }

    pub fn i() -> Self {
        GaussRat::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Squared modulus `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::from_ints(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::from_ints(1, 0)
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(self.re * rhs.re);
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussRat::new(re, im)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: GaussRat) -> GaussRat {
        let inv = rhs.try_inv().expect("division by zero in GaussRat");
        self * inv
    }
}

impl Field for GaussRat {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussRat::real(self.re.recip()));
        }
        let n = self.norm();
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }
}

impl Conjugate for GaussRat {
    fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }
}

impl RationalField for GaussRat {
    fn from_rational(q: BigRational) -> Self {
        GaussRat::real(q)
    }
}

impl From<BigRational> for GaussRat {
    fn from(q: BigRational) -> Self {
        GaussRat::real(q)
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_ints(n, 0)
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |q: &BigRational| -> String {
            if q.is_one() {
                "i".to_string()
            } else if *q == -BigRational::one() {
                "-i".to_string()
            } else {
                format!("{}i", fmt_rational(q))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", imag(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}{}", fmt_rational(&self.re), imag(&self.im))
                } else {
                    write!(f, "{}+{}", fmt_rational(&self.re), imag(&self.im))
                }
            }
        }
    }
}

/// Error from parsing a scalar literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar literal `{literal}`: {reason}")]
pub struct ScalarParseError {
    pub literal: String,
    pub reason: &'static str,
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, &'static str> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| "bad integer")?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err("signed denominator");
            }
            d.parse().map_err(|_| "bad denominator")?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err("zero denominator");
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for GaussRat {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ScalarParseError { literal: s.to_string(), reason };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        // At most one sign past the first character separates the real and imaginary terms.
        let split = compact
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .collect::<Vec<_>>();
        let terms: Vec<&str> = match split.as_slice() {
            [] => vec![&compact],
            [i] => vec![&compact[..*i], &compact[*i..]],
            _ => return Err(err("too many terms")),
        };
        let mut out = GaussRat::zero();
        let mut seen_re = false;
        let mut seen_im = false;
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(term);
            if let Some(coeff) = term.strip_suffix('i') {
                if seen_im {
                    return Err(err("two imaginary terms"));
                }
                seen_im = true;
                let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
                out.im = match coeff {
                    "" => BigRational::one(),
                    "-" => -BigRational::one(),
                    c => parse_rational(c).map_err(err)?,
                };
            } else {
                if seen_re {
                    return Err(err("two real terms"));
                }
                seen_re = true;
                out.re = parse_rational(term).map_err(err)?;
            }
        }
        Ok(out)
    }
}
