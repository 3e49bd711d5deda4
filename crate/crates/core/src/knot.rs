//! Knot groups, the Alexander polynomial through Fox calculus and the torsion
//! engine, Conway normalization, and the Seifert matrix cross-check.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::ComplexError;
use crate::group_ring::{presentation_complex, GroupRingError, RepFamily, Word};
use crate::linalg::Matrix;
use crate::scalar::{GaussRat, Poly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KnotError {
    #[error("relator {0} does not have the conjugation shape x_k = w x_j w^-1")]
    RelatorShape(usize),
    #[error("meridian index {meridian} out of range for {strands} generators")]
    Meridian { meridian: usize, strands: usize },
    #[error("degenerate presentation: torsion undefined")]
    Degenerate,
    #[error("Alexander function is not a Laurent polynomial with integer coefficients")]
    NotLaurent,
    #[error("Alexander polynomial is not symmetric")]
    Asymmetric,
    #[error("Alexander polynomial has value {0} at t = 1, expected ±1")]
    NotUnitAtOne(BigInt),
    #[error("Seifert matrix is not square")]
    SeifertShape,
    #[error(transparent)]
    Presentation(#[from] GroupRingError),
}

/// Laurent polynomial with integer coefficients: `Σ coeffs[i] · x^(low + i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut l = Laurent { low, coeffs };
        l.trim();
        l
    }

    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Laurent::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        Laurent::new(e, vec![c])
    }

    /// The variable `x`.
    pub fn var() -> Self {
        Laurent::from_ints(1, &[1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.low = if self.coeffs.is_empty() { 0 } else { self.low + lead as i64 };
    }

    pub fn low_degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    pub fn high_degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.low;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn shift(&self, by: i64) -> Self {
        Laurent { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    /// `x ↦ x⁻¹`.
    pub fn invert_variable(&self) -> Self {
        match self.high_degree() {
            None => Laurent::zero(),
            Some(h) => Laurent::new(-h, self.coeffs.iter().rev().cloned().collect()),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Laurent::one();
        for _ in 0..e {
            out = out * self.clone();
        }
        out
    }

    fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "{var}")?,
                1 => write!(f, "{mag}{var}")?,
                _ if unit => write!(f, "{var}^{e}")?,
                _ => write!(f, "{mag}{var}^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "t")
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::from_ints(0, &[1])
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let low = self.low.min(rhs.low);
        let high = self.high_degree().unwrap().max(rhs.high_degree().unwrap());
        Laurent::new(low, (low..=high).map(|e| self.coeff(e) + rhs.coeff(e)).collect())
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        self + (-rhs)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent::new(self.low + rhs.low, coeffs)
    }
}

/// `∇(z) = Σ coeffs[k] z^k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConwayPolynomial {
    coeffs: Vec<BigInt>,
}

impl ConwayPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ConwayPolynomial { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        ConwayPolynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `∇(0) = 1` and only even powers of `z`.
    pub fn is_normalized(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_one())
            && self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Substitutes `z = s - s⁻¹`, giving a Laurent polynomial in `s`.
    pub fn in_s(&self) -> Laurent {
        let z = Laurent::from_ints(-1, &[-1, 0, 1]);
        let mut acc = Laurent::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc + z.pow(k as u32) * Laurent::monomial(c.clone(), 0);
        }
        acc
    }
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let as_laurent = Laurent::new(0, self.coeffs.clone());
        let mut ascending = String::new();
        // Conway polynomials read lowest degree first.
        let terms: Vec<_> = as_laurent.terms().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    ascending.push('-');
                }
            } else {
                ascending.push_str(if neg { " - " } else { " + " });
            }
            let body = match (e, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "z".to_string(),
                (1, false) => format!("{mag}z"),
                (_, true) => format!("z^{e}"),
                (_, false) => format!("{mag}z^{e}"),
            };
            ascending.push_str(&body);
        }
        write!(f, "{ascending}")
    }
}

/// Square integer matrix `V` of a Seifert surface.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeifertMatrix {
    entries: Matrix<BigInt>,
}

impl SeifertMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, KnotError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(KnotError::SeifertShape);
        }
        let rows = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        Ok(SeifertMatrix { entries: if n == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) } })
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Matrix<BigInt> {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        SeifertMatrix { entries: self.entries.transpose() }
    }
}

/// Knot group presentation by conjugation relators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KnotPresentation {
    pub name: String,
    pub strands: usize,
    pub wirtinger_relators: Vec<Word>,
    pub meridian: usize,
    pub seifert: Option<SeifertMatrix>,
}

impl KnotPresentation {
    pub fn new(
        name: impl Into<String>,
        strands: usize,
        wirtinger_relators: Vec<Word>,
        meridian: usize,
        seifert: Option<SeifertMatrix>,
    ) -> Result<Self, KnotError> {
        if meridian >= strands {
            return Err(KnotError::Meridian { meridian, strands });
        }
        for (i, r) in wirtinger_relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= strands {
                    return Err(GroupRingError::UnknownGenerator(g).into());
                }
            }
            if !r.is_conjugation_relator() {
                return Err(KnotError::RelatorShape(i));
            }
        }
        Ok(KnotPresentation { name: name.into(), strands, wirtinger_relators, meridian, seifert })
    }

    /// Two-bridge knot `b(p, q)`, `p` odd: `⟨a, b | a w b⁻¹ w⁻¹⟩` with
    /// `w = b^{ε_1} a^{ε_2} b^{ε_3} …` and `ε_i = (-1)^⌊iq/p⌋`.
    pub fn two_bridge(name: impl Into<String>, p: i64, q: i64, seifert: Option<SeifertMatrix>) -> Result<Self, KnotError> {
        let (a, b) = (0usize, 1usize);
        let mut w = Vec::new();
        for i in 1..p {
            let e = if (i * q).div_euclid(p) % 2 == 0 { 1 } else { -1 };
            w.push((if i % 2 == 1 { b } else { a }, e));
        }
        let w = Word::from_powers(&w);
        let rel = Word::generator(a).concat(&w).concat(&Word::generator(b).inverse()).concat(&w.inverse());
        KnotPresentation::new(name, 2, vec![rel], a, seifert)
    }
}

/// Alexander polynomial from the presentation complex with every generator
/// sent to `t`. One relator is dropped when there are at least as many
/// relators as generators (a Wirtinger relator is a consequence of the rest).
/// The torsion is then `(t - 1)/Δ` up to `±t^k`; the result is normalized to
/// `Δ(t) = Δ(1/t)` and `Δ(1) = 1`.
pub fn alexander_from_fox(k: &KnotPresentation) -> Result<Laurent, KnotError> {
    let t = RatFunc::<GaussRat>::t();
    let images = vec![Matrix::from_vec(1, 1, vec![t.clone()]); k.strands];
    let rho = RepFamily::new(1, images)?;
    let mut relators = k.wirtinger_relators.clone();
    if relators.len() >= k.strands {
        relators.truncate(k.strands - 1);
    }
    let c = presentation_complex(k.strands, &relators, &rho)?;
    let tau = match c.torsion() {
        Ok(tau) => tau.value,
        Err(ComplexError::NotAcyclic) => return Err(KnotError::Degenerate),
        Err(e) => return Err(GroupRingError::from(e).into()),
    };
    let delta = (t - RatFunc::one()) / tau;
    normalize_alexander(&laurent_from_ratfunc(&delta)?)
}

fn laurent_from_ratfunc(f: &RatFunc<GaussRat>) -> Result<Laurent, KnotError> {
    let den = f.denom();
    let shift = den.degree().unwrap_or(0);
    if *den != Poly::t().pow(shift as u32) {
        return Err(KnotError::NotLaurent);
    }
    let mut coeffs = Vec::new();
    for c in f.numer().coeffs() {
        if !c.is_real() || !c.re.is_integer() {
            return Err(KnotError::NotLaurent);
        }
        coeffs.push(c.re.to_integer());
    }
    Ok(Laurent::new(-(shift as i64), coeffs))
}

/// Multiplies by the unique `±t^k` making `Δ` symmetric with `Δ(1) = 1`.
pub fn normalize_alexander(delta: &Laurent) -> Result<Laurent, KnotError> {
    let (Some(lo), Some(hi)) = (delta.low_degree(), delta.high_degree()) else {
        return Err(KnotError::NotUnitAtOne(BigInt::zero()));
    };
    if (lo + hi) % 2 != 0 {
        return Err(KnotError::Asymmetric);
    }
    let mut d = delta.shift(-(lo + hi) / 2);
    let at_one = d.eval_one();
    if at_one == BigInt::from(-1) {
        d = -d;
    } else if !at_one.is_one() {
        return Err(KnotError::NotUnitAtOne(at_one));
    }
    if !d.is_symmetric() {
        return Err(KnotError::Asymmetric);
    }
    Ok(d)
}

/// `∇` with `∇(t^{1/2} - t^{-1/2}) = Δ(t)`, sign fixed by `∇(0) = 1`.
pub fn conway_normalize(delta: &Laurent) -> Result<ConwayPolynomial, KnotError> {
    if !delta.is_symmetric() {
        return Err(KnotError::Asymmetric);
    }
    let at_one = delta.eval_one();
    let mut rest = if at_one == BigInt::from(-1) {
        -delta.clone()
    } else if at_one.is_one() {
        delta.clone()
    } else {
        return Err(KnotError::NotUnitAtOne(at_one));
    };
    // z^2 = t - 2 + t⁻¹; peel off the top degree.
    let z2 = Laurent::from_ints(-1, &[1, -2, 1]);
    let top = rest.high_degree().unwrap_or(0).max(0) as usize;
    let mut coeffs = vec![BigInt::zero(); 2 * top + 1];
    for k in (0..=top).rev() {
        let c = rest.coeff(k as i64);
        if !c.is_zero() {
            rest = rest - z2.pow(k as u32) * Laurent::monomial(c.clone(), 0);
            coeffs[2 * k] = c;
        }
    }
    debug_assert!(rest.is_zero());
    Ok(ConwayPolynomial::new(coeffs))
}

/// Converts a Laurent polynomial in `s` to a polynomial in `z = s - s⁻¹`,
/// when it lies in the span of the powers of `z`.
pub fn conway_from_s(f: &Laurent) -> Option<ConwayPolynomial> {
    let z = Laurent::from_ints(-1, &[-1, 0, 1]);
    let mut rest = f.clone();
    let top = rest.high_degree().unwrap_or(0);
    if top < 0 {
        return None;
    }
    let mut coeffs = vec![BigInt::zero(); top as usize + 1];
    for k in (0..=top).rev() {
        let c = rest.coeff(k);
        if !c.is_zero() {
            rest = rest - z.pow(k as u32) * Laurent::monomial(c.clone(), 0);
            coeffs[k as usize] = c;
        }
    }
    rest.is_zero().then(|| ConwayPolynomial::new(coeffs))
}

/// Oracle: `∇(z) = det(s V - s⁻¹ Vᵀ)` with `z = s - s⁻¹`.
pub fn conway_from_seifert(v: &SeifertMatrix) -> ConwayPolynomial {
    let n = v.size();
    let s = Laurent::var();
    let s_inv = Laurent::from_ints(-1, &[1]);
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let a = Laurent::monomial(v.entries.get(i, j).clone(), 0);
            let b = Laurent::monomial(v.entries.get(j, i).clone(), 0);
            m.set(i, j, s.clone() * a - s_inv.clone() * b);
        }
    }
    let det = if n == 0 { Laurent::one() } else { m.det_expansion() };
    conway_from_s(&det).expect("det(sV - s⁻¹Vᵀ) is a polynomial in s - s⁻¹")
}

/// Alexander polynomial recovered from a Conway polynomial.
pub fn alexander_from_conway(c: &ConwayPolynomial) -> Option<Laurent> {
    let in_s = c.in_s();
    // Only even powers of s survive for knots; s² = t.
    if in_s.terms().any(|(e, _)| e % 2 != 0) {
        return None;
    }
    let lo = in_s.low_degree()?;
    let coeffs = in_s.terms().map(|(e, c)| ((e - lo) / 2, c.clone())).collect::<Vec<_>>();
    let len = coeffs.last().map(|(e, _)| *e as usize + 1).unwrap_or(0);
    let mut dense = vec![BigInt::zero(); len];
    for (e, c) in coeffs {
        dense[e.to_usize()?] = c;
    }
    Some(Laurent::new(lo / 2, dense))
}

/// Knots shipped with the crate, with Seifert matrices and expected `∇`.
pub fn bundled_knots() -> Vec<(KnotPresentation, ConwayPolynomial)> {
    let sm = |rows: Vec<Vec<i64>>| Some(SeifertMatrix::new(rows).unwrap());
    let unknot = KnotPresentation::new("unknot", 1, vec![], 0, sm(vec![])).unwrap();
    let trefoil = KnotPresentation::two_bridge("trefoil", 3, 1, sm(vec![vec![-1, 1], vec![0, -1]])).unwrap();
    let figure_eight =
        KnotPresentation::two_bridge("figure-eight", 5, 3, sm(vec![vec![1, 1], vec![0, -1]])).unwrap();
    let five_one = KnotPresentation::two_bridge(
        "5_1",
        5,
        1,
        sm(vec![vec![-1, 1, 0, 0], vec![0, -1, 1, 0], vec![0, 0, -1, 1], vec![0, 0, 0, -1]]),
    )
    .unwrap();
    let five_two = KnotPresentation::two_bridge("5_2", 7, 3, sm(vec![vec![-1, 1], vec![0, -2]])).unwrap();
    vec![
        (unknot, ConwayPolynomial::from_ints(&[1])),
        (trefoil, ConwayPolynomial::from_ints(&[1, 0, 1])),
        (figure_eight, ConwayPolynomial::from_ints(&[1, 0, -1])),
        (five_one, ConwayPolynomial::from_ints(&[1, 0, 3, 0, 1])),
        (five_two, ConwayPolynomial::from_ints(&[1, 0, 2])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> Laurent {
        Laurent::from_ints(low, c)
    }

    #[test]
    fn laurent_basics() {
        let a = lp(-1, &[1, -1, 1]);
        assert!(a.is_symmetric());
        assert_eq!(a.eval_one(), BigInt::from(1));
        assert_eq!(a.to_string(), "t - 1 + t^-1");
        assert_eq!(lp(-1, &[-1, 3, -1]).to_string(), "-t + 3 - t^-1");
        assert_eq!((a.clone() - a).to_string(), "0");
        assert_eq!(lp(0, &[0, 0, 1]).high_degree(), Some(2));
        assert_eq!(lp(0, &[0, 0, 1]).low_degree(), Some(2));
    }

    #[test]
    fn unknot_trefoil_figure_eight() {
        let knots = bundled_knots();
        assert_eq!(alexander_from_fox(&knots[0].0).unwrap(), Laurent::one());
        assert_eq!(alexander_from_fox(&knots[1].0).unwrap(), lp(-1, &[1, -1, 1]));
        assert_eq!(alexander_from_fox(&knots[2].0).unwrap(), lp(-1, &[-1, 3, -1]));
    }

    #[test]
    fn spelled_out_trefoil() {
        // ⟨x, y | x y x y⁻¹ x⁻¹ y⁻¹⟩
        let r = Word::from_powers(&[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)]);
        let k = KnotPresentation::new("trefoil", 2, vec![r], 0, None).unwrap();
        assert_eq!(alexander_from_fox(&k).unwrap(), lp(-1, &[1, -1, 1]));
    }

    #[test]
    fn conway_examples() {
        assert_eq!(conway_normalize(&Laurent::one()).unwrap(), ConwayPolynomial::from_ints(&[1]));
        let c = conway_normalize(&lp(-1, &[1, -1, 1])).unwrap();
        assert_eq!(c, ConwayPolynomial::from_ints(&[1, 0, 1]));
        assert_eq!(c.to_string(), "1 + z^2");
        let c = conway_normalize(&lp(-1, &[-1, 3, -1])).unwrap();
        assert_eq!(c.to_string(), "1 - z^2");
        assert_eq!(conway_normalize(&lp(0, &[1, 1])).unwrap_err(), KnotError::Asymmetric);
    }

    #[test]
    fn seifert_examples() {
        let v = SeifertMatrix::new(vec![]).unwrap();
        assert_eq!(conway_from_seifert(&v), ConwayPolynomial::from_ints(&[1]));
        let v = SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(conway_from_seifert(&v), ConwayPolynomial::from_ints(&[1, 0, 1]));
        let v = SeifertMatrix::new(vec![vec![1, 1], vec![0, -1]]).unwrap();
        assert_eq!(conway_from_seifert(&v), ConwayPolynomial::from_ints(&[1, 0, -1]));
        assert!(SeifertMatrix::new(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn bundled_agree_with_oracle() {
        for (k, expected) in bundled_knots() {
            let fox = conway_normalize(&alexander_from_fox(&k).unwrap()).unwrap();
            let oracle = conway_from_seifert(k.seifert.as_ref().unwrap());
            assert_eq!(fox, expected, "{}", k.name);
            assert_eq!(oracle, expected, "{}", k.name);
            assert_eq!(conway_from_seifert(&k.seifert.as_ref().unwrap().transpose()), expected);
            assert_eq!(alexander_from_conway(&expected), Some(alexander_from_fox(&k).unwrap()));
        }
    }

    #[test]
    fn bad_presentations() {
        let r = Word::from_powers(&[(0, 2), (1, 1)]);
        assert_eq!(KnotPresentation::new("x", 2, vec![r], 0, None).unwrap_err(), KnotError::RelatorShape(0));
        assert!(matches!(KnotPresentation::new("x", 1, vec![], 3, None), Err(KnotError::Meridian { .. })));
        // Two free generators: the complex is not acyclic.
        let free = KnotPresentation::new("free", 2, vec![], 0, None).unwrap();
        assert_eq!(alexander_from_fox(&free).unwrap_err(), KnotError::Degenerate);
    }
}
