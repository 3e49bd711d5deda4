//! Free-group words, integral group rings, Fox calculus, and the twisted
//! chain complex of a group presentation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::complex::{ChainComplex, ComplexError};
use crate::linalg::Matrix;
use crate::scalar::{Conjugate, Field};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupRingError {
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("image of generator {0} is not an invertible matrix of the family rank")]
    SingularImage(usize),
    #[error("image of generator {0} is not unitary")]
    NotUnitary(usize),
    #[error("image of generator {0} does not have determinant 1")]
    NotSpecialUnitary(usize),
    #[error("family has {got} images but the presentation has {expected} generators")]
    GeneratorCount { expected: usize, got: usize },
    #[error("relator {0} is not sent to the identity by the family")]
    RelatorNotSatisfied(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Letter `x_gen^exp` with `exp = ±1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

/// Freely reduced word in the free group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(gen: usize) -> Self {
        Word { letters: vec![Letter { gen, exp: 1 }] }
    }

    /// Builds a word from `(generator, exponent)` pairs; exponents may be any
    /// integer and are expanded. The result is freely reduced.
    pub fn from_powers(powers: &[(usize, i32)]) -> Self {
        let mut w = Word::identity();
        for &(gen, e) in powers {
            let exp = if e < 0 { -1 } else { 1 };
            for _ in 0..e.unsigned_abs() {
                w.push(Letter { gen, exp });
            }
        }
        w
    }

    fn push(&mut self, l: Letter) {
        match self.letters.last() {
            Some(last) if last.gen == l.gen && last.exp == -l.exp => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|l| Letter { gen: l.gen, exp: -l.exp }).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Whether the word is, up to cyclic rotation and inversion, of the form
    /// `x_k · w · x_j⁻¹ · w⁻¹`, i.e. encodes a conjugation relation `x_k = w x_j w⁻¹`.
    pub fn is_conjugation_relator(&self) -> bool {
        let n = self.letters.len();
        if n < 2 || n % 2 != 0 {
            return false;
        }
        let half = (n - 2) / 2;
        let candidates = [self.letters.clone(), self.inverse().letters];
        candidates.iter().any(|letters| {
            (0..n).any(|shift| {
                let rot: Vec<Letter> = letters[shift..].iter().chain(&letters[..shift]).copied().collect();
                let w = &rot[1..1 + half];
                let tail = &rot[2 + half..];
                rot[0].exp == 1
                    && rot[1 + half].exp == -1
                    && tail.iter().zip(w.iter().rev()).all(|(a, b)| a.gen == b.gen && a.exp == -b.exp)
            })
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.exp == 1 { format!("x{}", l.gen) } else { format!("x{}^-1", l.gen) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Element of the integral group ring of the free group.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupRingElem {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        GroupRingElem::default()
    }

    pub fn one() -> Self {
        GroupRingElem::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        GroupRingElem::monomial(w, 1)
    }

    pub fn monomial(w: Word, coeff: i64) -> Self {
        let mut e = GroupRingElem::zero();
        e.add_term(w, coeff);
        e
    }

    fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        let total = self.terms.get(&w).copied().unwrap_or(0) + c;
        if total == 0 {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, total);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients (the augmentation).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Add for &GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        for (w, &c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        GroupRingElem { terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect() }
    }
}

impl Sub for &GroupRingElem {
    type Output = GroupRingElem;
    fn sub(self, rhs: &GroupRingElem) -> GroupRingElem {
        self + &(-rhs)
    }
}

impl Mul for &GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (u, &a) in &self.terms {
            for (v, &b) in &rhs.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

/// Fox derivative `∂w/∂x_gen`, determined by `∂x/∂x = 1`, `∂y/∂x = 0` and
/// `∂(uv)/∂x = ∂u/∂x + u·∂v/∂x`.
pub fn fox_derivative(w: &Word, gen: usize) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l.gen == gen {
            if l.exp == 1 {
                out.add_term(prefix.clone(), 1);
            } else {
                // ∂(x⁻¹)/∂x = -x⁻¹
                out.add_term(prefix.concat(&Word { letters: vec![l] }), -1);
            }
        }
        prefix.push(l);
    }
    out
}

/// Assignment of invertible matrices to the generators of a free group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepFamily<K> {
    rank: usize,
    images: Vec<Matrix<K>>,
    inverses: Vec<Matrix<K>>,
    unitary: bool,
    special: bool,
    center_hint: Option<K>,
}

impl<K: Field + Conjugate> RepFamily<K> {
    pub fn new(rank: usize, images: Vec<Matrix<K>>) -> Result<Self, GroupRingError> {
        let mut inverses = Vec::with_capacity(images.len());
        for (g, m) in images.iter().enumerate() {
            if m.nrows() != rank || m.ncols() != rank {
                return Err(GroupRingError::SingularImage(g));
            }
            inverses.push(m.inverse().ok_or(GroupRingError::SingularImage(g))?);
        }
        Ok(RepFamily { rank, images, inverses, unitary: false, special: false, center_hint: None })
    }

    /// Marks the family unitary after checking `A·A^† = I` for every image.
    pub fn with_unitary(mut self) -> Result<Self, GroupRingError> {
        let id = Matrix::identity(self.rank);
        for (g, m) in self.images.iter().enumerate() {
            if &(m * &m.adjoint()) != &id {
                return Err(GroupRingError::NotUnitary(g));
            }
        }
        self.unitary = true;
        Ok(self)
    }

    /// Marks the family special after checking `det A = 1` for every image.
    pub fn with_special(mut self) -> Result<Self, GroupRingError> {
        for (g, m) in self.images.iter().enumerate() {
            if !m.det().is_one() {
                return Err(GroupRingError::NotSpecialUnitary(g));
            }
        }
        self.special = true;
        Ok(self)
    }

    pub fn with_center_hint(mut self, t0: K) -> Self {
        self.center_hint = Some(t0);
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, gen: usize) -> Option<&Matrix<K>> {
        self.images.get(gen)
    }

    pub fn images(&self) -> &[Matrix<K>] {
        &self.images
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn is_special(&self) -> bool {
        self.special
    }

    pub fn center_hint(&self) -> Option<&K> {
        self.center_hint.as_ref()
    }

    /// Image of a single word.
    pub fn word_image(&self, w: &Word) -> Result<Matrix<K>, GroupRingError> {
        let mut acc = Matrix::identity(self.rank);
        for l in w.letters() {
            let m = if l.exp == 1 { self.images.get(l.gen) } else { self.inverses.get(l.gen) };
            let m = m.ok_or(GroupRingError::UnknownGenerator(l.gen))?;
            acc = &acc * m;
        }
        Ok(acc)
    }
}

/// Extends the family to a ring homomorphism from the group ring to matrices.
pub fn specialize<K: Field + Conjugate>(e: &GroupRingElem, rho: &RepFamily<K>) -> Result<Matrix<K>, GroupRingError> {
    let mut acc = Matrix::zeros(rho.rank, rho.rank);
    for (w, c) in e.terms() {
        let m = rho.word_image(w)?;
        let coeff = int_to_field::<K>(c);
        acc = &acc + &m.scale(&coeff);
    }
    Ok(acc)
}

fn int_to_field<K: Field>(c: i64) -> K {
    let mut out = K::zero();
    let unit = if c < 0 { -K::one() } else { K::one() };
    // Coefficients are small in practice; binary expansion keeps this cheap anyway.
    let mut base = unit;
    let mut n = c.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            out = out + base.clone();
        }
        base = base.clone() + base;
        n >>= 1;
    }
    out
}

/// Twisted cellular chain complex of the presentation 2-complex.
///
/// Ranks are `rank(ρ)` in degree 0, `#generators·rank(ρ)` in degree 1 and
/// `#relators·rank(ρ)` in degree 2, with bases ordered cell-major then
/// bundle coordinate. Chains are twisted on the right, so in column
/// convention the blocks are transposes:
/// `∂_1` has block `j` equal to `(ρ(x_j) - I)ᵀ` and `∂_2` has block `(j, i)`
/// equal to `ρ(∂r_i/∂x_j)ᵀ`. The Fox fundamental identity then gives `∂_1∂_2 = 0`.
pub fn presentation_complex<K: Field + Conjugate>(
    generators: usize,
    relators: &[Word],
    rho: &RepFamily<K>,
) -> Result<ChainComplex<K>, GroupRingError> {
    if generators == 0 {
        return Err(GroupRingError::NoGenerators);
    }
    if rho.generators() != generators {
        return Err(GroupRingError::GeneratorCount { expected: generators, got: rho.generators() });
    }
    let n = rho.rank();
    let id = Matrix::identity(n);
    for (i, r) in relators.iter().enumerate() {
        if let Some(g) = r.max_generator() {
            if g >= generators {
                return Err(GroupRingError::UnknownGenerator(g));
            }
        }
        if rho.word_image(r)? != id {
            return Err(GroupRingError::RelatorNotSatisfied(i));
        }
    }
    let mut d1 = Matrix::zeros(n, generators * n);
    for j in 0..generators {
        let block = (&rho.images[j] - &id).transpose();
        put_block(&mut d1, 0, j * n, &block);
    }
    let mut d2 = Matrix::zeros(generators * n, relators.len() * n);
    for (i, r) in relators.iter().enumerate() {
        for j in 0..generators {
            let block = specialize(&fox_derivative(r, j), rho)?.transpose();
            put_block(&mut d2, j * n, i * n, &block);
        }
    }
    let ranks = vec![n, generators * n, relators.len() * n];
    Ok(ChainComplex::new(ranks, vec![d1, d2])?)
}

fn put_block<K: Field>(target: &mut Matrix<K>, row: usize, col: usize, block: &Matrix<K>) {
    for i in 0..block.nrows() {
        for j in 0..block.ncols() {
            target.set(row + i, col + j, block.get(i, j).clone());
        }
    }
}
