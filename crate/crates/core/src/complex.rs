//! Based finite chain complexes and their torsion.
//!
//! # Torsion convention `FT-cal-1`
//!
//! For an acyclic complex `C_m → … → C_0` with ordered bases `c_k`, pick for
//! each degree a subset `I_k` of basis vectors whose images under `∂_k` form a
//! basis of `B_{k-1}`, and let `I'_k` be its complement. The bracket
//!
//! ```text
//! [∂b_{k+1}, b_k / c_k] = sgn(I'_k ++ I_k) · det ∂_{k+1}[I'_k, I_{k+1}]
//! ```
//!
//! is the determinant of the change of basis from `c_k` to the concatenation of
//! `∂_{k+1}(e_j), j ∈ I_{k+1}` and `e_j, j ∈ I_k`. The torsion is
//!
//! ```text
//! τ(C) = ∏_k [∂b_{k+1}, b_k / c_k]^{(-1)^k}
//! ```
//!
//! This value does not depend on the chosen subsets, including its sign. The
//! exponent signs are fixed so that a single boundary `C_1 → C_0` contributes
//! its determinant, which makes the order of `τ` at a point equal the
//! alternating sum `Σ (-1)^i length(H_i)` of the local homology.

use crate::linalg::{permutation_sign, Matrix, PivotOrder};
use crate::scalar::{Conjugate, Field, RatFunc};

/// Identifier of the frozen sign/inversion convention used by [`ChainComplex::torsion`].
pub const CONVENTION_TAG: &str = "FT-cal-1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("complex must have at least one degree")]
    Empty,
    #[error("expected {expected} boundary matrices, got {got}")]
    BoundaryCount { expected: usize, got: usize },
    #[error("boundary in degree {degree} has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape { degree: usize, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("boundary composition d{lower}∘d{upper} is not zero")]
    NotAChainComplex { lower: usize, upper: usize },
    #[error("torsion undefined: complex not generically acyclic")]
    NotAcyclic,
    #[error("duality pairing: {0}")]
    Duality(String),
    #[error("basis change in degree {degree} is not invertible")]
    SingularBasisChange { degree: usize },
}

/// Finite free chain complex with ordered bases. `ranks[k]` is the rank of
/// `C_k`; `boundary(k)` is the matrix of `∂_k: C_k → C_{k-1}` in column
/// convention (`ranks[k-1]` rows, `ranks[k]` columns).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainComplex<K> {
    ranks: Vec<usize>,
    boundaries: Vec<Matrix<K>>,
}

/// Torsion value tagged with its convention.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsionValue<K> {
    pub value: K,
    pub convention_tag: &'static str,
}

impl<K: Field> ChainComplex<K> {
    /// Validates shapes and `∂∘∂ = 0`. `boundaries[k-1]` is `∂_k`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Matrix<K>>) -> Result<Self, ComplexError> {
        let c = Self::new_unchecked(ranks, boundaries)?;
        for k in 1..c.top_degree() {
            if !(c.boundary(k) * c.boundary(k + 1)).is_zero() {
                return Err(ComplexError::NotAChainComplex { lower: k, upper: k + 1 });
            }
        }
        Ok(c)
    }

    /// Validates shapes only.
    fn new_unchecked(ranks: Vec<usize>, boundaries: Vec<Matrix<K>>) -> Result<Self, ComplexError> {
        if ranks.is_empty() {
            return Err(ComplexError::Empty);
        }
        if boundaries.len() != ranks.len() - 1 {
            return Err(ComplexError::BoundaryCount { expected: ranks.len() - 1, got: boundaries.len() });
        }
        for (i, d) in boundaries.iter().enumerate() {
            let k = i + 1;
            if d.nrows() != ranks[k - 1] || d.ncols() != ranks[k] {
                return Err(ComplexError::Shape {
                    degree: k,
                    rows: d.nrows(),
                    cols: d.ncols(),
                    want_rows: ranks[k - 1],
                    want_cols: ranks[k],
                });
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// Complex with all boundaries zero.
    pub fn zero(ranks: Vec<usize>) -> Self {
        let boundaries = (1..ranks.len()).map(|k| Matrix::zeros(ranks[k - 1], ranks[k])).collect();
        ChainComplex { ranks, boundaries }
    }

    /// `0 → C_{lo+len} → … → C_lo → 0` placed inside a complex of top degree `top`,
    /// where `blocks[j]` is `∂_{lo+j+1}`.
    pub fn placed(top: usize, lo: usize, blocks: Vec<Matrix<K>>) -> Result<Self, ComplexError> {
        let mut ranks = vec![0; top + 1];
        if blocks.is_empty() || lo + blocks.len() > top {
            return Err(ComplexError::BoundaryCount { expected: top, got: lo + blocks.len() });
        }
        ranks[lo] = blocks[0].nrows();
        for (j, b) in blocks.iter().enumerate() {
            ranks[lo + j + 1] = b.ncols();
        }
        let mut boundaries: Vec<Matrix<K>> = (1..=top).map(|k| Matrix::zeros(ranks[k - 1], ranks[k])).collect();
        for (j, b) in blocks.into_iter().enumerate() {
            boundaries[lo + j] = b;
        }
        Self::new(ranks, boundaries)
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `∂_k` for `1 ≤ k ≤ top_degree`.
    pub fn boundary(&self, k: usize) -> &Matrix<K> {
        &self.boundaries[k - 1]
    }

    pub fn boundaries(&self) -> &[Matrix<K>] {
        &self.boundaries
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// Ranks of `∂_1 … ∂_m` over the field.
    pub fn boundary_ranks(&self) -> Vec<usize> {
        self.boundaries.iter().map(|d| d.rank()).collect()
    }

    /// Dimensions of `H_k` over the field.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let r = self.boundary_ranks();
        let rank_of = |k: usize| if k == 0 || k > r.len() { 0 } else { r[k - 1] };
        (0..self.ranks.len()).map(|k| self.ranks[k] - rank_of(k) - rank_of(k + 1)).collect()
    }

    /// Exactness over the coefficient field. For a family complex over `K(t)`
    /// this is acyclicity at all but finitely many parameter values.
    pub fn is_generically_acyclic(&self) -> bool {
        self.betti_numbers().iter().all(|&b| b == 0)
    }

    /// Torsion under convention `FT-cal-1`, rows picked lowest-index first.
    pub fn torsion(&self) -> Result<TorsionValue<K>, ComplexError> {
        self.torsion_with(PivotOrder::LowestFirst)
    }

    /// Torsion with an explicit row-selection order. The result is the same
    /// for every order; the parameter exists to check exactly that.
    pub fn torsion_with(&self, order: PivotOrder) -> Result<TorsionValue<K>, ComplexError> {
        let m = self.top_degree();
        let mut value = K::one();
        // Columns of ∂_k used to span B_{k-1}. In the top degree this is everything.
        let mut cols: Vec<usize> = (0..self.ranks[m]).collect();
        for k in (1..=m).rev() {
            let d = self.boundary(k);
            let all_rows: Vec<usize> = (0..d.nrows()).collect();
            let a = d.submatrix(&all_rows, &cols);
            let rows = a.independent_rows(order);
            if rows.len() < cols.len() {
                return Err(ComplexError::NotAcyclic);
            }
            let rest: Vec<usize> = (0..d.nrows()).filter(|i| rows.binary_search(i).is_err()).collect();
            let mut seq = rows.clone();
            seq.extend(&rest);
            let mut bracket = a.submatrix(&rows, &(0..cols.len()).collect::<Vec<_>>()).det();
            if permutation_sign(&seq) < 0 {
                bracket = -bracket;
            }
            // Exponent (-1)^(k-1) for the bracket living in degree k-1.
            value = if (k - 1) % 2 == 0 { value * bracket } else { value / bracket };
            cols = rest;
        }
        if !cols.is_empty() {
            return Err(ComplexError::NotAcyclic);
        }
        Ok(TorsionValue { value, convention_tag: CONVENTION_TAG })
    }

    /// Blockwise sum; the shorter complex is padded with zero ranks. Bases are
    /// ordered with the `self` block first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let top = self.top_degree().max(other.top_degree());
        let a = self.padded(top);
        let b = other.padded(top);
        let ranks = a.ranks.iter().zip(&b.ranks).map(|(x, y)| x + y).collect();
        let boundaries = a.boundaries.iter().zip(&b.boundaries).map(|(x, y)| x.block_diag(y)).collect();
        ChainComplex { ranks, boundaries }
    }

    /// Same complex with zero modules appended up to degree `top`.
    pub fn padded(&self, top: usize) -> Self {
        let mut ranks = self.ranks.clone();
        let mut boundaries = self.boundaries.clone();
        while ranks.len() <= top {
            let k = ranks.len();
            boundaries.push(Matrix::zeros(ranks[k - 1], 0));
            ranks.push(0);
        }
        ChainComplex { ranks, boundaries }
    }

    /// Image under the chain isomorphism with components `g[k]: C_k → C'_k`,
    /// i.e. `∂'_k = g_{k-1} ∂_k g_k⁻¹`.
    pub fn change_basis(&self, g: &[Matrix<K>]) -> Result<Self, ComplexError> {
        let mut inverses = Vec::with_capacity(g.len());
        for (k, gk) in g.iter().enumerate() {
            if gk.nrows() != self.rank(k) {
                return Err(ComplexError::SingularBasisChange { degree: k });
            }
            inverses.push(gk.inverse().ok_or(ComplexError::SingularBasisChange { degree: k })?);
        }
        let boundaries =
            (1..=self.top_degree()).map(|k| &(&g[k - 1] * self.boundary(k)) * &inverses[k]).collect();
        Self::new_unchecked(self.ranks.clone(), boundaries)
    }
}

impl<K: Field + Conjugate> ChainComplex<K> {
    /// Entrywise conjugation of every boundary.
    pub fn conjugate_complex(&self) -> Self {
        ChainComplex { ranks: self.ranks.clone(), boundaries: self.boundaries.iter().map(|d| d.conj()).collect() }
    }

    /// Hermitian dual: `D_k = C_{m-k}`, `∂^D_k = (-1)^{k+1} (∂_{m-k+1})^†`.
    /// For odd `m` the dual of the dual is the original complex.
    pub fn dual_complex(&self) -> Self {
        let m = self.top_degree();
        let ranks: Vec<usize> = (0..=m).map(|k| self.ranks[m - k]).collect();
        let boundaries = (1..=m)
            .map(|k| {
                let adj = self.boundary(m - k + 1).adjoint();
                if k % 2 == 1 {
                    adj
                } else {
                    -&adj
                }
            })
            .collect();
        ChainComplex { ranks, boundaries }
    }
}

impl<F: Field> ChainComplex<RatFunc<F>> {
    /// Complex of the family at the parameter value `t`; `None` at a pole of any entry.
    pub fn specialize_at(&self, t: &F) -> Option<ChainComplex<F>> {
        let mut boundaries = Vec::with_capacity(self.boundaries.len());
        for d in &self.boundaries {
            let mut data = Vec::with_capacity(d.nrows() * d.ncols());
            for e in d.entries() {
                data.push(e.eval(t)?);
            }
            boundaries.push(Matrix::from_vec(d.nrows(), d.ncols(), data));
        }
        Some(ChainComplex { ranks: self.ranks.clone(), boundaries })
    }
}

/// Chain-level duality: maps `P_k: C_k → (dual C)_k = C_{m-k}^*` forming a
/// chain map from the complex to its [Hermitian dual](ChainComplex::dual_complex).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualityPairing<K> {
    pub maps: Vec<Matrix<K>>,
}

impl<K: Field + Conjugate> DualityPairing<K> {
    /// Checks shapes and the chain-map identities `P_{k-1} ∂_k = ∂^D_k P_k`.
    pub fn validate(&self, c: &ChainComplex<K>) -> Result<(), ComplexError> {
        let m = c.top_degree();
        if self.maps.len() != m + 1 {
            return Err(ComplexError::Duality(format!("expected {} maps, got {}", m + 1, self.maps.len())));
        }
        for (k, p) in self.maps.iter().enumerate() {
            if p.nrows() != c.rank(m - k) || p.ncols() != c.rank(k) {
                return Err(ComplexError::Duality(format!(
                    "map in degree {k} has shape {}x{}, expected {}x{}",
                    p.nrows(),
                    p.ncols(),
                    c.rank(m - k),
                    c.rank(k)
                )));
            }
        }
        let d = c.dual_complex();
        for k in 1..=m {
            let lhs = &self.maps[k - 1] * c.boundary(k);
            let rhs = d.boundary(k) * &self.maps[k];
            if lhs != rhs {
                return Err(ComplexError::Duality(format!("not a chain map in degree {k}")));
            }
        }
        Ok(())
    }

    /// Duality carried along a basis change `g` of the complex (see
    /// [`ChainComplex::change_basis`]): `P'_k = (g_{m-k}^†)⁻¹ P_k g_k⁻¹`.
    pub fn change_basis(&self, g: &[Matrix<K>]) -> Option<Self> {
        let m = self.maps.len().checked_sub(1)?;
        let mut maps = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let left = g[m - k].adjoint().inverse()?;
            let right = g[k].inverse()?;
            maps.push(&(&left * &self.maps[k]) * &right);
        }
        Some(DualityPairing { maps })
    }

    /// Block sum matching [`ChainComplex::direct_sum`] for complexes of equal top degree.
    pub fn direct_sum(&self, other: &Self) -> Self {
        DualityPairing { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect() }
    }
}

impl<K: Field> TorsionValue<K> {
    pub fn is_unit_value(&self) -> bool {
        self.value.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cayley, valuation, GaussRat, Poly};
    use num_traits::{One, Zero};
    use crate::{FamilyMatrix, RatFunc as R};

    fn scalar(x: R) -> FamilyMatrix {
        Matrix::from_vec(1, 1, vec![x])
    }

    fn circle(entry: R) -> ChainComplex<R> {
        ChainComplex::new(vec![1, 1], vec![scalar(entry)]).unwrap()
    }

    fn t_poly(c: &[i64]) -> R {
        R::from_poly(Poly::new(c.iter().map(|&x| GaussRat::from(x)).collect()))
    }

    #[test]
    fn acyclicity_examples() {
        assert!(circle(R::one()).is_generically_acyclic());
        assert!(!circle(R::zero()).is_generically_acyclic());
        assert!(circle(cayley() - R::one()).is_generically_acyclic());
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(circle(R::one()).torsion().unwrap().value, R::one());
        let a = t_poly(&[1, 1]);
        let b = t_poly(&[0, 2, 0, 1]);
        let c = ChainComplex::new(vec![2, 2], vec![Matrix::diagonal(vec![a.clone(), b.clone()])]).unwrap();
        assert_eq!(c.torsion().unwrap().value, a * b);

        let z1 = cayley() - R::one();
        let tau = circle(z1.clone()).torsion().unwrap();
        assert_eq!(tau.value, z1);
        assert_eq!(tau.convention_tag, "FT-cal-1");
        assert_eq!(valuation(&tau.value, &GaussRat::from(0)), Ok(1));
    }

    #[test]
    fn torsion_rejects_non_acyclic() {
        let err = circle(R::zero()).torsion().unwrap_err();
        assert_eq!(err.to_string(), "torsion undefined: complex not generically acyclic");
        // Euler characteristic nonzero
        let c = ChainComplex::<R>::zero(vec![1]);
        assert_eq!(c.torsion().unwrap_err(), ComplexError::NotAcyclic);
    }

    #[test]
    fn higher_degree_exponent_is_inverted() {
        // 0 → C_2 --a--> C_1 → 0 → 0: torsion a^{-1}.
        let a = t_poly(&[-3, 1]);
        let c = ChainComplex::placed(2, 1, vec![scalar(a.clone())]).unwrap();
        assert_eq!(c.torsion().unwrap().value, a.try_inv().unwrap());
    }

    #[test]
    fn subset_choice_does_not_change_the_value() {
        // Torus-like 1 → 2 → 1 complex, both row orders.
        let a = t_poly(&[-1, 1]);
        let b = t_poly(&[2, 1]);
        let d1 = Matrix::from_rows(vec![vec![a.clone(), b.clone()]]);
        let d2 = Matrix::from_rows(vec![vec![-b.clone()], vec![a.clone()]]);
        let c = ChainComplex::new(vec![1, 2, 1], vec![d1, d2]).unwrap();
        let lo = c.torsion_with(PivotOrder::LowestFirst).unwrap().value;
        let hi = c.torsion_with(PivotOrder::HighestFirst).unwrap().value;
        assert_eq!(lo, hi);
        assert_eq!(lo, -R::one());
    }

    #[test]
    fn rejects_bad_shapes_and_nonzero_square() {
        let bad = ChainComplex::new(vec![1, 2], vec![Matrix::<R>::zeros(1, 1)]);
        assert!(matches!(bad, Err(ComplexError::Shape { .. })));
        let one = scalar(R::one());
        let nonzero = ChainComplex::new(vec![1, 1, 1], vec![one.clone(), one]);
        assert_eq!(nonzero.unwrap_err(), ComplexError::NotAChainComplex { lower: 1, upper: 2 });
    }

    #[test]
    fn conjugate_and_dual() {
        let it = R::from_poly(Poly::new(vec![GaussRat::from(0), GaussRat::i()]));
        let c = circle(it.clone());
        assert_eq!(c.conjugate_complex().boundary(1).get(0, 0), &-it.clone());
        assert_eq!(c.conjugate_complex().conjugate_complex(), c);

        let real = circle(t_poly(&[1, 1]));
        assert_eq!(real.conjugate_complex(), real);

        let d = c.dual_complex();
        assert_eq!(d.boundary(1).get(0, 0), &-it);
        assert_eq!(d.dual_complex(), c);

        let big = ChainComplex::<R>::zero(vec![1, 2, 3, 4]);
        assert_eq!(big.dual_complex().ranks(), &[4, 3, 2, 1]);
        assert_eq!(big.dual_complex().dual_complex().ranks(), big.ranks());
    }

    #[test]
    fn direct_sum_ranks_and_identity() {
        let c = circle(t_poly(&[0, 1]));
        let z = ChainComplex::<R>::zero(vec![0, 0]);
        assert_eq!(c.direct_sum(&z), c);
        let d = ChainComplex::placed(2, 1, vec![scalar(t_poly(&[1, 1]))]).unwrap();
        let s = c.direct_sum(&d);
        assert_eq!(s.ranks(), &[1, 2, 1]);
        let ts = s.torsion().unwrap().value;
        let prod = c.torsion().unwrap().value * d.torsion().unwrap().value;
        assert!(ts == prod || ts == -prod);
    }

    #[test]
    fn circle_duality_pairing() {
        let z = cayley();
        let c = circle(z.clone() - R::one());
        let p = DualityPairing { maps: vec![scalar(-z.conj()), scalar(R::one())] };
        p.validate(&c).unwrap();
        let wrong = DualityPairing { maps: vec![scalar(R::one()), scalar(R::one())] };
        assert!(wrong.validate(&c).is_err());
    }
}
