//! Behaviour of a family complex at a degeneration point `t0`: elementary
//! divisors over the local ring `𝒪 = K[t]_(t - t0)`, torsion submodules of the
//! local homology, the Euler number of the deformation and the order of the
//! torsion function.
//!
//! Dimensions are stored in homological indexing, `dims[k] = dim 𝔗_k` for
//! `k = 0..=m`. Over a discrete valuation ring `Tors H_k` is the sum of
//! `𝒪/(d)` over the elementary divisors `d` of `∂_{k+1}`, so `dim 𝔗_k` is the
//! sum of their valuations. Cohomological torsion is shifted by one degree,
//! `𝔗^i ≅ 𝔗_{i-1}`, see [`TorsionModuleSummary::cohomological`].

use num_traits::Zero;

use crate::complex::{ChainComplex, ComplexError, DualityPairing};
use crate::linalg::Matrix;
use crate::scalar::{valuation, Conjugate, Field, GaussRat, RatFunc};
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformationError {
    #[error("matrix not defined over the local ring")]
    NotLocal,
    #[error("family not generically acyclic at this degree (degree {degree}, free rank {free_rank})")]
    NotAcyclicAt { degree: usize, free_rank: usize },
    #[error("convention calibration violated (nu = {nu}, chi = {chi})")]
    CalibrationViolated { nu: i64, chi: i64 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Row/column pivot choice for [`snf_local_with`]. Both give the same profile.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum PivotStrategy {
    /// First entry of minimal valuation in row-major order.
    #[default]
    FirstMinimal,
    /// Last entry of minimal valuation in row-major order.
    LastMinimal,
}

/// Elementary divisor data of a matrix over `𝒪`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DivisorProfile {
    /// Valuations of the nonzero elementary divisors, ascending.
    pub valuations: Vec<u64>,
    /// Rank of the kernel, `cols - rank`.
    pub free_rank: usize,
}

impl DivisorProfile {
    pub fn rank(&self) -> usize {
        self.valuations.len()
    }

    /// Length of the torsion part of the cokernel.
    pub fn torsion_length(&self) -> u64 {
        self.valuations.iter().sum()
    }

    /// Number of non-unit divisors.
    pub fn non_units(&self) -> usize {
        self.valuations.iter().filter(|&&v| v > 0).count()
    }
}

/// Elementary divisors of `m` over the local ring at `t0`.
pub fn snf_local<F: Field>(m: &Matrix<RatFunc<F>>, t0: &F) -> Result<DivisorProfile, DeformationError> {
    snf_local_with(m, t0, PivotStrategy::FirstMinimal)
}

/// [`snf_local`] with an explicit pivot strategy.
///
/// Each step pivots on an entry of least valuation and clears its column by
/// row operations with coefficients in `𝒪`; the pivot row can then be
/// cleared by column operations that touch nothing else, so it is dropped.
pub fn snf_local_with<F: Field>(
    m: &Matrix<RatFunc<F>>,
    t0: &F,
    strategy: PivotStrategy,
) -> Result<DivisorProfile, DeformationError> {
    if m.entries().any(|e| e.denom().eval(t0).is_zero()) {
        return Err(DeformationError::NotLocal);
    }
    let cols = m.ncols();
    let mut rows: Vec<Vec<RatFunc<F>>> = (0..m.nrows()).map(|i| m.row(i).to_vec()).collect();
    let mut live_cols: Vec<usize> = (0..cols).collect();
    let mut valuations = Vec::new();
    loop {
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            for (jj, &j) in live_cols.iter().enumerate() {
                let Ok(v) = valuation(&row[j], t0) else { continue };
                let v = v as u64;
                let better = match (best, strategy) {
                    (None, _) => true,
                    (Some((b, _, _)), PivotStrategy::FirstMinimal) => v < b,
                    (Some((b, _, _)), PivotStrategy::LastMinimal) => v <= b,
                };
                if better {
                    best = Some((v, i, jj));
                }
            }
        }
        let Some((v, pi, pjj)) = best else { break };
        valuations.push(v);
        let pj = live_cols[pjj];
        let pivot_row = rows.swap_remove(pi);
        let inv = pivot_row[pj].try_inv().expect("pivot is nonzero");
        for row in rows.iter_mut() {
            if row[pj].is_zero() {
                continue;
            }
            let factor = row[pj].clone() * inv.clone();
            for &j in &live_cols {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].clone() - factor.clone() * pivot_row[j].clone();
                }
            }
        }
        live_cols.remove(pjj);
    }
    valuations.sort_unstable();
    let free_rank = cols - valuations.len();
    Ok(DivisorProfile { valuations, free_rank })
}

/// Dimensions of the torsion submodules of the local homology.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TorsionModuleSummary {
    /// `dims[k] = dim 𝔗_k`, homological degree `k = 0..=m`.
    pub dims: Vec<u64>,
}

impl TorsionModuleSummary {
    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    /// Cohomological view `𝔗^i = 𝔗_{i-1}` for `i = 0..=m+1` (universal
    /// coefficients over `𝒪`), so `𝔗^0 = 0`.
    pub fn cohomological(&self) -> Vec<u64> {
        std::iter::once(0).chain(self.dims.iter().copied()).collect()
    }

    /// Middle cohomological degree `r` with `m = 2r - 1`, if `m` is odd.
    pub fn middle_degree(&self) -> Option<usize> {
        let m = self.top_degree();
        (m % 2 == 1).then_some((m + 1) / 2)
    }

    /// `dim 𝔗^r` for odd `m`.
    pub fn middle_dim(&self) -> Option<u64> {
        self.middle_degree().map(|r| self.dims[r - 1])
    }

    /// The symmetry forced by a duality: `dim 𝔗^i = dim 𝔗^{m+1-i}` for all `i`.
    pub fn is_dual_symmetric(&self) -> bool {
        let co = self.cohomological();
        let n = co.len();
        (0..n).all(|i| co[i] == co[n - 1 - i])
    }

    /// Degreewise sum, for direct sums of complexes.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.dims.len().max(other.dims.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        TorsionModuleSummary { dims: (0..n).map(|i| get(&self.dims, i) + get(&other.dims, i)).collect() }
    }
}

/// Divisor profile of every boundary, `profiles[k-1]` for `∂_k`.
pub fn boundary_profiles<F: Field>(
    c: &ChainComplex<RatFunc<F>>,
    t0: &F,
) -> Result<Vec<DivisorProfile>, DeformationError> {
    c.boundaries().iter().map(|d| snf_local(d, t0)).collect()
}

/// Torsion submodule dimensions at `t0`. Fails if some homology group has
/// nonzero free rank, i.e. the family is not generically acyclic.
pub fn torsion_modules<F: Field>(
    c: &ChainComplex<RatFunc<F>>,
    t0: &F,
) -> Result<TorsionModuleSummary, DeformationError> {
    let profiles = boundary_profiles(c, t0)?;
    let m = c.top_degree();
    let rank = |k: usize| if k == 0 || k > m { 0 } else { profiles[k - 1].rank() };
    let mut dims = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let free_rank = c.rank(k) - rank(k) - rank(k + 1);
        if free_rank != 0 {
            return Err(DeformationError::NotAcyclicAt { degree: k, free_rank });
        }
        dims.push(if k < m { profiles[k].torsion_length() } else { 0 });
    }
    Ok(TorsionModuleSummary { dims })
}

/// `χ = Σ (-1)^k dim 𝔗_k`.
pub fn euler_number(dims: &TorsionModuleSummary) -> i64 {
    dims.dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

/// Order of the torsion function at `t0`.
pub fn singularity_exponent<F: Field>(c: &ChainComplex<RatFunc<F>>, t0: &F) -> Result<i64, DeformationError> {
    let tau = c.torsion()?;
    Ok(valuation(&tau.value, t0).expect("torsion of an acyclic complex is nonzero"))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeformationReport<F> {
    pub t0: F,
    pub nu: i64,
    pub chi: i64,
    pub dims: TorsionModuleSummary,
    /// `dim 𝔗^r mod 2` when `m = 2r - 1`.
    pub middle_dim_parity: Option<u8>,
    pub sign_flip: bool,
    /// Present when a duality pairing was supplied: the pairing is invertible
    /// over `𝒪` at `t0` and the dimensions are symmetric.
    pub duality_ok: Option<bool>,
}

impl<F> DeformationReport<F> {
    /// `ν ≡ dim 𝔗^r (mod 2)`; `None` without a middle degree.
    pub fn parity_matches(&self) -> Option<bool> {
        self.middle_dim_parity.map(|p| self.nu.rem_euclid(2) as u8 == p)
    }
}

/// Whether every map of the pairing is invertible over the local ring at `t0`.
pub fn pairing_is_local_unit<F: Field + Conjugate>(p: &DualityPairing<RatFunc<F>>, t0: &F) -> bool {
    p.maps.iter().all(|m| {
        m.is_square()
            && !m.entries().any(|e| e.denom().eval(t0).is_zero())
            && (m.nrows() == 0 || valuation(&m.det(), t0) == Ok(0))
    })
}

/// Full analysis at `t0`. Checks `ν = χ`; with a duality pairing, validates
/// it and records whether the torsion dimensions are dual-symmetric.
pub fn analyze<F: Field + Conjugate>(
    c: &ChainComplex<RatFunc<F>>,
    t0: &F,
    duality: Option<&DualityPairing<RatFunc<F>>>,
) -> Result<DeformationReport<F>, DeformationError> {
    let dims = torsion_modules(c, t0)?;
    let chi = euler_number(&dims);
    let nu = singularity_exponent(c, t0)?;
    if nu != chi {
        return Err(DeformationError::CalibrationViolated { nu, chi });
    }
    let duality_ok = match duality {
        Some(p) => {
            p.validate(c)?;
            Some(pairing_is_local_unit(p, t0) && dims.is_dual_symmetric())
        }
        None => None,
    };
    Ok(DeformationReport {
        t0: t0.clone(),
        nu,
        chi,
        middle_dim_parity: dims.middle_dim().map(|d| (d % 2) as u8),
        dims,
        sign_flip: nu.rem_euclid(2) == 1,
        duality_ok,
    })
}

/// Relative sign of `f` across `t0`: the sign of `Re(f(t0 + δ) · conj f(t0 - δ))`.
/// For real-valued `f` this is `sign f(t0 + δ) · sign f(t0 - δ)`; for small `δ`
/// it equals `(-1)^ν`. `None` if either value is zero or a pole.
pub fn relative_sign(f: &RatFunc<GaussRat>, t0: &GaussRat, delta: &Rat) -> Option<i8> {
    let d = GaussRat::real(delta.clone());
    let plus = f.eval(&(t0.clone() + d.clone()))?;
    let minus = f.eval(&(t0.clone() - d))?;
    let prod = plus * minus.conj();
    if prod.re.is_zero() {
        return None;
    }
    Some(if prod.re > Rat::zero() { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cayley, Poly};
    use crate::{FamilyMatrix, RatFunc as R};
    use num_traits::One;

    fn tp(c: &[i64]) -> R {
        R::from_poly(Poly::new(c.iter().map(|&x| GaussRat::from(x)).collect()))
    }

    fn zero() -> GaussRat {
        GaussRat::from(0)
    }

    fn circle() -> ChainComplex<R> {
        ChainComplex::new(vec![1, 1], vec![Matrix::from_vec(1, 1, vec![cayley() - R::one()])]).unwrap()
    }

    #[test]
    fn snf_examples() {
        let id: FamilyMatrix = Matrix::identity(3);
        assert_eq!(snf_local(&id, &zero()).unwrap(), DivisorProfile { valuations: vec![0; 3], free_rank: 0 });
        let m = Matrix::from_rows(vec![vec![tp(&[0, 1]), R::zero()], vec![R::zero(), R::one()]]);
        assert_eq!(snf_local(&m, &zero()).unwrap().valuations, vec![0, 1]);
        let m = Matrix::from_vec(1, 1, vec![tp(&[0, 0, 1])]);
        assert_eq!(snf_local(&m, &zero()).unwrap().valuations, vec![2]);
        let pole = Matrix::from_vec(1, 1, vec![tp(&[0, 1]).try_inv().unwrap()]);
        let err = snf_local(&pole, &zero()).unwrap_err();
        assert_eq!(err.to_string(), "matrix not defined over the local ring");
    }

    #[test]
    fn snf_non_diagonal() {
        // [[t, t], [t, t + t^2]] ~ diag(t, t^2)
        let m = Matrix::from_rows(vec![vec![tp(&[0, 1]), tp(&[0, 1])], vec![tp(&[0, 1]), tp(&[0, 1, 1])]]);
        for s in [PivotStrategy::FirstMinimal, PivotStrategy::LastMinimal] {
            assert_eq!(snf_local_with(&m, &zero(), s).unwrap().valuations, vec![1, 2]);
        }
        let rank1 = Matrix::from_rows(vec![vec![tp(&[1, 1]), tp(&[0, 1])], vec![tp(&[2, 2]), tp(&[0, 2])]]);
        assert_eq!(snf_local(&rank1, &zero()).unwrap(), DivisorProfile { valuations: vec![0], free_rank: 1 });
    }

    #[test]
    fn circle_modules_and_report() {
        let dims = torsion_modules(&circle(), &zero()).unwrap();
        assert_eq!(dims.dims, vec![1, 0]);
        assert_eq!(dims.cohomological(), vec![0, 1, 0]);
        assert_eq!(euler_number(&dims), 1);
        assert_eq!(singularity_exponent(&circle(), &zero()).unwrap(), 1);
        let rep = analyze(&circle(), &zero(), None).unwrap();
        assert_eq!((rep.nu, rep.chi, rep.sign_flip), (1, 1, true));
        assert_eq!(rep.middle_dim_parity, Some(1));
        assert_eq!(rep.parity_matches(), Some(true));

        let z = cayley();
        let p = DualityPairing { maps: vec![Matrix::from_vec(1, 1, vec![-z.conj()]), Matrix::identity(1)] };
        let rep = analyze(&circle(), &zero(), Some(&p)).unwrap();
        assert_eq!(rep.duality_ok, Some(true));
    }

    #[test]
    fn identity_complex_is_trivial() {
        let c: ChainComplex<R> = ChainComplex::new(vec![2, 2], vec![Matrix::identity(2)]).unwrap();
        let rep = analyze(&c, &zero(), None).unwrap();
        assert_eq!(rep.dims.dims, vec![0, 0]);
        assert_eq!((rep.nu, rep.chi, rep.sign_flip), (0, 0, false));
    }

    #[test]
    fn direct_sum_doubles() {
        let c = circle();
        let s = c.direct_sum(&c);
        let rep = analyze(&s, &zero(), None).unwrap();
        assert_eq!(rep.dims.dims, vec![2, 0]);
        assert_eq!(rep.nu, 2);
        assert!(!rep.sign_flip);
    }

    #[test]
    fn euler_number_examples() {
        let s = |d: &[u64]| TorsionModuleSummary { dims: d.to_vec() };
        assert_eq!(euler_number(&s(&[1, 0])), 1);
        assert_eq!(euler_number(&s(&[0, 0, 0])), 0);
        assert_eq!(euler_number(&s(&[2, 1, 2])), 3);
    }

    #[test]
    fn higher_degree_zero_counts_negatively() {
        // C_2 --t--> C_1, nothing else: H_1 = 𝒪/t, torsion t^{-1}.
        let c = ChainComplex::placed(2, 1, vec![Matrix::from_vec(1, 1, vec![tp(&[0, 1])])]).unwrap();
        let rep = analyze(&c, &zero(), None).unwrap();
        assert_eq!(rep.dims.dims, vec![0, 1, 0]);
        assert_eq!((rep.nu, rep.chi), (-1, -1));
    }

    #[test]
    fn not_acyclic_is_reported() {
        let c: ChainComplex<R> = ChainComplex::zero(vec![1, 1]);
        let err = torsion_modules(&c, &zero()).unwrap_err();
        assert_eq!(err, DeformationError::NotAcyclicAt { degree: 0, free_rank: 1 });
        assert!(err.to_string().starts_with("family not generically acyclic at this degree"));
    }

    #[test]
    fn relative_sign_follows_parity() {
        let delta = Rat::new(1.into(), 1000.into());
        let tau = circle().torsion().unwrap().value;
        assert_eq!(relative_sign(&tau, &zero(), &delta), Some(-1));
        let sq = tau.clone() * tau;
        assert_eq!(relative_sign(&sq, &zero(), &delta), Some(1));
        assert_eq!(relative_sign(&tp(&[-2, 1]), &zero(), &delta), Some(1));
    }
}
