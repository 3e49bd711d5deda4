//! Seeded generator of family complexes that carry a chain-level duality,
//! plus the small hand-built examples (circle, 3-torus).
//!
//! Families have odd top degree `m ∈ {1, 3}` and are direct sums of blocks,
//! each with an explicit pairing:
//!
//! - Hermitian middle block `∂_r = G^† Λ G` with `Λ` real diagonal,
//!   paired by `P_r = I`, `P_{r-1} = (-1)^{r+1} I`;
//! - unitary middle block `∂_r = U - I` with `U` a conjugated diagonal of
//!   Cayley factors, paired by `P_r = U`, `P_{r-1} = (-1)^r I`;
//! - for `m = 3`, a block with `∂_3 = A`, `∂_1 = A^†` paired by identities;
//! - for `m = 3`, the rank-one Koszul complex of the 3-torus.
//!
//! The sum is then mixed by polynomial basis changes of determinant one,
//! which keep every torsion dimension and the order of the torsion.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{ChainComplex, DualityPairing};
use crate::linalg::{permutation_sign, Matrix};
use crate::scalar::{cayley_of, Conjugate, GaussRat, Poly};
use crate::{BasedChainComplex, FamilyMatrix, Rat, RatFunc};
use num_traits::One;

/// Largest total rank of a generated complex.
pub const MAX_TOTAL_RANK: usize = 12;

/// A generated or hand-built family with its duality and degeneration points.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: BasedChainComplex,
    pub pairing: DualityPairing<RatFunc>,
    /// Real points where some block may degenerate, increasing.
    pub points: Vec<GaussRat>,
    /// Contains Cayley (unit-modulus) monodromy.
    pub unitary: bool,
}

fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

fn point_pool() -> Vec<Rat> {
    vec![rat(-2, 1), rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 3), rat(1, 1), rat(2, 1)]
}

fn constant(c: GaussRat) -> RatFunc {
    RatFunc::constant(c)
}

/// `c · ∏ (t - a)^e`.
fn real_poly(c: &Rat, zeros: &[(Rat, u32)]) -> RatFunc {
    let mut p = Poly::constant(GaussRat::real(c.clone()));
    for (a, e) in zeros {
        p = p * Poly::linear_root(GaussRat::real(a.clone())).pow(*e);
    }
    RatFunc::from_poly(p)
}

fn gaussian_constant(rng: &mut ChaCha8Rng, allow_zero: bool) -> GaussRat {
    let choices: &[(i64, i64)] = if allow_zero {
        &[(0, 0), (0, 0), (1, 0), (-1, 0), (2, 0), (0, 1), (0, -1), (1, 1), (1, -1)]
    } else {
        &[(1, 0), (-1, 0), (2, 0), (0, 1), (0, -1), (1, 1), (1, -1)]
    };
    let &(re, im) = choices.choose(rng).unwrap();
    GaussRat::from_ints(re, im)
}

fn invertible_constant(rng: &mut ChaCha8Rng, n: usize) -> FamilyMatrix {
    loop {
        let data = (0..n * n).map(|_| constant(gaussian_constant(rng, true))).collect();
        let g = Matrix::from_vec(n, n, data);
        if g.rank() == n {
            return g;
        }
    }
}

fn random_zeros(rng: &mut ChaCha8Rng, points: &[Rat]) -> Vec<(Rat, u32)> {
    let mut out = Vec::new();
    for a in points {
        if rng.gen_bool(0.5) {
            out.push((a.clone(), if rng.gen_bool(0.75) { 1 } else { 2 }));
        }
    }
    out
}

fn scale_choice(rng: &mut ChaCha8Rng) -> Rat {
    [rat(1, 1), rat(-1, 1), rat(2, 1), rat(1, 2), rat(-3, 1)].choose(rng).unwrap().clone()
}

/// Empty pairing maps for a complex with the given ranks.
fn zero_maps(ranks: &[usize]) -> Vec<FamilyMatrix> {
    let m = ranks.len() - 1;
    (0..=m).map(|k| Matrix::zeros(ranks[m - k], ranks[k])).collect()
}

/// Middle block `C_r → C_{r-1}` of a complex of top degree `m = 2r - 1`.
fn middle_block(m: usize, d: FamilyMatrix, p_upper: FamilyMatrix, p_lower: FamilyMatrix) -> (BasedChainComplex, DualityPairing<RatFunc>) {
    let r = m.div_ceil(2);
    let c = ChainComplex::placed(m, r - 1, vec![d]).expect("middle block is a complex");
    let mut maps = zero_maps(c.ranks());
    maps[r] = p_upper;
    maps[r - 1] = p_lower;
    (c, DualityPairing { maps })
}

fn middle_sign(m: usize) -> GaussRat {
    let r = m.div_ceil(2);
    GaussRat::from(if r % 2 == 1 { 1 } else { -1 })
}

/// `∂_r = G^† Λ G`, Hermitian for real `t`.
pub fn hermitian_block(m: usize, g: &FamilyMatrix, lambda: Vec<RatFunc>) -> (BasedChainComplex, DualityPairing<RatFunc>) {
    let n = lambda.len();
    let h = &(&g.adjoint() * &Matrix::diagonal(lambda)) * g;
    let eps = middle_sign(m);
    middle_block(m, h, Matrix::identity(n), Matrix::<RatFunc>::identity(n).scale(&constant(eps)))
}

/// `∂_r = U - I` with `U = V · diag(cayley(p_j)) · V^†`, `V` unitary.
pub fn unitary_block(m: usize, v: &FamilyMatrix, params: &[RatFunc]) -> (BasedChainComplex, DualityPairing<RatFunc>) {
    let n = params.len();
    let diag = Matrix::diagonal(params.iter().map(cayley_of).collect());
    let u = &(v * &diag) * &v.adjoint();
    let d = &u - &Matrix::identity(n);
    let eps = -middle_sign(m);
    middle_block(m, d, u, Matrix::<RatFunc>::identity(n).scale(&constant(eps)))
}

/// Top degree 3 with `∂_3 = A`, `∂_2 = 0`, `∂_1 = A^†`.
pub fn pair_block(a: &FamilyMatrix) -> (BasedChainComplex, DualityPairing<RatFunc>) {
    let n = a.nrows();
    let c = ChainComplex::new(vec![n, n, n, n], vec![a.adjoint(), Matrix::zeros(n, n), a.clone()])
        .expect("pair block is a complex");
    let maps = vec![Matrix::identity(n); 4];
    (c, DualityPairing { maps })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..(1 << n))
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|j| mask & (1 << j) != 0).collect())
        .collect();
    out.sort();
    out
}

/// Rank-one complex of the `n`-torus with monodromies `z_j`: the Koszul
/// complex on `z_j - 1`, basis of `C_k` the `k`-subsets in lexicographic order.
pub fn koszul_torus(z: &[RatFunc]) -> BasedChainComplex {
    let n = z.len();
    let ranks: Vec<usize> = (0..=n).map(|k| subsets(n, k).len()).collect();
    let mut boundaries = Vec::with_capacity(n);
    for k in 1..=n {
        let src = subsets(n, k);
        let dst = subsets(n, k - 1);
        let mut d = Matrix::zeros(dst.len(), src.len());
        for (col, s) in src.iter().enumerate() {
            for (pos, &j) in s.iter().enumerate() {
                let face: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
                let row = dst.binary_search(&face).unwrap();
                let v = z[j].clone() - RatFunc::one();
                d.set(row, col, if pos % 2 == 0 { v } else { -v });
            }
        }
        boundaries.push(d);
    }
    ChainComplex::new(ranks, boundaries).expect("Koszul complex")
}

/// Duality of the odd torus: `e_S ↦ sgn(S ++ Sᶜ) · ∏_{j ∉ S} (-z̄_j) · e*_{Sᶜ}`.
pub fn koszul_pairing(z: &[RatFunc]) -> DualityPairing<RatFunc> {
    let n = z.len();
    let u: Vec<RatFunc> = z.iter().map(|x| -x.conj()).collect();
    let maps = (0..=n)
        .map(|k| {
            let src = subsets(n, k);
            let dst = subsets(n, n - k);
            let mut p = Matrix::zeros(dst.len(), src.len());
            for (col, s) in src.iter().enumerate() {
                let comp: Vec<usize> = (0..n).filter(|j| !s.contains(j)).collect();
                let row = dst.binary_search(&comp).unwrap();
                let seq: Vec<usize> = s.iter().chain(&comp).copied().collect();
                let v = comp.iter().fold(RatFunc::one(), |acc, &j| acc * u[j].clone());
                p.set(row, col, if permutation_sign(&seq) > 0 { v } else { -v });
            }
            p
        })
        .collect();
    DualityPairing { maps }
}

/// Circle with monodromy `cayley(t)` and its duality.
pub fn circle_example() -> CorpusEntry {
    let z = vec![cayley_of(&RatFunc::t())];
    CorpusEntry {
        name: "circle".into(),
        complex: koszul_torus(&z),
        pairing: koszul_pairing(&z),
        points: vec![GaussRat::from(0)],
        unitary: true,
    }
}

/// 3-torus with monodromies `cayley(t)`, `cayley(2t)` and the constant `i`.
pub fn torus3_example() -> CorpusEntry {
    let t = RatFunc::t();
    let z = vec![cayley_of(&t), cayley_of(&(constant(GaussRat::from(2)) * t)), constant(GaussRat::i())];
    CorpusEntry {
        name: "torus3".into(),
        complex: koszul_torus(&z),
        pairing: koszul_pairing(&z),
        points: vec![GaussRat::from(0)],
        unitary: true,
    }
}

/// 3-torus with all three monodromies trivial at `t = 0`.
pub fn torus3_degenerate_example() -> CorpusEntry {
    let t = RatFunc::t();
    let z: Vec<RatFunc> = (1..=3).map(|c| cayley_of(&(constant(GaussRat::from(c)) * t.clone()))).collect();
    CorpusEntry {
        name: "torus3-degenerate".into(),
        complex: koszul_torus(&z),
        pairing: koszul_pairing(&z),
        points: vec![GaussRat::from(0)],
        unitary: true,
    }
}

fn random_basis_change(rng: &mut ChaCha8Rng, n: usize) -> FamilyMatrix {
    let mut g = Matrix::identity(n);
    if n < 2 {
        return g;
    }
    for _ in 0..rng.gen_range(1..=2) {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let x = RatFunc::from_poly(Poly::new(vec![gaussian_constant(rng, true), gaussian_constant(rng, true)]));
        let mut e = Matrix::identity(n);
        e.set(i, j, x);
        g = &e * &g;
    }
    g
}

fn sum_blocks(blocks: Vec<(BasedChainComplex, DualityPairing<RatFunc>)>) -> (BasedChainComplex, DualityPairing<RatFunc>) {
    let mut it = blocks.into_iter();
    let (mut c, mut p) = it.next().expect("at least one block");
    for (c2, p2) in it {
        c = c.direct_sum(&c2);
        p = p.direct_sum(&p2);
    }
    (c, p)
}

fn cayley_params(rng: &mut ChaCha8Rng, points: &[Rat], n: usize) -> Vec<RatFunc> {
    (0..n).map(|_| real_poly(&scale_choice(rng), &random_zeros(rng, points))).collect()
}

fn unitary_mixer(n: usize) -> FamilyMatrix {
    if n == 2 {
        let c = |re: i64, im: i64| constant(GaussRat::new(rat(re, 5), rat(im, 5)));
        Matrix::from_rows(vec![vec![c(3, 0), c(0, 4)], vec![c(0, 4), c(3, 0)]])
    } else {
        Matrix::identity(n)
    }
}

fn random_entry(rng: &mut ChaCha8Rng, name: String) -> CorpusEntry {
    let pool = point_pool();
    let npoints = rng.gen_range(1..=3);
    let mut points: Vec<Rat> = pool.choose_multiple(rng, npoints).cloned().collect();
    points.sort();
    let m = if rng.gen_bool(0.5) { 1 } else { 3 };
    let mut blocks = Vec::new();
    let mut budget = MAX_TOTAL_RANK;
    let mut unitary = false;
    if m == 3 && rng.gen_bool(0.25) {
        let z: Vec<RatFunc> = (0..3)
            .map(|_| {
                let a = points.choose(rng).unwrap().clone();
                cayley_of(&real_poly(&scale_choice(rng), &[(a, 1)]))
            })
            .collect();
        blocks.push((koszul_torus(&z), koszul_pairing(&z)));
        budget -= 8;
        unitary = true;
    }
    let nblocks = rng.gen_range(1..=3);
    for _ in 0..nblocks {
        let kind = rng.gen_range(0..if m == 3 { 3 } else { 2 });
        let n = if budget >= 8 && rng.gen_bool(0.4) { 2 } else { 1 };
        let cost = if kind == 2 { 4 * n } else { 2 * n };
        if cost > budget {
            continue;
        }
        budget -= cost;
        match kind {
            0 => {
                let g = invertible_constant(rng, n);
                let lambda = (0..n).map(|_| real_poly(&scale_choice(rng), &random_zeros(rng, &points))).collect();
                blocks.push(hermitian_block(m, &g, lambda));
            }
            1 => {
                let params = cayley_params(rng, &points, n);
                blocks.push(unitary_block(m, &unitary_mixer(n), &params));
                unitary = true;
            }
            _ => {
                let lambda = (0..n).map(|_| real_poly(&scale_choice(rng), &random_zeros(rng, &points))).collect();
                let a = &(&invertible_constant(rng, n) * &Matrix::diagonal(lambda)) * &invertible_constant(rng, n);
                blocks.push(pair_block(&a));
            }
        }
    }
    if blocks.is_empty() {
        let params = cayley_params(rng, &points, 1);
        blocks.push(unitary_block(m, &Matrix::identity(1), &params));
        unitary = true;
    }
    let (c, p) = sum_blocks(blocks);
    let g: Vec<FamilyMatrix> = c.ranks().iter().map(|&n| random_basis_change(rng, n)).collect();
    let complex = c.change_basis(&g).expect("determinant-one basis change");
    let pairing = p.change_basis(&g).expect("determinant-one basis change");
    CorpusEntry { name, complex, pairing, points: points.into_iter().map(GaussRat::real).collect(), unitary }
}

/// `count` families from `seed`; identical inputs give identical output.
pub fn generate(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_entry(&mut rng, format!("family-{seed}-{i}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::analyze;

    #[test]
    fn examples_carry_valid_dualities() {
        for e in [circle_example(), torus3_example(), torus3_degenerate_example()] {
            e.pairing.validate(&e.complex).unwrap();
            assert!(e.complex.is_generically_acyclic(), "{}", e.name);
        }
    }

    #[test]
    fn degenerate_torus_dims() {
        let e = torus3_degenerate_example();
        let rep = analyze(&e.complex, &GaussRat::from(0), Some(&e.pairing)).unwrap();
        assert_eq!(rep.dims.dims, vec![1, 2, 1, 0]);
        assert_eq!((rep.nu, rep.chi), (0, 0));
        assert_eq!(rep.duality_ok, Some(true));
        let rep = analyze(&torus3_example().complex, &GaussRat::from(0), None).unwrap();
        assert_eq!(rep.dims.dims, vec![0, 0, 0, 0]);
    }

    #[test]
    fn generated_entries_are_valid_and_deterministic() {
        let a = generate(7, 6);
        let b = generate(7, 6);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.complex, y.complex);
            assert!(x.complex.total_rank() <= MAX_TOTAL_RANK);
            assert!(x.complex.is_generically_acyclic(), "{}", x.name);
            x.pairing.validate(&x.complex).unwrap();
        }
    }

    #[test]
    fn block_pairings_validate() {
        let t = RatFunc::t();
        for m in [1, 3] {
            let g = Matrix::from_rows(vec![
                vec![constant(GaussRat::from(1)), constant(GaussRat::i())],
                vec![constant(GaussRat::from(0)), constant(GaussRat::from(2))],
            ]);
            let (c, p) = hermitian_block(m, &g, vec![t.clone(), t.clone() * t.clone() - RatFunc::one()]);
            p.validate(&c).unwrap();
            let (c, p) = unitary_block(m, &unitary_mixer(2), &[t.clone(), constant(GaussRat::from(2)) * t.clone()]);
            p.validate(&c).unwrap();
        }
        let a = Matrix::from_vec(1, 1, vec![t.clone() + constant(GaussRat::i())]);
        let (c, p) = pair_block(&a);
        p.validate(&c).unwrap();
        assert!(c.is_generically_acyclic());
    }
}
