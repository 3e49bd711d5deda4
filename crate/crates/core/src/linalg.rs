//! Dense matrices over an exact ring or field.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Conjugate, Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

/// Order in which greedy pivot searches visit candidate rows.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum PivotOrder {
    #[default]
    LowestFirst,
    HighestFirst,
}

impl<K: Ring> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![K::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Row-major constructor; panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<K>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn diagonal(entries: Vec<K>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &K> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> Matrix<L> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &K) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is `self[rows[i], cols[j]]`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> Self {
        self.submatrix(rows, cols)
    }

    /// Determinant over a commutative ring by expansion over column subsets,
    /// `O(n·2ⁿ)` ring operations. Division-free, so it also serves as an
    /// independent cross-check of elimination-based determinants.
    pub fn det_expansion(&self) -> K {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        assert!(n < 24, "expansion determinant limited to small matrices");
        let mut dp = vec![K::zero(); 1usize << n];
        dp[0] = K::one();
        for mask in 1usize..(1 << n) {
            let k = mask.count_ones() as usize;
            let row = k - 1;
            let mut acc = K::zero();
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let entry = self.get(row, j);
                if entry.is_zero() {
                    continue;
                }
                let prev = &dp[mask & !(1 << j)];
                if prev.is_zero() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let term = entry.clone() * prev.clone();
                acc = if above % 2 == 0 { acc + term } else { acc - term };
            }
            dp[mask] = acc;
        }
        dp[(1 << n) - 1].clone()
    }
}

impl<K: Ring + Conjugate> Matrix<K> {
    /// Entrywise conjugate of the transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().map(|x| x.conj())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }
}

impl<K: Field> Matrix<K> {
    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> K {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = K::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return K::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            let inv = pivot.try_inv().unwrap();
            det = det * pivot;
            for r in col + 1..n {
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                let f = f * inv.clone();
                for c in col + 1..n {
                    let v = a.get(r, c).clone() - f.clone() * a.get(col, c).clone();
                    a.set(r, c, v);
                }
                a.set(r, col, K::zero());
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Greedy maximal set of linearly independent rows, visiting rows in the
    /// given order; returned in ascending index order.
    pub fn independent_rows(&self, order: PivotOrder) -> Vec<usize> {
        let visit: Vec<usize> = match order {
            PivotOrder::LowestFirst => (0..self.rows).collect(),
            PivotOrder::HighestFirst => (0..self.rows).rev().collect(),
        };
        let mut basis: Vec<(usize, Vec<K>)> = Vec::new();
        let mut chosen = Vec::new();
        for i in visit {
            if basis.len() == self.cols {
                break;
            }
            let mut v = self.row(i).to_vec();
            for (p, b) in &basis {
                if v[*p].is_zero() {
                    continue;
                }
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        let cur = std::mem::replace(x, K::zero());
                        *x = cur - f.clone() * y.clone();
                    }
                }
            }
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                let inv = v[p].try_inv().unwrap();
                let v = v.into_iter().map(|x| x * inv.clone()).collect();
                basis.push((p, v));
                chosen.push(i);
            }
        }
        chosen.sort_unstable();
        chosen
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.independent_rows(PivotOrder::LowestFirst).len()
        } else {
            self.transpose().independent_rows(PivotOrder::LowestFirst).len()
        }
    }

    /// Inverse by Gauss–Jordan; `None` if singular or non-square.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if p != col {
                a.swap_rows(p, col);
                inv.swap_rows(p, col);
            }
            let pinv = a.get(col, col).try_inv().unwrap();
            for c in 0..n {
                a.set(col, c, a.get(col, c).clone() * pinv.clone());
                inv.set(col, c, inv.get(col, c).clone() * pinv.clone());
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..n {
                    let v = a.get(r, c).clone() - f.clone() * a.get(col, c).clone();
                    a.set(r, c, v);
                    let w = inv.get(r, c).clone() - f.clone() * inv.get(col, c).clone();
                    inv.set(r, c, w);
                }
            }
        }
        Some(inv)
    }
}

impl<K: Ring> Add for &Matrix<K> {
    type Output = Matrix<K>;
    fn add(self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<K: Ring> Sub for &Matrix<K> {
    type Output = Matrix<K>;
    fn sub(self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl<K: Ring> Neg for &Matrix<K> {
    type Output = Matrix<K>;
    fn neg(self) -> Matrix<K> {
        self.map(|x| -x.clone())
    }
}

impl<K: Ring> Mul for &Matrix<K> {
    type Output = Matrix<K>;
    fn mul(self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out: Matrix<K> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Sign of the permutation given as a sequence of distinct indices `0..n`.
pub fn permutation_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn determinants_agree() {
        let a = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(a.det(), q(6));
        assert_eq!(a.det_expansion(), q(6));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), q(0));
        assert_eq!(Matrix::<BigRational>::zeros(0, 0).det(), q(1));
        assert_eq!(Matrix::<BigRational>::zeros(0, 0).det_expansion(), q(1));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn independent_rows_orders() {
        let a = m(&[&[1, 0], &[2, 0], &[0, 1], &[1, 1]]);
        assert_eq!(a.independent_rows(PivotOrder::LowestFirst), vec![0, 2]);
        assert_eq!(a.independent_rows(PivotOrder::HighestFirst), vec![2, 3]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.transpose().rank(), 2);
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
    }
}
