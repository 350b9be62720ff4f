//! Minimal compressed-sparse-row matrix over complex scalars.

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::{Real, C};

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<T: Real> {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C<T>>,
}

impl<T: Real> CsrMatrix<T> {
    /// Builds from `(row, col, value)` triplets; duplicates are summed and exact zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, C<T>)>) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0usize; rows + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<C<T>> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}×{cols}");
            if last == Some((r, c)) {
                *values.last_mut().expect("entry exists") += v;
            } else {
                indices.push(c);
                values.push(v);
                indptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..rows {
            indptr[r + 1] += indptr[r];
        }
        let mut m = CsrMatrix { rows, cols, indptr, indices, values };
        m.prune();
        m
    }

    fn prune(&mut self) {
        let mut indptr = vec![0usize; self.rows + 1];
        let mut indices = Vec::with_capacity(self.indices.len());
        let mut values = Vec::with_capacity(self.values.len());
        for r in 0..self.rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                if !self.values[k].is_zero() {
                    indices.push(self.indices[k]);
                    values.push(self.values[k]);
                }
            }
            indptr[r + 1] = indices.len();
        }
        self.indptr = indptr;
        self.indices = indices;
        self.values = values;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Iterates `(row, col, value)`.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C<T>)> + '_ {
        (0..self.rows).flat_map(move |r| (self.indptr[r]..self.indptr[r + 1]).map(move |k| (r, self.indices[k], self.values[k])))
    }

    pub fn get(&self, r: usize, c: usize) -> C<T> {
        let row = &self.indices[self.indptr[r]..self.indptr[r + 1]];
        match row.binary_search(&c) {
            Ok(k) => self.values[self.indptr[r] + k],
            Err(_) => C::zero(),
        }
    }

    pub fn matvec(&self, x: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(x.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                (self.indptr[r]..self.indptr[r + 1]).fold(C::zero(), |acc, k| acc + self.values[k] * x[self.indices[k]])
            })
            .collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let t = self.triplets().map(|(r, c, v)| (c, r, v.conj())).collect();
        Self::from_triplets(self.cols, self.rows, t)
    }

    pub fn map(&self, f: impl Fn(usize, usize, C<T>) -> C<T>) -> Self {
        let t = self.triplets().map(|(r, c, v)| (r, c, f(r, c, v))).collect();
        Self::from_triplets(self.rows, self.cols, t)
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: C<T>, other: &Self, beta: C<T>) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shapes must agree");
        let t = self
            .triplets()
            .map(|(r, c, v)| (r, c, v * alpha))
            .chain(other.triplets().map(|(r, c, v)| (r, c, v * beta)))
            .collect();
        Self::from_triplets(self.rows, self.cols, t)
    }

    /// `½(self + self*)`.
    pub fn hermitian_part(&self) -> Self {
        let half = Complex::new(T::from_f64_lossy(0.5), T::zero());
        self.combine(half, &self.adjoint(), half)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let d = self.combine(C::new(T::one(), T::zero()), other, C::new(-T::one(), T::zero()));
        d.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (j, &c) in cols.iter().enumerate() {
            col_pos[c] = j;
        }
        let mut t = Vec::new();
        for (i, &r) in rows.iter().enumerate() {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let j = col_pos[self.indices[k]];
                if j != usize::MAX {
                    t.push((i, j, self.values[k]));
                }
            }
        }
        Self::from_triplets(rows.len(), cols.len(), t)
    }

    /// Product of sparse matrices.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut t = Vec::new();
        for r in 0..self.rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let (m, a) = (self.indices[k], self.values[k]);
                for l in rhs.indptr[m]..rhs.indptr[m + 1] {
                    t.push((r, rhs.indices[l], a * rhs.values[l]));
                }
            }
        }
        Self::from_triplets(self.rows, rhs.cols, t)
    }

    /// Dense copy in `f64`.
    pub fn to_dense(&self) -> nalgebra::DMatrix<Complex<f64>> {
        let mut m = nalgebra::DMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            m[(r, c)] = Complex::new(v.re.to_f64_lossy(), v.im.to_f64_lossy());
        }
        m
    }
}
