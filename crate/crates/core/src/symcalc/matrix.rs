use std::ops::{Add, Mul, Neg, Sub};

use super::{SymError, TrigLaurentFun, Var};
use crate::scalar::{Real, C};

/// Square matrix with [`TrigLaurentFun`] entries, stored row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct FunMatrix<T: Real> {
    size: usize,
    entries: Vec<TrigLaurentFun<T>>,
}

impl<T: Real> FunMatrix<T> {
    pub fn zeros(size: usize) -> Self {
        FunMatrix { size, entries: vec![TrigLaurentFun::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        Self::scalar(size, TrigLaurentFun::one())
    }

    /// `f · Id`.
    pub fn scalar(size: usize, f: TrigLaurentFun<T>) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.entries[i * size + i] = f.clone();
        }
        m
    }

    /// Constant matrix from row-major complex entries.
    pub fn constant(size: usize, values: &[C<T>]) -> Self {
        assert_eq!(values.len(), size * size, "constant matrix needs size² entries");
        FunMatrix { size, entries: values.iter().map(|v| TrigLaurentFun::constant(*v)).collect() }
    }

    pub fn from_entries(size: usize, entries: Vec<TrigLaurentFun<T>>) -> Self {
        assert_eq!(entries.len(), size * size, "matrix needs size² entries");
        FunMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &TrigLaurentFun<T> {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, f: TrigLaurentFun<T>) {
        self.entries[row * self.size + col] = f;
    }

    pub fn entries(&self) -> &[TrigLaurentFun<T>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TrigLaurentFun::is_zero)
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, f| m.max(f.max_abs()))
    }

    /// True if no entry depends on any coordinate.
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|f| f.terms().all(|(e, _)| *e == super::Exponents::ONE))
    }

    pub fn map(&self, f: impl Fn(&TrigLaurentFun<T>) -> TrigLaurentFun<T>) -> Self {
        FunMatrix { size: self.size, entries: self.entries.iter().map(f).collect() }
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map(|f| f.scale(s))
    }

    /// Entrywise product with a scalar function.
    pub fn scale_fun(&self, g: &TrigLaurentFun<T>) -> Self {
        self.map(|f| f * g)
    }

    pub fn differentiate(&self, var: Var) -> Self {
        self.map(|f| f.differentiate(var))
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, SymError> {
        self.check(rhs)?;
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] = &out.entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, SymError> {
        self.check(rhs)?;
        Ok(FunMatrix {
            size: self.size,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        })
    }

    fn check(&self, rhs: &Self) -> Result<(), SymError> {
        if self.size == rhs.size {
            Ok(())
        } else {
            Err(SymError::SizeMismatch { left: self.size, right: rhs.size })
        }
    }

    /// Kronecker product with the first factor's index running fastest:
    /// `(A ⊗ B)[s + a·t, s' + a·t'] = A[s,s']·B[t,t']` where `a = A.size()`.
    pub fn kron(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.size, b.size);
        let n = na * nb;
        let mut out = Self::zeros(n);
        for t in 0..nb {
            for tp in 0..nb {
                let bv = b.get(t, tp);
                if bv.is_zero() {
                    continue;
                }
                for s in 0..na {
                    for sp in 0..na {
                        let av = a.get(s, sp);
                        if !av.is_zero() {
                            out.set(s + na * t, sp + na * tp, av * bv);
                        }
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product with a section.
    pub fn apply(&self, v: &[TrigLaurentFun<T>]) -> Vec<TrigLaurentFun<T>> {
        let n = self.size;
        assert_eq!(v.len(), n, "section length must match matrix size");
        (0..n)
            .map(|i| {
                (0..n).fold(TrigLaurentFun::zero(), |acc, j| {
                    let a = &self.entries[i * n + j];
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        &acc + &(a * &v[j])
                    }
                })
            })
            .collect()
    }

    /// Pointwise evaluation, row-major.
    pub fn evaluate(&self, theta1: T, theta2: T, phi: T, psi: T) -> Vec<C<T>> {
        self.entries.iter().map(|f| f.evaluate(theta1, theta2, phi, psi)).collect()
    }
}

impl<T: Real> Add for &FunMatrix<T> {
    type Output = FunMatrix<T>;
    fn add(self, rhs: &FunMatrix<T>) -> FunMatrix<T> {
        self.try_add(rhs).expect("matrix sizes agree")
    }
}

impl<T: Real> Sub for &FunMatrix<T> {
    type Output = FunMatrix<T>;
    fn sub(self, rhs: &FunMatrix<T>) -> FunMatrix<T> {
        self.try_add(&-rhs).expect("matrix sizes agree")
    }
}

impl<T: Real> Mul for &FunMatrix<T> {
    type Output = FunMatrix<T>;
    fn mul(self, rhs: &FunMatrix<T>) -> FunMatrix<T> {
        self.try_mul(rhs).expect("matrix sizes agree")
    }
}

impl<T: Real> Neg for &FunMatrix<T> {
    type Output = FunMatrix<T>;
    fn neg(self) -> FunMatrix<T> {
        self.map(|f| -f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    fn pauli(k: usize) -> FunMatrix<f64> {
        let (o, z, i) = (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 1.0));
        match k {
            1 => FunMatrix::constant(2, &[z, o, o, z]),
            _ => FunMatrix::constant(2, &[z, -i, i, z]),
        }
    }

    #[test]
    fn pauli_matrices_anticommute() {
        let (s1, s2) = (pauli(1), pauli(2));
        assert!((&(&s1 * &s2) + &(&s2 * &s1)).is_zero());
        assert_eq!(&s1 * &s1, FunMatrix::identity(2));
    }

    #[test]
    fn kron_index_convention() {
        let s1 = pauli(1);
        let id = FunMatrix::<f64>::identity(2);
        // A ⊗ 1 is block diagonal with A repeated
        let k = FunMatrix::kron(&s1, &id);
        assert!(k.get(0, 1).max_abs() == 1.0 && k.get(2, 3).max_abs() == 1.0 && k.get(0, 2).is_zero());
        // 1 ⊗ σ couples the two blocks
        let k = FunMatrix::kron(&id, &s1);
        assert!(k.get(0, 2).max_abs() == 1.0 && k.get(1, 3).max_abs() == 1.0 && k.get(0, 1).is_zero());
    }
}
