//! The noncommutative n-torus: twisted Laurent polynomials in unitaries `U_1..U_n`.

mod gns;

pub use gns::TruncatedGNSRep;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{Real, C};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TorusError {
    #[error("deformation matrices differ")]
    MismatchedDeformation,
    #[error("derivation index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("deformation matrix is not skew-symmetric (defect {defect})")]
    NotSkew { defect: f64 },
    #[error("exponent has length {got}, expected {n}")]
    WrongRank { got: usize, n: usize },
}

/// Skew-symmetric real `n×n` matrix `θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformationMatrix<T: Real> {
    n: usize,
    theta: Vec<T>,
}

impl<T: Real> DeformationMatrix<T> {
    /// Row-major entries; must be skew-symmetric with zero diagonal.
    pub fn new(n: usize, entries: Vec<T>) -> Result<Self, TorusError> {
        assert_eq!(entries.len(), n * n, "deformation matrix needs n² entries");
        let mut defect = T::zero();
        for i in 0..n {
            for j in 0..n {
                defect = defect.max((entries[i * n + j] + entries[j * n + i]).abs());
            }
        }
        if defect > T::epsilon() {
            return Err(TorusError::NotSkew { defect: defect.to_f64_lossy() });
        }
        Ok(DeformationMatrix { n, theta: entries })
    }

    pub fn zero(n: usize) -> Self {
        DeformationMatrix { n, theta: vec![T::zero(); n * n] }
    }

    /// Two-torus with `θ_12 = t`, `θ_21 = −t`.
    pub fn two(t: T) -> Self {
        DeformationMatrix { n: 2, theta: vec![T::zero(), t, -t, T::zero()] }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `θ_{ml}` with zero-based indices.
    pub fn get(&self, m: usize, l: usize) -> T {
        self.theta[m * self.n + l]
    }

    /// Phase of `U^k U^l = λ(k,l) U^{k+l}`: `exp(2πi Σ_{m>j} θ_{mj} k_m l_j)`.
    pub fn phase(&self, k: &[i64], l: &[i64]) -> C<T> {
        let mut s = T::zero();
        for m in 0..self.n {
            for j in 0..m {
                s += self.get(m, j) * T::from_i64(k[m] * l[j]).unwrap();
            }
        }
        let arg = T::TAU() * s;
        Complex::new(arg.cos(), arg.sin())
    }
}

/// Element `Σ λ_k U^k` of the polynomial algebra, `U^k = U_1^{k_1}⋯U_n^{k_n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoly<T: Real> {
    theta: DeformationMatrix<T>,
    coeffs: BTreeMap<Vec<i64>, C<T>>,
}

impl<T: Real> TorusPoly<T> {
    pub fn zero(theta: &DeformationMatrix<T>) -> Self {
        TorusPoly { theta: theta.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(theta: &DeformationMatrix<T>) -> Self {
        Self::monomial(theta, &vec![0; theta.n], C::one())
    }

    pub fn monomial(theta: &DeformationMatrix<T>, k: &[i64], coeff: C<T>) -> Self {
        let mut p = Self::zero(theta);
        p.accumulate(k.to_vec(), coeff);
        p
    }

    /// Generator `U_l` with zero-based `l`.
    pub fn generator(theta: &DeformationMatrix<T>, l: usize) -> Self {
        let mut k = vec![0; theta.n];
        k[l] = 1;
        Self::monomial(theta, &k, C::one())
    }

    pub fn from_terms(theta: &DeformationMatrix<T>, terms: impl IntoIterator<Item = (Vec<i64>, C<T>)>) -> Result<Self, TorusError> {
        let mut p = Self::zero(theta);
        for (k, v) in terms {
            if k.len() != theta.n {
                return Err(TorusError::WrongRank { got: k.len(), n: theta.n });
            }
            p.accumulate(k, v);
        }
        Ok(p)
    }

    fn accumulate(&mut self, k: Vec<i64>, v: C<T>) {
        let e = self.coeffs.entry(k.clone()).or_insert_with(C::zero);
        *e += v;
        if e.norm() <= T::ring_threshold() {
            self.coeffs.remove(&k);
        }
    }

    pub fn deformation(&self) -> &DeformationMatrix<T> {
        &self.theta
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &C<T>)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, k: &[i64]) -> C<T> {
        self.coeffs.get(k).copied().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `max_k |k|_∞` over the support.
    pub fn degree(&self) -> i64 {
        self.coeffs.keys().flat_map(|k| k.iter().map(|x| x.abs())).max().unwrap_or(0)
    }

    pub fn max_abs(&self) -> T {
        self.coeffs.values().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    pub fn scale(&self, s: C<T>) -> Self {
        let mut p = Self::zero(&self.theta);
        for (k, v) in &self.coeffs {
            p.accumulate(k.clone(), *v * s);
        }
        p
    }

    pub fn product(&self, rhs: &Self) -> Result<Self, TorusError> {
        self.same(rhs)?;
        let mut p = Self::zero(&self.theta);
        for (k, a) in &self.coeffs {
            for (l, b) in &rhs.coeffs {
                let kl: Vec<i64> = k.iter().zip(l).map(|(x, y)| x + y).collect();
                p.accumulate(kl, *a * *b * self.theta.phase(k, l));
            }
        }
        Ok(p)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, TorusError> {
        self.same(rhs)?;
        let mut p = self.clone();
        for (k, v) in &rhs.coeffs {
            p.accumulate(k.clone(), *v);
        }
        Ok(p)
    }

    /// Adjoint: `(λU^k)* = conj(λ)·λ(k,k)·U^{−k}` so that `(U^k)*U^k = 1`.
    pub fn star(&self) -> Self {
        let mut p = Self::zero(&self.theta);
        for (k, v) in &self.coeffs {
            let neg: Vec<i64> = k.iter().map(|x| -x).collect();
            p.accumulate(neg, v.conj() * self.theta.phase(k, k));
        }
        p
    }

    /// The trace `τ(x) = λ_0`.
    pub fn trace(&self) -> C<T> {
        self.coefficient(&vec![0; self.theta.n])
    }

    /// `δ_j` with one-based `j`.
    pub fn derivation(&self, j: usize) -> Result<Self, TorusError> {
        if j == 0 || j > self.theta.n {
            return Err(TorusError::IndexOutOfRange { index: j, n: self.theta.n });
        }
        let mut p = Self::zero(&self.theta);
        for (k, v) in &self.coeffs {
            p.accumulate(k.clone(), *v * T::from_i64(k[j - 1]).unwrap());
        }
        Ok(p)
    }

    /// `τ(x* y)`.
    pub fn gns_inner(&self, rhs: &Self) -> Result<C<T>, TorusError> {
        Ok(self.star().product(rhs)?.trace())
    }

    /// `Σ_{i ≤ m} ‖π_N(δ^i x)‖` with norms taken on the interior block `|k|_∞ ≤ N − deg(x)`.
    pub fn seminorm(&self, m: &[u32], n: usize) -> Result<T, TorusError> {
        if m.len() != self.theta.n {
            return Err(TorusError::WrongRank { got: m.len(), n: self.theta.n });
        }
        let rep = TruncatedGNSRep::new(&self.theta, n);
        let mut total = T::zero();
        for i in multi_indices_below(m) {
            let mut d = self.clone();
            for (j, &count) in i.iter().enumerate() {
                for _ in 0..count {
                    d = d.derivation(j + 1)?;
                }
            }
            total += rep.interior_norm(&d, self.degree());
        }
        Ok(total)
    }

    fn same(&self, rhs: &Self) -> Result<(), TorusError> {
        if self.theta == rhs.theta {
            Ok(())
        } else {
            Err(TorusError::MismatchedDeformation)
        }
    }
}

fn multi_indices_below(m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &mi in m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=mi).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

impl<T: Real> Add for &TorusPoly<T> {
    type Output = TorusPoly<T>;
    fn add(self, rhs: &TorusPoly<T>) -> TorusPoly<T> {
        self.try_add(rhs).expect("same deformation")
    }
}

impl<T: Real> Sub for &TorusPoly<T> {
    type Output = TorusPoly<T>;
    fn sub(self, rhs: &TorusPoly<T>) -> TorusPoly<T> {
        self.try_add(&rhs.scale(-C::<T>::one())).expect("same deformation")
    }
}

impl<T: Real> Mul for &TorusPoly<T> {
    type Output = TorusPoly<T>;
    fn mul(self, rhs: &TorusPoly<T>) -> TorusPoly<T> {
        self.product(rhs).expect("same deformation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(th: &DeformationMatrix<f64>, k: &[i64]) -> TorusPoly<f64> {
        TorusPoly::monomial(th, k, Complex::new(1.0, 0.0))
    }

    #[test]
    fn half_twist_anticommutes() {
        let th = DeformationMatrix::two(0.5);
        let (u1, u2) = (TorusPoly::generator(&th, 0), TorusPoly::generator(&th, 1));
        let p = &u2 * &u1;
        assert!((p.coefficient(&[1, 1]) - Complex::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((&(&u1 * &u2) + &p).max_abs() < 1e-15);
    }

    #[test]
    fn star_inverts_monomials() {
        let th = DeformationMatrix::two(1.0 / 3.0);
        let x = u(&th, &[1, 1]);
        let one = &x.star() * &x;
        assert!((&one - &TorusPoly::one(&th)).max_abs() < 1e-14);
        assert_eq!(TorusPoly::generator(&th, 0).star(), u(&th, &[-1, 0]));
    }

    #[test]
    fn trace_and_derivations() {
        let th = DeformationMatrix::two(0.2);
        let s = &TorusPoly::generator(&th, 0) + &TorusPoly::generator(&th, 1);
        assert!((s.star().product(&s).unwrap().trace() - Complex::new(2.0, 0.0)).norm() < 1e-14);
        assert_eq!(u(&th, &[2, 3]).derivation(1).unwrap(), u(&th, &[2, 3]).scale(Complex::new(2.0, 0.0)));
        assert!(TorusPoly::one(&th).derivation(2).unwrap().is_zero());
        assert!(matches!(s.derivation(3), Err(TorusError::IndexOutOfRange { .. })));
    }

    #[test]
    fn mismatched_deformations_are_rejected() {
        let a = TorusPoly::generator(&DeformationMatrix::two(0.1), 0);
        let b = TorusPoly::generator(&DeformationMatrix::two(0.2), 0);
        assert_eq!(a.product(&b), Err(TorusError::MismatchedDeformation));
        assert!(DeformationMatrix::new(2, vec![0.0, 0.1, 0.1, 0.0]).is_err());
    }

    #[test]
    fn seminorm_examples() {
        let th = DeformationMatrix::<f64>::two(0.3);
        let u1 = TorusPoly::generator(&th, 0);
        assert!((u1.seminorm(&[0, 0], 4).unwrap() - 1.0).abs() < 1e-12);
        assert!((u1.seminorm(&[1, 0], 4).unwrap() - 2.0).abs() < 1e-12);
    }
}
