//! Clifford generators in the fixed representation used throughout the crate.

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::{Real, C};
use crate::symcalc::FunMatrix;

/// Pauli matrices, the four 4×4 gamma matrices, the gradings and `Γ`.
#[derive(Debug, Clone)]
pub struct GammaSet<T: Real> {
    pub sigma: [FunMatrix<T>; 2],
    pub gamma: [FunMatrix<T>; 4],
    /// Grading `γ_X = diag(1, −1)` of the vertical module; also the base grading.
    pub gamma_x: FunMatrix<T>,
    /// Total grading `diag(1, −1, −1, 1)`.
    pub grading: FunMatrix<T>,
    /// Sign bookkeeping unitary `Γ = diag(1, 1, 1, −1)`.
    pub big_gamma: FunMatrix<T>,
}

impl<T: Real> Default for GammaSet<T> {
    fn default() -> Self {
        Self::new()
    }
}

fn parse<T: Real>(n: usize, rows: &[&[(i8, i8)]]) -> FunMatrix<T> {
    let v: Vec<C<T>> = rows
        .iter()
        .flat_map(|r| r.iter().map(|&(a, b)| Complex::new(T::from_i8(a).unwrap(), T::from_i8(b).unwrap())))
        .collect();
    FunMatrix::constant(n, &v)
}

impl<T: Real> GammaSet<T> {
    pub fn new() -> Self {
        const O: (i8, i8) = (0, 0);
        const P: (i8, i8) = (1, 0);
        const M: (i8, i8) = (-1, 0);
        const I: (i8, i8) = (0, 1);
        const J: (i8, i8) = (0, -1);
        let s1 = parse(2, &[&[O, P], &[P, O]]);
        let s2 = parse(2, &[&[O, J], &[I, O]]);
        let g1 = parse(4, &[&[O, P, O, O], &[P, O, O, O], &[O, O, O, M], &[O, O, M, O]]);
        let g2 = parse(4, &[&[O, J, O, O], &[I, O, O, O], &[O, O, O, I], &[O, O, J, O]]);
        let g3 = parse(4, &[&[O, O, P, O], &[O, O, O, P], &[P, O, O, O], &[O, P, O, O]]);
        let g4 = parse(4, &[&[O, O, J, O], &[O, O, O, J], &[I, O, O, O], &[O, I, O, O]]);
        let diag = |d: &[i8]| {
            let n = d.len();
            let mut v = vec![C::<T>::zero(); n * n];
            for (i, &s) in d.iter().enumerate() {
                v[i * n + i] = Complex::new(T::from_i8(s).unwrap(), T::zero());
            }
            FunMatrix::constant(n, &v)
        };
        GammaSet {
            sigma: [s1, s2],
            gamma: [g1, g2, g3, g4],
            gamma_x: diag(&[1, -1]),
            grading: diag(&[1, -1, -1, 1]),
            big_gamma: diag(&[1, 1, 1, -1]),
        }
    }

    /// Clifford cube `γ^i γ^j γ^k`, zero-based indices.
    pub fn cube(&self, i: usize, j: usize, k: usize) -> FunMatrix<T> {
        &(&self.gamma[i] * &self.gamma[j]) * &self.gamma[k]
    }

    /// Constant matrix as plain complex entries, row-major.
    pub fn dense(m: &FunMatrix<T>) -> Vec<C<T>> {
        m.entries()
            .iter()
            .map(|f| if f.is_zero() { C::zero() } else { f.coefficient(&crate::symcalc::Exponents::ONE) })
            .collect()
    }
}
