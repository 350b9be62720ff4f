use nalgebra::DMatrix;
use num_complex::Complex;

use super::{DeformationMatrix, TorusPoly};
use crate::scalar::Real;

/// Left-regular representation on `span{U^k : |k|_∞ ≤ N}` with out-of-range modes dropped.
#[derive(Debug, Clone)]
pub struct TruncatedGNSRep<T: Real> {
    theta: DeformationMatrix<T>,
    radius: usize,
    basis: Vec<Vec<i64>>,
    generators: Vec<DMatrix<Complex<f64>>>,
}

impl<T: Real> TruncatedGNSRep<T> {
    pub fn new(theta: &DeformationMatrix<T>, radius: usize) -> Self {
        let n = theta.rank();
        let r = radius as i64;
        let mut basis = vec![vec![]];
        for _ in 0..n {
            basis = basis
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (-r..=r).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        let mut rep = TruncatedGNSRep { theta: theta.clone(), radius, basis, generators: Vec::new() };
        rep.generators = (0..n).map(|l| rep.matrix(&TorusPoly::generator(theta, l))).collect();
        rep
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Position of `U^k` in the basis, if inside the truncation.
    pub fn index_of(&self, k: &[i64]) -> Option<usize> {
        let r = self.radius as i64;
        let side = 2 * r + 1;
        let mut idx = 0i64;
        for &kj in k {
            if kj.abs() > r {
                return None;
            }
            idx = idx * side + (kj + r);
        }
        Some(idx as usize)
    }

    /// `π_N(U_l)` for zero-based `l`.
    pub fn generator(&self, l: usize) -> &DMatrix<Complex<f64>> {
        &self.generators[l]
    }

    /// Matrix of left multiplication by `x`.
    pub fn matrix(&self, x: &TorusPoly<T>) -> DMatrix<Complex<f64>> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (col, k) in self.basis.iter().enumerate() {
            for (j, v) in x.terms() {
                let out: Vec<i64> = j.iter().zip(k).map(|(a, b)| a + b).collect();
                if let Some(row) = self.index_of(&out) {
                    let ph = *v * self.theta.phase(j, k);
                    m[(row, col)] += Complex::new(ph.re.to_f64_lossy(), ph.im.to_f64_lossy());
                }
            }
        }
        m
    }

    /// Operator norm of `π_N(x)` restricted to inputs with `|k|_∞ ≤ N − margin`.
    pub fn interior_norm(&self, x: &TorusPoly<T>, margin: i64) -> T {
        let inner = self.radius as i64 - margin;
        if inner < 0 {
            return T::zero();
        }
        let m = self.matrix(x);
        let cols: Vec<usize> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, k)| k.iter().all(|v| v.abs() <= inner))
            .map(|(i, _)| i)
            .collect();
        let block = m.select_columns(&cols);
        let sv = block.singular_values();
        T::from_f64_lossy(sv.iter().cloned().fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_partial_isometries() {
        let th = DeformationMatrix::two(0.37);
        let rep = TruncatedGNSRep::new(&th, 3);
        for l in 0..2 {
            let u = rep.generator(l);
            let p = u.adjoint() * u;
            // a projection: the shift only loses the boundary layer
            assert!((&p * &p - &p).norm() < 1e-13);
            let rank: f64 = p.diagonal().iter().map(|z| z.re).sum();
            assert!((rank - 42.0).abs() < 1e-12);
        }
    }

    #[test]
    fn interior_action_matches_product() {
        let th = DeformationMatrix::two(0.37);
        let rep = TruncatedGNSRep::new(&th, 3);
        let u1 = TorusPoly::generator(&th, 0);
        let v = TorusPoly::monomial(&th, &[1, -2], Complex::new(1.0, 0.0));
        let prod = &u1 * &v;
        let col = rep.index_of(&[1, -2]).unwrap();
        let row = rep.index_of(&[2, -2]).unwrap();
        let got = rep.generator(0)[(row, col)];
        let want = prod.coefficient(&[2, -2]);
        assert!((got - want).norm() < 1e-14);
    }
}
