//! Identification of the tensor-product basis with four-component spinors on the base grid.

use crate::scalar::{Real, C};
use crate::symcalc::WeightFun;

use super::{GridSpec, ModeSet};

/// Pure index bijection `(mode, node, s) ⊗ t ↦ (mode, node, c = s + 2t)`, zero-based.
///
/// The first tensor factor runs fastest, matching the Kronecker convention used by the
/// symbolic lifts, so `λ ⊗ (μ₁, μ₂) ↦ (λμ₁, λμ₂)`.
#[derive(Debug, Clone)]
pub struct WUnitary {
    pub grid: GridSpec,
    pub modes: ModeSet,
}

/// Constructor mirroring the operation name.
pub fn w_unitary(grid: &GridSpec, modes: &ModeSet) -> WUnitary {
    WUnitary { grid: grid.clone(), modes: modes.clone() }
}

impl WUnitary {
    pub fn dim(&self) -> usize {
        self.modes.len() * self.grid.num_nodes() * 4
    }

    /// Flat index in the product basis: `((mode · nodes + node) · 2 + s) · 2 + t`.
    pub fn product_index(&self, mode: usize, node: usize, s: usize, t: usize) -> usize {
        ((mode * self.grid.num_nodes() + node) * 2 + s) * 2 + t
    }

    /// Flat index in the spinor basis: `(mode · nodes + node) · 4 + c`.
    pub fn spinor_index(&self, mode: usize, node: usize, c: usize) -> usize {
        (mode * self.grid.num_nodes() + node) * 4 + c
    }

    pub fn component(s: usize, t: usize) -> usize {
        s + 2 * t
    }

    pub fn map_index(&self, product: usize) -> usize {
        let t = product % 2;
        let s = (product / 2) % 2;
        let rest = product / 4;
        let (mode, node) = (rest / self.grid.num_nodes(), rest % self.grid.num_nodes());
        self.spinor_index(mode, node, Self::component(s, t))
    }

    pub fn apply<T: Real>(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.dim(), "vector length must match the product basis");
        let mut out = vec![C::new(T::zero(), T::zero()); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.map_index(i)] = *x;
        }
        out
    }

    /// Squared norm in the product basis with `w_X · w_B` quadrature weights.
    pub fn product_norm_sq<T: Real>(&self, v: &[C<T>]) -> T {
        self.weighted(v, |p, s| WeightFun::<T>::w_x().evaluate(p, s) * WeightFun::<T>::w_b().evaluate(p, s))
    }

    /// Squared norm in the spinor basis with `w_{S⁴}` quadrature weights.
    pub fn spinor_norm_sq<T: Real>(&self, v: &[C<T>]) -> T {
        self.weighted(v, |p, s| WeightFun::<T>::w_s4().evaluate(p, s))
    }

    fn weighted<T: Real>(&self, v: &[C<T>], w: impl Fn(T, T) -> T) -> T {
        let nodes = self.grid.nodes();
        let areas = self.grid.cell_areas();
        let n = self.grid.num_nodes();
        v.iter().enumerate().fold(T::zero(), |acc, (i, x)| {
            let node = (i / 4) % n;
            let (p, s) = nodes[node];
            let q = w(T::from_f64_lossy(p), T::from_f64_lossy(s)) * T::from_f64_lossy(areas[node]);
            acc + x.norm_sqr() * q
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn first_basis_vector_goes_to_first_component() {
        let w = w_unitary(&GridSpec::square(4), &ModeSet::radius(1));
        assert_eq!(w.map_index(w.product_index(3, 5, 0, 0)), w.spinor_index(3, 5, 0));
        assert_eq!(w.map_index(w.product_index(3, 5, 1, 1)), w.spinor_index(3, 5, 3));
        let mut seen = vec![false; w.dim()];
        for i in 0..w.dim() {
            let j = w.map_index(i);
            assert!(!seen[j]);
            seen[j] = true;
        }
    }

    #[test]
    fn preserves_weighted_norm() {
        let w = w_unitary(&GridSpec::square(6), &ModeSet::radius(1));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let v: Vec<C<f64>> = (0..w.dim()).map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let a = w.product_norm_sq(&v);
            let b = w.spinor_norm_sq(&w.apply(&v));
            assert!((a - b).abs() <= 1e-12 * a);
        }
    }
}
