//! Numeric realization of equivariant operators on a Fourier-mode × quadrant-grid basis.

use num_traits::Zero;
use rayon::prelude::*;

use super::{CsrMatrix, GridSpec, ModeSet, NodePlacement, OperatorError};
use crate::scalar::{Real, C};
use crate::symcalc::{FunMatrix, MatrixDiffOp, WeightFun};

/// Block-diagonal operator over torus modes; block `k` acts on `(node, component)` with
/// flat index `node · spinor + component`.
#[derive(Debug, Clone)]
pub struct ModeGridOperator<T: Real> {
    pub grid: GridSpec,
    pub modes: ModeSet,
    pub spinor: usize,
    pub weight: WeightFun<T>,
    blocks: Vec<CsrMatrix<T>>,
}

impl<T: Real> ModeGridOperator<T> {
    pub fn block(&self, k: [i32; 2]) -> Option<&CsrMatrix<T>> {
        self.modes.position(k).map(|i| &self.blocks[i])
    }

    pub fn blocks(&self) -> impl Iterator<Item = ([i32; 2], &CsrMatrix<T>)> {
        self.modes.modes().iter().copied().zip(self.blocks.iter())
    }

    pub fn block_dim(&self) -> usize {
        self.grid.num_nodes() * self.spinor
    }

    pub fn index(&self, node: usize, component: usize) -> usize {
        node * self.spinor + component
    }

    /// Largest entrywise difference over all blocks.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.blocks.iter().zip(&other.blocks).fold(T::zero(), |m, (a, b)| m.max(a.max_abs_diff(b)))
    }

    /// `√(w · cell area)` per flat index: the similarity that turns the weighted inner
    /// product into the Euclidean one.
    pub fn weight_sqrt(&self) -> Vec<T> {
        let areas = self.grid.cell_areas();
        self.grid
            .nodes()
            .iter()
            .zip(areas)
            .flat_map(|(&(p, s), a)| {
                let w = (self.weight.evaluate(T::from_f64_lossy(p), T::from_f64_lossy(s)) * T::from_f64_lossy(a)).sqrt();
                std::iter::repeat_n(w, self.spinor)
            })
            .collect()
    }

    /// `S M S⁻¹` for block `k`.
    pub fn similar_block(&self, k: [i32; 2]) -> Option<CsrMatrix<T>> {
        let s = self.weight_sqrt();
        self.block(k).map(|m| m.map(|r, c, v| v * (s[r] / s[c])))
    }

    /// Hermitian part of `S M S⁻¹`, the selfadjoint realization used by spectral work.
    pub fn hermitian_block(&self, k: [i32; 2]) -> Option<CsrMatrix<T>> {
        self.similar_block(k).map(|m| m.hermitian_part())
    }

    /// Relative non-Hermiticity `‖A − A*‖_max / ‖A‖_max` of `S M S⁻¹`, maximized over blocks.
    pub fn weighted_asymmetry(&self) -> T {
        self.modes
            .modes()
            .iter()
            .filter_map(|&k| {
                let a = self.similar_block(k)?;
                let scale = a.max_abs();
                (scale > T::zero()).then(|| a.max_abs_diff(&a.adjoint()) / scale)
            })
            .fold(T::zero(), T::max)
    }
}

/// Substitutes `∂θj ↦ i nj` per mode, central differences for `∂φ`, `∂ψ` with zero padding
/// outside the grid, and evaluates coefficients at the nodes.
pub fn assemble_numeric<T: Real>(
    p: &MatrixDiffOp<T>,
    grid: &GridSpec,
    modes: &ModeSet,
    weight: &WeightFun<T>,
) -> Result<ModeGridOperator<T>, OperatorError> {
    if p.order() > 1 {
        return Err(OperatorError::OrderTooHigh { order: p.order() });
    }
    for (_, a) in p.terms() {
        if !a.entries().iter().all(|f| f.is_theta_independent()) {
            return Err(OperatorError::NotEquivariant);
        }
    }
    let blocks = modes
        .modes()
        .par_iter()
        .map(|&k| assemble_block(&p.mode_symbol(k[0], k[1]), grid))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ModeGridOperator { grid: grid.clone(), modes: modes.clone(), spinor: p.size(), weight: weight.clone(), blocks })
}

fn evaluate_at<T: Real>(m: &FunMatrix<T>, phi: f64, psi: f64, node: usize) -> Result<Vec<C<T>>, OperatorError> {
    let z = T::zero();
    let v = m.evaluate(z, z, T::from_f64_lossy(phi), T::from_f64_lossy(psi));
    if v.iter().all(|x| x.re.is_finite() && x.im.is_finite()) {
        Ok(v)
    } else {
        Err(OperatorError::SingularCoefficient { node, phi, psi })
    }
}

/// Derivative weights `(offset, weight)` at interior axis position `i` (0-based).
fn axis_stencil(grid: &GridSpec, n: usize, range: (f64, f64), i: usize) -> [(isize, f64); 3] {
    let x = grid.axis_with_boundary(n, range);
    let w = match grid.placement {
        NodePlacement::Uniform => {
            let h = x[1] - x[0];
            [-0.5 / h, 0.0, 0.5 / h]
        }
        NodePlacement::Chebyshev => GridSpec::stencil(&x, i + 1),
    };
    [(-1, w[0]), (0, w[1]), (1, w[2])]
}

fn assemble_block<T: Real>(sym: &MatrixDiffOp<T>, grid: &GridSpec) -> Result<CsrMatrix<T>, OperatorError> {
    let s = sym.size();
    let (np, ns) = (grid.n_phi, grid.n_psi);
    let (phis, psis) = (grid.phi_nodes(), grid.psi_nodes());
    let a0 = sym.zeroth_order();
    let a_phi = sym.coefficient([0, 0, 1, 0]);
    let a_psi = sym.coefficient([0, 0, 0, 1]);
    let mut t: Vec<(usize, usize, C<T>)> = Vec::new();
    let mut push_block = |row_node: usize, col_node: usize, m: &[C<T>], scale: f64| {
        if scale == 0.0 {
            return;
        }
        let sc = T::from_f64_lossy(scale);
        for r in 0..s {
            for c in 0..s {
                let v = m[r * s + c];
                if !v.is_zero() {
                    t.push((row_node * s + r, col_node * s + c, v * sc));
                }
            }
        }
    };
    for ip in 0..np {
        for is in 0..ns {
            let node = grid.node(ip, is);
            let (phi, psi) = (phis[ip], psis[is]);
            if !a0.is_zero() {
                push_block(node, node, &evaluate_at(&a0, phi, psi, node)?, 1.0);
            }
            if !a_phi.is_zero() {
                let m = evaluate_at(&a_phi, phi, psi, node)?;
                for (off, w) in axis_stencil(grid, np, grid.phi_range, ip) {
                    let j = ip as isize + off;
                    if j >= 0 && (j as usize) < np {
                        push_block(node, grid.node(j as usize, is), &m, w);
                    }
                }
            }
            if !a_psi.is_zero() {
                let m = evaluate_at(&a_psi, phi, psi, node)?;
                for (off, w) in axis_stencil(grid, ns, grid.psi_range, is) {
                    let j = is as isize + off;
                    if j >= 0 && (j as usize) < ns {
                        push_block(node, grid.node(ip, j as usize), &m, w);
                    }
                }
            }
        }
    }
    let dim = grid.num_nodes() * s;
    Ok(CsrMatrix::from_triplets(dim, dim, t))
}

/// Pointwise multiplication by a matrix function on the grid, as a single block.
pub fn multiplication_block<T: Real>(m: &FunMatrix<T>, grid: &GridSpec) -> Result<CsrMatrix<T>, OperatorError> {
    let op = MatrixDiffOp::multiplication(m.clone());
    assemble_block(&op, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{build_d_s4, build_d_v, tensor_sum};

    #[test]
    fn vertical_operator_is_pointwise() {
        let g = GridSpec::square(6);
        let op = assemble_numeric(&build_d_v::<f64>(), &g, &ModeSet::radius(1), &WeightFun::w_x()).unwrap();
        for (_, b) in op.blocks() {
            for (r, c, _) in b.triplets() {
                assert_eq!(r / 2, c / 2, "coupling between different nodes");
            }
        }
    }

    #[test]
    fn both_sides_assemble_identically() {
        let g = GridSpec::new(8, 6, NodePlacement::Chebyshev);
        let m = ModeSet::radius(2);
        let a = assemble_numeric(&tensor_sum::<f64>(), &g, &m, &WeightFun::w_s4()).unwrap();
        let b = assemble_numeric(&build_d_s4::<f64>(), &g, &m, &WeightFun::w_s4()).unwrap();
        assert_eq!(a.max_abs_diff(&b), 0.0);
    }

    #[test]
    fn asymmetry_shrinks_under_refinement() {
        let m = ModeSet::radius(1);
        let asym = |n| {
            assemble_numeric(&build_d_s4::<f64>(), &GridSpec::square(n), &m, &WeightFun::w_s4())
                .unwrap()
                .weighted_asymmetry()
        };
        assert!(asym(32) < asym(8));
    }

    #[test]
    fn rejects_second_order_input() {
        let d = build_d_v::<f64>();
        let dd = d.compose(&d).unwrap();
        let r = assemble_numeric(&dd, &GridSpec::square(4), &ModeSet::radius(0), &WeightFun::w_x());
        assert!(matches!(r, Err(OperatorError::OrderTooHigh { .. })));
    }
}
