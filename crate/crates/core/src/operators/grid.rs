//! Quadrant grids and torus mode sets.

use serde::{Deserialize, Serialize};

/// Node placement rule along each base axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum NodePlacement {
    /// Equispaced interior nodes, `x_i = a + (i+1)(b−a)/(N+1)`.
    #[default]
    Uniform,
    /// Interior Chebyshev–Gauss–Lobatto points, clustered at the edges.
    Chebyshev,
}

/// Interior tensor grid on the open quadrant `(0, π/2) × (−π/2, π/2)`, or a sub-box of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_phi: usize,
    pub n_psi: usize,
    pub placement: NodePlacement,
    pub phi_range: (f64, f64),
    pub psi_range: (f64, f64),
}

impl GridSpec {
    /// Uniform `n × n` grid on the quadrant.
    pub fn square(n: usize) -> Self {
        Self::new(n, n, NodePlacement::Uniform)
    }

    pub fn new(n_phi: usize, n_psi: usize, placement: NodePlacement) -> Self {
        let h = std::f64::consts::FRAC_PI_2;
        GridSpec { n_phi, n_psi, placement, phi_range: (0.0, h), psi_range: (-h, h) }
    }

    /// Same grid on a different coordinate box.
    pub fn on_box(mut self, phi_range: (f64, f64), psi_range: (f64, f64)) -> Self {
        self.phi_range = phi_range;
        self.psi_range = psi_range;
        self
    }

    pub fn num_nodes(&self) -> usize {
        self.n_phi * self.n_psi
    }

    /// Node coordinates along one axis, including the two boundary points at each end.
    /// Index 0 and `n+1` are the boundary, interior nodes are `1..=n`.
    pub fn axis_with_boundary(&self, n: usize, range: (f64, f64)) -> Vec<f64> {
        let (a, b) = range;
        (0..n + 2)
            .map(|i| match self.placement {
                NodePlacement::Uniform => a + (b - a) * i as f64 / (n as f64 + 1.0),
                NodePlacement::Chebyshev => {
                    let t = std::f64::consts::PI * i as f64 / (n as f64 + 1.0);
                    a + (b - a) * 0.5 * (1.0 - t.cos())
                }
            })
            .collect()
    }

    pub fn phi_nodes(&self) -> Vec<f64> {
        let v = self.axis_with_boundary(self.n_phi, self.phi_range);
        v[1..=self.n_phi].to_vec()
    }

    pub fn psi_nodes(&self) -> Vec<f64> {
        let v = self.axis_with_boundary(self.n_psi, self.psi_range);
        v[1..=self.n_psi].to_vec()
    }

    /// Flat node index, φ-major.
    pub fn node(&self, i_phi: usize, i_psi: usize) -> usize {
        i_phi * self.n_psi + i_psi
    }

    /// `(φ, ψ)` of every node in flat order.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        let (p, s) = (self.phi_nodes(), self.psi_nodes());
        p.iter().flat_map(|&x| s.iter().map(move |&y| (x, y))).collect()
    }

    /// Quadrature weights of the node rule (trapezoid on the node spacing, boundary values zero).
    pub fn cell_areas(&self) -> Vec<f64> {
        let w = |n: usize, r: (f64, f64)| {
            let x = self.axis_with_boundary(n, r);
            (1..=n).map(|i| 0.5 * (x[i + 1] - x[i - 1])).collect::<Vec<_>>()
        };
        let (wp, ws) = (w(self.n_phi, self.phi_range), w(self.n_psi, self.psi_range));
        wp.iter().flat_map(|&a| ws.iter().map(move |&b| a * b)).collect()
    }

    /// Three-point first-derivative stencil at interior node `i` (1-based on the padded axis):
    /// weights for `(x_{i−1}, x_i, x_{i+1})`. Exact for quadratics on any spacing.
    pub fn stencil(x: &[f64], i: usize) -> [f64; 3] {
        let hm = x[i] - x[i - 1];
        let hp = x[i + 1] - x[i];
        [-hp / (hm * (hm + hp)), (hp - hm) / (hm * hp), hm / (hp * (hm + hp))]
    }
}

/// Torus modes `{k ∈ Z² : |k|_∞ ≤ N}` or an explicit list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeSet {
    modes: Vec<[i32; 2]>,
}

impl ModeSet {
    pub fn radius(n: u32) -> Self {
        let r = n as i32;
        let modes = (-r..=r).flat_map(|a| (-r..=r).map(move |b| [a, b])).collect();
        ModeSet { modes }
    }

    pub fn from_modes(mut modes: Vec<[i32; 2]>) -> Self {
        modes.sort_unstable();
        modes.dedup();
        ModeSet { modes }
    }

    pub fn modes(&self) -> &[[i32; 2]] {
        &self.modes
    }

    pub fn contains(&self, k: [i32; 2]) -> bool {
        self.modes.binary_search(&k).is_ok()
    }

    pub fn position(&self, k: [i32; 2]) -> Option<usize> {
        self.modes.binary_search(&k).ok()
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn is_closed_under_negation(&self) -> bool {
        self.modes.iter().all(|k| self.contains([-k[0], -k[1]]))
    }
}
