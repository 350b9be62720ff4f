//! Lowest eigenvalues of the assembled sphere operator, sector by sector.
//!
//! The operator is odd for the grading `diag(1, −1, −1, 1)`, so its eigenvalues come in
//! pairs `±σ` where `σ` runs over the singular values of the chiral block mapping even
//! components to odd ones. The smallest `σ` are found by Lanczos on `B⁻¹B⁻*` with a sparse
//! LU of `B`.

use faer::c64;
use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use super::{assemble_numeric, build_d_s4, CsrMatrix, GridSpec, ModeSet, OperatorError};
use crate::symcalc::WeightFun;

const EVEN: [usize; 2] = [0, 3];
const ODD: [usize; 2] = [1, 2];
const DENSE_LIMIT: usize = 600;

/// Lowest distinct `|λ|` values found in one torus mode sector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorSpectrum {
    pub mode: [i32; 2],
    pub lowest: Vec<f64>,
    /// The chiral block was numerically singular and `0` was reported.
    pub singular: bool,
}

/// A group of nearby values across sectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub center: f64,
    pub spread: f64,
    pub count: usize,
}

/// Chiral block `even → odd` of the Hermitian realization of a 4-spinor block.
pub fn chiral_block(h: &CsrMatrix<f64>, nodes: usize) -> CsrMatrix<f64> {
    let rows: Vec<usize> = (0..nodes).flat_map(|n| ODD.map(|c| n * 4 + c)).collect();
    let cols: Vec<usize> = (0..nodes).flat_map(|n| EVEN.map(|c| n * 4 + c)).collect();
    h.select(&rows, &cols)
}

/// Smallest `count` singular values of a square sparse matrix, ascending.
pub fn lowest_singular_values(b: &CsrMatrix<f64>, count: usize) -> Result<(Vec<f64>, bool), OperatorError> {
    let n = b.rows();
    if n <= DENSE_LIMIT {
        let mut s: Vec<f64> = b.to_dense().singular_values().iter().copied().collect();
        s.sort_by(f64::total_cmp);
        s.truncate(count);
        return Ok((s, false));
    }
    let t: Vec<_> = b.triplets().map(|(r, c, v)| Triplet::new(r, c, c64::new(v.re, v.im))).collect();
    let a = SparseColMat::<usize, c64>::try_new_from_triplets(n, n, &t)
        .map_err(|e| OperatorError::Factorization(format!("{e:?}")))?;
    let lu = match a.sp_lu() {
        Ok(lu) => lu,
        Err(_) => return Ok((vec![0.0], true)),
    };

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let apply = |x: &[c64]| -> Vec<c64> {
        let mut m = faer::Mat::<c64>::from_fn(n, 1, |i, _| x[i]);
        lu.solve_adjoint_in_place(m.as_mut());
        lu.solve_in_place(m.as_mut());
        (0..n).map(|i| m[(i, 0)]).collect()
    };

    let steps = (4 * count + 40).min(n);
    let mut basis: Vec<Vec<c64>> = Vec::with_capacity(steps);
    let mut alpha = Vec::with_capacity(steps);
    let mut beta: Vec<f64> = Vec::with_capacity(steps);
    let mut q: Vec<c64> = (0..n).map(|_| c64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    normalize(&mut q);
    for _ in 0..steps {
        let mut w = apply(&q);
        if w.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Ok((vec![0.0], true));
        }
        let a = dot(&q, &w).re;
        alpha.push(a);
        basis.push(q.clone());
        // full reorthogonalization, twice
        for _ in 0..2 {
            for v in &basis {
                let c = dot(v, &w);
                w.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
            }
        }
        let b = norm(&w);
        if b <= 1e-14 * a.abs().max(1.0) {
            break;
        }
        beta.push(b);
        q = w.into_iter().map(|z| z / b).collect();
    }
    let m = alpha.len();
    let tri = DMatrix::from_fn(m, m, |i, j| match () {
        _ if i == j => alpha[i],
        _ if i + 1 == j => beta[i],
        _ if j + 1 == i => beta[j],
        _ => 0.0,
    });
    let eig = SymmetricEigen::new(tri).eigenvalues;
    let largest = eig.iter().copied().fold(0.0f64, f64::max);
    // inverse iteration amplifies rounding in the kernel direction
    if !largest.is_finite() || largest > 1e24 {
        return Ok((vec![0.0], true));
    }
    let mut s: Vec<f64> = eig.iter().filter(|&&e| e > 0.0).map(|e| 1.0 / e.sqrt()).collect();
    s.sort_by(f64::total_cmp);
    s.truncate(count);
    Ok((s, false))
}

fn dot(a: &[c64], b: &[c64]) -> c64 {
    a.iter().zip(b).fold(c64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y)
}

fn norm(a: &[c64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(a: &mut [c64]) {
    let s = norm(a);
    a.iter_mut().for_each(|z| *z /= s);
}

/// Lowest `|λ|` of the sphere operator in one mode sector, Hermitian realization in the
/// `w_{S⁴}` quadrature inner product.
pub fn sector_spectrum(grid: &GridSpec, mode: [i32; 2], count: usize) -> Result<SectorSpectrum, OperatorError> {
    let modes = ModeSet::from_modes(vec![mode]);
    let op = assemble_numeric(&build_d_s4::<f64>(), grid, &modes, &WeightFun::w_s4())?;
    let h = op.hermitian_block(mode).expect("mode was assembled");
    let b = chiral_block(&h, grid.num_nodes());
    // central differences decouple the grid into sublattices, so every level repeats
    let (raw, singular) = lowest_singular_values(&b, 4 * count)?;
    let mut lowest: Vec<f64> = Vec::new();
    for x in raw {
        if lowest.last().is_none_or(|&y| x - y > 1e-9 * x.max(1.0)) {
            lowest.push(x);
        }
    }
    lowest.truncate(count);
    Ok(SectorSpectrum { mode, lowest, singular })
}

/// Sector spectra for every mode of `modes`, in mode order.
pub fn spectrum(grid: &GridSpec, modes: &ModeSet, count: usize) -> Result<Vec<SectorSpectrum>, OperatorError> {
    modes.modes().iter().map(|&k| sector_spectrum(grid, k, count)).collect()
}

/// Groups sorted values whose neighbours differ by at most `gap`.
pub fn cluster(values: &[f64], gap: f64) -> Vec<Cluster> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some(g) if x - g[g.len() - 1] <= gap => g.push(x),
            _ => out.push(vec![x]),
        }
    }
    out.into_iter()
        .map(|g| Cluster {
            center: g.iter().sum::<f64>() / g.len() as f64,
            spread: g[g.len() - 1] - g[0],
            count: g.len(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn lanczos_agrees_with_dense() {
        // bidiagonal with a growing mass, large enough to take the sparse path
        let n = 700;
        let t = (0..n)
            .flat_map(|i| {
                let mut v = vec![(i, i, Complex::new(1.0 + i as f64, 0.0))];
                if i + 1 < n {
                    v.push((i, i + 1, Complex::new(0.0, 0.2)));
                }
                v
            })
            .collect();
        let b = CsrMatrix::from_triplets(n, n, t);
        let (s, singular) = lowest_singular_values(&b, 3).unwrap();
        assert!(!singular);
        let mut d: Vec<f64> = b.to_dense().singular_values().iter().copied().collect();
        d.sort_by(f64::total_cmp);
        for i in 0..3 {
            assert!((s[i] - d[i]).abs() < 1e-8 * d[i].max(1.0), "{i}: {} vs {}", s[i], d[i]);
        }
    }

    #[test]
    fn clusters_group_neighbours() {
        let c = cluster(&[2.0, 1.0, 2.01, 1.02, 5.0], 0.05);
        assert_eq!(c.iter().map(|c| c.count).collect::<Vec<_>>(), vec![2, 2, 1]);
    }

    #[test]
    fn small_grid_lowest_level() {
        let s = sector_spectrum(&GridSpec::square(10), [0, 0], 2).unwrap();
        assert!(s.lowest[0] > 0.5 && s.lowest[0] < 3.0, "{:?}", s.lowest);
    }
}
