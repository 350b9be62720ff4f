//! Truncated operator norms of `[D, π(x)]`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{wide, DeformedElement};
use crate::nc_torus::DeformationMatrix;
use crate::operators::{CsrMatrix, ModeGridOperator};

/// `‖[D, π(x)]‖` per truncation radius, with the relative drift between consecutive radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub theta12: f64,
    pub norms: Vec<(u32, f64)>,
    pub drift: Vec<f64>,
}

impl CommutatorReport {
    pub fn max_drift(&self) -> f64 {
        self.drift.iter().copied().fold(0.0, f64::max)
    }
}

/// For each radius `N`, the largest singular value over the coupled blocks `k → k + l`
/// with both modes in `|·|∞ ≤ N`. `d` must be assembled on a mode set containing the
/// largest radius; its Hermitian realization is used.
pub fn commutator_norm(
    d: &ModeGridOperator<f64>,
    x: &DeformedElement<f64>,
    theta12: f64,
    radii: &[u32],
) -> CommutatorReport {
    let theta = DeformationMatrix::two(theta12);
    let s = d.weight_sqrt();
    let nodes = d.grid.nodes();
    let amps: Vec<([i32; 2], Vec<Complex<f64>>)> = x
        .parts()
        .map(|(l, f)| (*l, nodes.iter().map(|&(p, q)| f.evaluate_base(p, q)).collect()))
        .collect();
    let herm = |k: [i32; 2]| -> Option<CsrMatrix<f64>> {
        d.block(k).map(|m| m.map(|r, c, v| v * (s[r] / s[c])).hermitian_part())
    };

    // every coupled block inside the largest radius, once; neighbouring blocks differ
    // little, so each power iteration starts from the previous singular vector
    let rmax = radii.iter().copied().max().unwrap_or(0) as i32;
    let inside = |k: [i32; 2], r: i32| k[0].abs() <= r && k[1].abs() <= r;
    let blocks: Vec<([i32; 2], [i32; 2], f64)> = amps
        .par_iter()
        .flat_map_iter(|(l, a)| {
            let mut start: Option<Vec<Complex<f64>>> = None;
            let mut out = Vec::new();
            for &k in d.modes.modes() {
                let target = [k[0] + l[0], k[1] + l[1]];
                if !inside(k, rmax) || !inside(target, rmax) {
                    continue;
                }
                let (Some(hk), Some(ht)) = (herm(k), herm(target)) else { continue };
                let ph = theta.phase(&wide(*l), &wide(k));
                let diag: Vec<_> = (0..d.block_dim()).map(|j| a[j / d.spinor] * ph).collect();
                let c = ht.map(|_, col, v| v * diag[col]).combine(
                    Complex::new(1.0, 0.0),
                    &hk.map(|row, _, v| diag[row] * v),
                    Complex::new(-1.0, 0.0),
                );
                let (norm, v) = power_iteration(&c, start.take());
                start = v;
                out.push((k, target, norm));
            }
            out
        })
        .collect();
    let norms: Vec<(u32, f64)> = radii
        .iter()
        .map(|&n| {
            let r = n as i32;
            let best = blocks.iter().filter(|(k, t, _)| inside(*k, r) && inside(*t, r)).map(|b| b.2).fold(0.0, f64::max);
            (n, best)
        })
        .collect();
    let drift = norms.windows(2).map(|w| ((w[1].1 - w[0].1) / w[0].1.max(f64::MIN_POSITIVE)).abs()).collect();
    CommutatorReport { theta12, norms, drift }
}

/// Largest singular value by power iteration on `C*C`, optionally warm-started.
fn power_iteration(c: &CsrMatrix<f64>, start: Option<Vec<Complex<f64>>>) -> (f64, Option<Vec<Complex<f64>>>) {
    if c.nnz() == 0 {
        return (0.0, start);
    }
    let ca = c.adjoint();
    let n = c.cols();
    let mut v = start.filter(|v| v.len() == n).unwrap_or_else(|| {
        (0..n).map(|i| Complex::new(1.0 + (i as f64 * 0.37).sin() * 0.5, (i as f64 * 0.11).cos() * 0.3)).collect()
    });
    let mut est = 0.0;
    for _ in 0..2000 {
        let w = ca.matvec(&c.matvec(&v));
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return (0.0, None);
        }
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let next = (norm / vn).sqrt();
        v = w.into_iter().map(|z| z / norm).collect();
        if (next - est).abs() <= 1e-12 * next {
            return (next, Some(v));
        }
        est = next;
    }
    (est, Some(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sphere_generators;
    use crate::operators::{assemble_numeric, build_d_s4, build_d_v, GridSpec, ModeSet};
    use crate::symcalc::{TrigLaurentFun, WeightFun};

    #[test]
    fn invariant_commutes_with_vertical_part() {
        let d = assemble_numeric(&build_d_v::<f64>(), &GridSpec::square(8), &ModeSet::radius(2), &WeightFun::w_x()).unwrap();
        let x = DeformedElement::invariant(TrigLaurentFun::trig(1, 1, 1, 0)).unwrap();
        let r = commutator_norm(&d, &x, 0.3, &[1, 2]);
        assert!(r.norms.iter().all(|&(_, v)| v < 1e-12), "{r:?}");
    }

    #[test]
    fn gradient_norm_at_zero_deformation() {
        // [D, sinψ] is Clifford multiplication by d(sinψ), of pointwise norm cosψ ≤ 1
        let g = GridSpec::square(32);
        let d = assemble_numeric(&build_d_s4::<f64>(), &g, &ModeSet::radius(0), &WeightFun::w_s4()).unwrap();
        let x = DeformedElement::invariant(TrigLaurentFun::sin_psi()).unwrap();
        let r = commutator_norm(&d, &x, 0.0, &[0]);
        assert!((r.norms[0].1 - 1.0).abs() < 0.05, "{r:?}");
    }

    #[test]
    fn generator_norm_is_stable() {
        let g = GridSpec::square(8);
        let d = assemble_numeric(&build_d_s4::<f64>(), &g, &ModeSet::radius(4), &WeightFun::w_s4()).unwrap();
        let a = sphere_generators::<f64>()[0].clone();
        let x = DeformedElement::from_parts([(a.mode, a.amplitude)]).unwrap();
        let r = commutator_norm(&d, &x, 0.237, &[2, 4]);
        assert!(r.max_drift() < 0.01, "{r:?}");
    }
}
