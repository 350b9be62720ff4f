//! Local positivity and the Gårding-type estimate on localized sections.
//!
//! Both work in the Euclidean frame of the `w_{S⁴}` quadrature inner product, where the
//! assembled vertical lift `V` and horizontal lift `H` are replaced by their Hermitian
//! realizations. A localized section `ζ = (f ∘ q) ξ` lives on the grid nodes in the support
//! box of `f`.

use faer::{c64, Mat, Side};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{kappa_bound, Check, LocalizingElement, Mutation, VerificationReport, VerifyError};
use crate::operators::{assemble_numeric, CsrMatrix, GridSpec, ModeGridOperator, ModeSet, TensorSumParts};
use crate::symcalc::{MatrixDiffOp, WeightFun};

type Cx = Complex<f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityConfig {
    pub grid: usize,
    pub radius: u32,
    pub trials: usize,
    pub seed: u64,
}

impl Default for PositivityConfig {
    fn default() -> Self {
        PositivityConfig { grid: 32, radius: 3, trials: 100, seed: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GardingConfig {
    pub grids: Vec<usize>,
    pub radius: u32,
    pub family: usize,
    pub seed: u64,
}

impl Default for GardingConfig {
    fn default() -> Self {
        GardingConfig { grids: vec![16, 32, 64], radius: 2, family: 12, seed: 1 }
    }
}

struct Lifts {
    grid: GridSpec,
    modes: ModeSet,
    v: ModeGridOperator<f64>,
    h: ModeGridOperator<f64>,
    s: Vec<f64>,
}

impl Lifts {
    fn new(parts: &TensorSumParts<f64>, n: usize, radius: u32) -> Self {
        let grid = GridSpec::square(n);
        let modes = ModeSet::radius(radius);
        let w = WeightFun::w_s4();
        let assemble = |p: &MatrixDiffOp<f64>| assemble_numeric(&TensorSumParts::bookkeeping(p), &grid, &modes, &w).expect("first-order operator");
        let v = assemble(&parts.vertical());
        let h = assemble(&parts.horizontal());
        let s = v.weight_sqrt();
        Lifts { grid, modes, v, h, s }
    }

    fn herm(&self, op: &ModeGridOperator<f64>, k: [i32; 2]) -> CsrMatrix<f64> {
        let s = &self.s;
        op.block(k).expect("assembled mode").map(|r, c, v| v * (s[r] / s[c])).hermitian_part()
    }

    /// Flat indices of every component at the nodes inside the support box.
    fn support(&self, x: &LocalizingElement) -> Vec<usize> {
        self.grid
            .nodes()
            .iter()
            .enumerate()
            .filter(|(_, &(p, q))| x.contains(p, q))
            .flat_map(|(n, _)| (0..4).map(move |c| n * 4 + c))
            .collect()
    }

    /// A random smooth section `f · Σ a_j b_j(φ, ψ)` per component, in the Euclidean frame.
    fn random_section(&self, x: &LocalizingElement, rng: &mut impl Rng) -> Vec<Cx> {
        let mut coeff = || Cx::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let a: Vec<[Cx; 5]> = (0..4).map(|_| [coeff(), coeff(), coeff(), coeff(), coeff()]).collect();
        self.grid
            .nodes()
            .iter()
            .enumerate()
            .flat_map(|(n, &(p, q))| {
                let basis = [1.0, (2.0 * p).cos(), (2.0 * p).sin(), q.sin(), q.cos()];
                let f = x.value(p, q);
                let s = self.s[n * 4];
                a.iter().map(move |ac| ac.iter().zip(basis).map(|(c, b)| c * b).sum::<Cx>() * (f * s)).collect::<Vec<_>>()
            })
            .collect()
    }

    /// Discrete `H¹` seminorm squared of the section behind a Euclidean-frame vector.
    fn h1_seminorm_sq(&self, y: &[Cx]) -> f64 {
        let (np, ns) = (self.grid.n_phi, self.grid.n_psi);
        let (p, q) = (self.grid.phi_nodes(), self.grid.psi_nodes());
        let z = |ip: usize, is: usize, c: usize| {
            let i = self.grid.node(ip, is) * 4 + c;
            y[i] / self.s[i]
        };
        let mut sum = 0.0;
        for ip in 0..np {
            for is in 0..ns {
                let w = self.s[self.grid.node(ip, is) * 4].powi(2);
                for c in 0..4 {
                    if ip + 1 < np {
                        sum += (z(ip + 1, is, c) - z(ip, is, c)).norm_sqr() / (p[ip + 1] - p[ip]).powi(2) * w;
                    }
                    if is + 1 < ns {
                        sum += (z(ip, is + 1, c) - z(ip, is, c)).norm_sqr() / (q[is + 1] - q[is]).powi(2) * w;
                    }
                }
            }
        }
        sum
    }
}

fn norm_sq(v: &[Cx]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn dot(a: &[Cx], b: &[Cx]) -> Cx {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `2⟨Vζ, (V + H)ζ⟩ ≥ −κ_x‖ζ‖²`, checked through the smallest eigenvalue of the localized
/// form `2V² + VH + HV` and on random smooth sections with a `10h²|ζ|²_{H¹}` allowance.
pub fn verify_local_positivity(
    x: &LocalizingElement,
    cfg: &PositivityConfig,
    mutation: Mutation,
) -> Result<VerificationReport, VerifyError> {
    let kappa = kappa_bound(x)?;
    let lifts = Lifts::new(&mutation.parts(), cfg.grid, cfg.radius);
    let support = lifts.support(x);
    let mut report = VerificationReport::new("positivity")
        .param("grid", cfg.grid)
        .param("modes", cfg.radius)
        .param("trials", cfg.trials)
        .param("seed", cfg.seed)
        .param("support", format!("{:?}x{:?}", x.phi, x.psi))
        .param("kappa", kappa)
        .param("mutation", mutation.name());

    let restricted: Vec<([i32; 2], CsrMatrix<f64>, CsrMatrix<f64>)> = lifts
        .modes
        .modes()
        .par_iter()
        .map(|&k| {
            let v = lifts.herm(&lifts.v, k).select(&support, &support);
            let h = lifts.herm(&lifts.h, k).select(&support, &support);
            (k, v, h)
        })
        .collect();

    let min_eig = restricted
        .par_iter()
        .map(|(_, v, h)| min_eigenvalue(v, h))
        .reduce(|| f64::INFINITY, f64::min);
    report.push(Check::new("minimum eigenvalue of localized form", -min_eig, 1.05 * kappa).with("min_eigenvalue", min_eig));

    let zero = restricted.iter().find(|(k, ..)| *k == [0, 0]).map(|(_, v, _)| v.max_abs()).unwrap_or(0.0);
    report.push(Check::new("mode zero form vanishes", zero, 0.0));

    let h = (lifts.grid.phi_nodes()[1] - lifts.grid.phi_nodes()[0]).max(lifts.grid.psi_nodes()[1] - lifts.grid.psi_nodes()[0]);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = f64::NEG_INFINITY;
    let mut failures = 0usize;
    for _ in 0..cfg.trials {
        let (mut q, mut nz, mut h1) = (0.0, 0.0, 0.0);
        for (_, v, hm) in &restricted {
            let full = lifts.random_section(x, &mut rng);
            let y: Vec<Cx> = support.iter().map(|&i| full[i]).collect();
            let (a, b) = (v.matvec(&y), hm.matvec(&y));
            q += 2.0 * norm_sq(&a) + 2.0 * dot(&a, &b).re;
            nz += norm_sq(&y);
            h1 += lifts.h1_seminorm_sq(&full);
        }
        let violation = (-q - 10.0 * h * h * h1) / nz;
        worst = worst.max(violation);
        if violation > kappa {
            failures += 1;
        }
    }
    report.push(Check::new("random sections", worst, kappa).with("failures", failures));
    Ok(report)
}

/// `sup ‖Vζ‖ / (‖ζ‖ + ‖(V + H)ζ‖)` over a fixed family of localized sections, per grid;
/// passes if the measured constant drifts by less than 10% between consecutive grids.
pub fn verify_garding(x: &LocalizingElement, cfg: &GardingConfig, mutation: Mutation) -> VerificationReport {
    let parts = mutation.parts();
    let mut report = VerificationReport::new("garding")
        .param("grids", format!("{:?}", cfg.grids))
        .param("modes", cfg.radius)
        .param("family", cfg.family)
        .param("seed", cfg.seed)
        .param("mutation", mutation.name());
    let mut constants = Vec::new();
    for &n in &cfg.grids {
        let lifts = Lifts::new(&parts, n, cfg.radius);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut best: f64 = 0.0;
        let r = cfg.radius as i32;
        for _ in 0..cfg.family {
            let k = [rng.random_range(-r..=r), rng.random_range(-r..=r)];
            let y = lifts.random_section(x, &mut rng);
            best = best.max(garding_ratio(&lifts, k, &y));
        }
        let y = lifts.random_section(x, &mut rng);
        report.push(Check::new(format!("mode zero ratio grid={n}"), garding_ratio(&lifts, [0, 0], &y), 1e-12));
        constants.push((n, best));
    }
    for w in constants.windows(2) {
        let drift = ((w[1].1 - w[0].1) / w[0].1).abs();
        report.push(
            Check::new(format!("drift {}->{}", w[0].0, w[1].0), drift, 0.10).with("c_coarse", w[0].1).with("c_fine", w[1].1),
        );
    }
    report
}

/// Smallest eigenvalue of `2V² + VH + HV`.
fn min_eigenvalue(v: &CsrMatrix<f64>, h: &CsrMatrix<f64>) -> f64 {
    let dense = |m: &CsrMatrix<f64>| {
        let mut d = Mat::<c64>::zeros(m.rows(), m.cols());
        for (r, c, z) in m.triplets() {
            d[(r, c)] = c64::new(z.re, z.im);
        }
        d
    };
    let (v, h) = (dense(v), dense(h));
    let vh = &v * &h;
    let q = (&v * &v) * faer::Scale(c64::new(2.0, 0.0)) + &vh + vh.adjoint();
    q.self_adjoint_eigenvalues(Side::Lower).expect("eigenvalues converge").first().copied().unwrap_or(f64::INFINITY)
}

fn garding_ratio(lifts: &Lifts, k: [i32; 2], y: &[Cx]) -> f64 {
    let v = lifts.herm(&lifts.v, k);
    let h = lifts.herm(&lifts.h, k);
    let vy = v.matvec(y);
    let total: Vec<Cx> = vy.iter().zip(h.matvec(y)).map(|(a, b)| a + b).collect();
    norm_sq(&vy).sqrt() / (norm_sq(y).sqrt() + norm_sq(&total).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positivity_on_a_small_grid() {
        let cfg = PositivityConfig { grid: 16, radius: 1, trials: 5, seed: 3 };
        let r = verify_local_positivity(&LocalizingElement::standard(), &cfg, Mutation::None).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn garding_ratio_is_bounded() {
        let cfg = GardingConfig { grids: vec![12, 24], radius: 1, family: 4, seed: 5 };
        let r = verify_garding(&LocalizingElement::standard(), &cfg, Mutation::None);
        assert!(r.checks.iter().filter(|c| c.name.starts_with("mode zero")).all(Check::passed), "{r:?}");
    }
}
