//! The tensor sum against the sphere's Dirac operator, exactly and on grids.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::identities::ring_residual;
use super::{Check, Mutation, VerificationReport};
use crate::operators::{assemble_numeric, build_d_s4, GridSpec, ModeSet, NodePlacement, TensorSumParts};
use crate::symcalc::WeightFun;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Symbolic,
    Numeric,
    #[default]
    Both,
}

/// Grids and mode radii for the numeric backend.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericConfig {
    pub grids: Vec<usize>,
    pub radii: Vec<u32>,
    pub placement: NodePlacement,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { grids: vec![16, 32], radii: vec![1, 2, 3], placement: NodePlacement::Uniform }
    }
}

/// Symbolic: `tensor_sum − D_{S⁴}` vanishes in the ring. Numeric: the vertical and
/// horizontal lifts are assembled separately, summed, and compared entrywise with the
/// assembled sphere operator.
pub fn verify_factorization(backend: Backend, cfg: &NumericConfig, mutation: Mutation) -> VerificationReport {
    let parts = mutation.parts();
    let mut report = VerificationReport::new("factorization").param("backend", format!("{backend:?}").to_lowercase()).param("mutation", mutation.name());
    let target = build_d_s4::<f64>();
    if backend != Backend::Numeric {
        let diff = &parts.tensor_sum() - &target;
        report.push(Check::new("symbolic", ring_residual(&diff), 1e-13));
    }
    if backend != Backend::Symbolic {
        let vertical = TensorSumParts::bookkeeping(&parts.vertical());
        let horizontal = TensorSumParts::bookkeeping(&parts.horizontal());
        let w = WeightFun::w_s4();
        for &n in &cfg.grids {
            for &r in &cfg.radii {
                let grid = GridSpec::new(n, n, cfg.placement);
                let modes = ModeSet::radius(r);
                let assemble = |p| assemble_numeric(p, &grid, &modes, &w).expect("first-order equivariant operator");
                let (v, h, d) = (assemble(&vertical), assemble(&horizontal), assemble(&target));
                let one = Complex::new(1.0, 0.0);
                let worst = modes
                    .modes()
                    .iter()
                    .map(|&k| {
                        let sum = v.block(k).unwrap().combine(one, h.block(k).unwrap(), one);
                        sum.max_abs_diff(d.block(k).unwrap())
                    })
                    .fold(0.0, f64::max);
                report.push(Check::new(format!("numeric grid={n} modes={r}"), worst, 1e-12));
            }
        }
    }
    report
}
