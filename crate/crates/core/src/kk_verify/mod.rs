//! Verification suites for the factorization of the sphere's Dirac operator and the
//! conditions of the unbounded Kasparov product.
//!
//! Every suite returns a [`VerificationReport`]. Suites built from perturbable ingredients
//! take a [`Mutation`], so that the controls run through exactly the same code path.

mod curvature;
mod factorization;
mod identities;
mod localizing;
mod positivity;
mod report;
mod torus;

pub use curvature::{frame_dirac, general_tensor_sum, measure_curvature, verify_curvature_obstruction, CurvatureMeasurement};
pub use factorization::{verify_factorization, Backend, NumericConfig};
pub use identities::{
    ring_residual, sum_of_squares_residual, tensor_sections, verify_anticommutator, verify_connection_condition,
    verify_connection_suite,
};
pub use localizing::{kappa_bound, kappa_expression, kappa_raw, LocalizingElement};
pub use positivity::{verify_garding, verify_local_positivity, GardingConfig, PositivityConfig};
pub use report::{Check, Status, VerificationReport};
pub use torus::verify_torus;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::operators::{build_d_q, build_d_v_first, TensorSumParts};
use crate::symcalc::TrigLaurentFun;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("support box is empty")]
    EmptySupport,
    #[error("support box {phi:?} × {psi:?} touches the quadrant edge")]
    SupportNotInterior { phi: (f64, f64), psi: (f64, f64) },
}

/// Deliberate coefficient perturbations used as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    #[default]
    None,
    /// Drop the `−½ tanψ` term of the base operator.
    DropBaseCorrection,
    /// Add `tanψ` to the zeroth-order part of `∇_ψ`.
    ShiftPsiConnection,
    /// Set the `∂θ2` coefficient of the vertical operator to zero.
    DropSecondVertical,
    /// Leave out the mean-curvature term of the horizontal lift.
    DropMeanCurvature,
}

impl Mutation {
    pub fn all() -> [Mutation; 4] {
        [Mutation::DropBaseCorrection, Mutation::ShiftPsiConnection, Mutation::DropSecondVertical, Mutation::DropMeanCurvature]
    }

    pub fn name(self) -> &'static str {
        match self {
            Mutation::None => "none",
            Mutation::DropBaseCorrection => "drop-base-correction",
            Mutation::ShiftPsiConnection => "shift-psi-connection",
            Mutation::DropSecondVertical => "drop-second-vertical",
            Mutation::DropMeanCurvature => "drop-mean-curvature",
        }
    }

    /// Tensor-sum ingredients with this perturbation applied.
    pub fn parts(self) -> TensorSumParts<f64> {
        let mut p = TensorSumParts::default();
        match self {
            Mutation::DropBaseCorrection => p.d_q = build_d_q(false),
            Mutation::ShiftPsiConnection => p.connection.omega[1] = &p.connection.omega[1] + &TrigLaurentFun::tan_psi(),
            Mutation::DropSecondVertical => p.d_v = build_d_v_first(),
            Mutation::None | Mutation::DropMeanCurvature => {}
        }
        p
    }
}
