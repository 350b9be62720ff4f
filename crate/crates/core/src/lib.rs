//! Verification laboratory for the tensor-sum factorization of the Dirac operator on the
//! θ-deformed 4-sphere.
//!
//! The symbolic and numeric cores are generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix `f64`, which is what the verification suites use.

pub mod scalar;
pub mod geometry;
pub mod kk_verify;
pub mod nc_torus;
pub mod operators;
pub mod symcalc;
pub mod theta_deform;

pub use scalar::{Real, C};

pub type TrigFun = symcalc::TrigLaurentFun<f64>;
pub type DiffOp = symcalc::MatrixDiffOp<f64>;
pub type Weight = symcalc::WeightFun<f64>;
pub type FunMat = symcalc::FunMatrix<f64>;
pub type TorusElement = nc_torus::TorusPoly<f64>;
pub type Deformation = nc_torus::DeformationMatrix<f64>;
pub type Fibration = geometry::FibrationSpec<f64>;
pub type GridOperator = operators::ModeGridOperator<f64>;
pub type Deformed = theta_deform::DeformedElement<f64>;
