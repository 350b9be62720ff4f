//! Closed-form geometry of the round 4-sphere in toroidal coordinates and of
//! coefficient-driven T²-fibrations over a 2D base.

mod fibration;
mod frame;
mod sphere;

pub use fibration::{curvature_form, BaseBox, CurvatureForm, FibrationSpec, BASE_VARS};
pub use frame::{base_structure_constants, bracket, levi_civita_from, OrthonormalFrame, VectorField};
pub use sphere::{
    mean_curvature_from_sff, sphere_generators, sphere_relation_defect, MeanCurvature, ModeFunction,
    SecondFundamentalForm, SphereGeometry,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("unsupported fibration spec: {0}")]
    UnsupportedSpec(String),
}
