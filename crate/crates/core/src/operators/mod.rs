//! Dirac operators on the sphere and the fibered pieces, symbolically and on grids.

mod eigen;
mod gamma;
mod grid;
mod numeric;
mod sparse;
mod spectrum;
mod symbolic;
mod unitary;

pub use eigen::{eigen_family, resolvent_series, EigenFamily, ModeResolvent};
pub use gamma::GammaSet;
pub use grid::{GridSpec, ModeSet, NodePlacement};
pub use numeric::{assemble_numeric, multiplication_block, ModeGridOperator};
pub use sparse::CsrMatrix;
pub use spectrum::{chiral_block, cluster, lowest_singular_values, sector_spectrum, spectrum, Cluster, SectorSpectrum};
pub use symbolic::{
    anticommutator_terms, build_connection, build_d_q, build_d_s4, build_d_v, build_d_v_first, build_d_v_second,
    lift_horizontal, lift_vertical, tensor_sum, Connection, TensorSumParts,
};
pub use unitary::{w_unitary, WUnitary};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("numeric assembly supports order ≤ 1, got {order}")]
    OrderTooHigh { order: usize },
    #[error("coefficients depend on the torus angles")]
    NotEquivariant,
    #[error("coefficient is not finite at node {node} (φ = {phi}, ψ = {psi})")]
    SingularCoefficient { node: usize, phi: f64, psi: f64 },
    #[error("spectral parameter must be a nonzero real")]
    ZeroSpectralParameter,
    #[error("sparse factorization failed: {0}")]
    Factorization(String),
}
