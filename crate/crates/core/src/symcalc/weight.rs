use super::{SymError, TrigLaurentFun, Var};
use crate::scalar::Real;

/// Real, θ-independent integration weight on the open quadrant.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFun<T: Real> {
    f: TrigLaurentFun<T>,
}

impl<T: Real> WeightFun<T> {
    pub fn new(f: TrigLaurentFun<T>) -> Result<Self, SymError> {
        if f.is_zero() {
            return Err(SymError::InvalidWeight("zero".into()));
        }
        if !f.is_theta_independent() {
            return Err(SymError::InvalidWeight(format!("depends on θ: {f}")));
        }
        if f.terms().any(|(_, v)| v.im.abs() > T::ring_threshold()) {
            return Err(SymError::InvalidWeight(format!("not real: {f}")));
        }
        Ok(WeightFun { f })
    }

    /// `sinφ cosφ cos²ψ`, the fiber-volume weight of the vertical module.
    pub fn w_x() -> Self {
        WeightFun { f: TrigLaurentFun::trig(1, 1, 2, 0) }
    }

    /// `cosψ`, the Riemannian volume of the quadrant base.
    pub fn w_b() -> Self {
        WeightFun { f: TrigLaurentFun::trig(0, 0, 1, 0) }
    }

    /// `sinφ cosφ cos³ψ`, the volume density of the 4-sphere in toroidal coordinates.
    pub fn w_s4() -> Self {
        WeightFun { f: TrigLaurentFun::trig(1, 1, 3, 0) }
    }

    /// Unit weight.
    pub fn flat() -> Self {
        WeightFun { f: TrigLaurentFun::one() }
    }

    pub fn function(&self) -> &TrigLaurentFun<T> {
        &self.f
    }

    /// `∂_var w / w`, defined in the ring when `w` is a single monomial.
    pub fn log_derivative(&self, var: Var) -> Result<TrigLaurentFun<T>, SymError> {
        if var.is_angle() {
            return Ok(TrigLaurentFun::zero());
        }
        Ok(&self.f.differentiate(var) * &self.f.recip()?)
    }

    pub fn evaluate(&self, phi: T, psi: T) -> T {
        self.f.evaluate_base(phi, psi).re
    }

    pub fn product(&self, other: &Self) -> Self {
        WeightFun { f: &self.f * &other.f }
    }
}
