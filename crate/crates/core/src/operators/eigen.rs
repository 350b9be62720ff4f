//! Explicit fiberwise eigenvectors and the resolvent of the vertical operator.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::OperatorError;
use crate::scalar::{Real, C};
use crate::symcalc::TrigLaurentFun;

/// The eigenvector pair `Ψ±_{n1,n2}` and eigenvalue function `λ_{n1,n2}` of the vertical
/// operator in mode `(n1, n2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EigenFamily {
    pub n1: i32,
    pub n2: i32,
}

/// Constructor mirroring the operation name.
pub fn eigen_family(n1: i32, n2: i32) -> EigenFamily {
    EigenFamily { n1, n2 }
}

impl EigenFamily {
    /// `λ² = n1²/(cos²φ cos²ψ) + n2²/(sin²φ cos²ψ)`, an element of the ring.
    pub fn lambda_squared<T: Real>(&self) -> TrigLaurentFun<T> {
        let a = TrigLaurentFun::trig(-2, 0, -2, 0).scale_real((self.n1 * self.n1) as f64);
        let b = TrigLaurentFun::trig(0, -2, -2, 0).scale_real((self.n2 * self.n2) as f64);
        &a + &b
    }

    pub fn lambda<T: Real>(&self, phi: T, psi: T) -> T {
        let (sp, cp) = phi.sin_cos();
        let cs = psi.cos();
        let n1 = T::from_i32(self.n1).unwrap();
        let n2 = T::from_i32(self.n2).unwrap();
        ((n1 / (cp * cs)).powi(2) + (n2 / (sp * cs)).powi(2)).sqrt()
    }

    /// `c(n1, n2) = (n1/cosφ + i n2/sinφ) / |·|`, and `1` in mode zero.
    pub fn c<T: Real>(&self, phi: T) -> C<T> {
        if self.n1 == 0 && self.n2 == 0 {
            return C::one();
        }
        let (sp, cp) = phi.sin_cos();
        let z = Complex::new(T::from_i32(self.n1).unwrap() / cp, T::from_i32(self.n2).unwrap() / sp);
        z / z.norm()
    }

    /// `Ψ±(θ, φ, ψ) = e^{i(n1θ1 + n2θ2)} (1, ±c) / √(2 sinφ cosφ cos²ψ)`.
    pub fn psi<T: Real>(&self, plus: bool, theta1: T, theta2: T, phi: T, psi: T) -> [C<T>; 2] {
        let arg = T::from_i32(self.n1).unwrap() * theta1 + T::from_i32(self.n2).unwrap() * theta2;
        let ph = Complex::new(arg.cos(), arg.sin());
        let w = (T::from_f64_lossy(2.0) * phi.sin() * phi.cos() * psi.cos().powi(2)).sqrt();
        let sign = if plus { T::one() } else { -T::one() };
        let amp = ph / w;
        [amp, amp * self.c(phi) * sign]
    }

    /// Mode symbol of the vertical operator at a base point, row-major 2×2:
    /// `−n1 σ¹/(cosφ cosψ) − n2 σ²/(sinφ cosψ)`.
    pub fn symbol<T: Real>(&self, phi: T, psi: T) -> [C<T>; 4] {
        let (sp, cp) = phi.sin_cos();
        let cs = psi.cos();
        let a = T::from_i32(self.n1).unwrap() / (cp * cs);
        let b = T::from_i32(self.n2).unwrap() / (sp * cs);
        // −aσ¹ − bσ² = [[0, −a + ib], [−a − ib, 0]]
        [C::zero(), Complex::new(-a, b), Complex::new(-a, -b), C::zero()]
    }
}

/// Per-mode resolvent `K⁺ + K⁻` of the vertical operator at spectral parameter `μ`.
#[derive(Debug, Clone, Copy)]
pub struct ModeResolvent {
    pub mu: f64,
    pub family: EigenFamily,
}

/// `Σ± (iμ ∓ λ)⁻¹ |Ψ±⟩⟨Ψ±|` restricted to one mode.
pub fn resolvent_series(mu: f64, n1: i32, n2: i32) -> Result<ModeResolvent, OperatorError> {
    if mu == 0.0 || !mu.is_finite() {
        return Err(OperatorError::ZeroSpectralParameter);
    }
    Ok(ModeResolvent { mu, family: EigenFamily { n1, n2 } })
}

impl ModeResolvent {
    /// The 2×2 matrix at a base point, row-major. The pointwise projection onto `Ψ±` in
    /// the fiber inner product is `½ (1, ±c)(1, ±c)*`.
    pub fn at<T: Real>(&self, phi: T, psi: T) -> [C<T>; 4] {
        let lam = self.family.lambda(phi, psi);
        let c = self.family.c(phi);
        let imu = Complex::new(T::zero(), T::from_f64_lossy(self.mu));
        let half = T::from_f64_lossy(0.5);
        let mut out = [C::zero(); 4];
        for (sign, denom) in [(T::one(), imu - lam), (-T::one(), imu + lam)] {
            let v = [C::<T>::one(), c * sign];
            let k = Complex::new(half, T::zero()) / denom;
            for r in 0..2 {
                for s in 0..2 {
                    out[r * 2 + s] += k * v[r] * v[s].conj();
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_at_the_diagonal() {
        let f = eigen_family(1, 0);
        assert!((f.lambda(std::f64::consts::FRAC_PI_4, 0.0) - 2f64.sqrt()).abs() < 1e-14);
        for n in [(1, 2), (-3, 1), (0, 4)] {
            assert!((eigen_family(n.0, n.1).c(0.7f64).norm() - 1.0).abs() < 1e-15);
        }
        assert_eq!(eigen_family(0, 0).c(0.7f64), Complex::new(1.0, 0.0));
    }

    #[test]
    fn lambda_squared_matches_pointwise_value() {
        let f = eigen_family(2, -3);
        let l2 = f.lambda_squared::<f64>().evaluate_base(0.4, -0.3).re;
        assert!((l2.sqrt() - f.lambda(0.4, -0.3)).abs() < 1e-12);
    }

    #[test]
    fn zero_mode_resolvent() {
        let r = resolvent_series(2.0, 0, 0).unwrap().at(0.3f64, 0.1);
        assert!((r[0] - Complex::new(0.0, -0.5)).norm() < 1e-15 && r[1].norm() < 1e-15);
        assert!(matches!(resolvent_series(0.0, 1, 1), Err(OperatorError::ZeroSpectralParameter)));
    }
}
