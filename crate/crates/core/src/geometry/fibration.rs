use super::GeometryError;
use crate::scalar::Real;
use crate::symcalc::{TrigLaurentFun, Var};

/// Open coordinate box `(u_min, u_max) × (v_min, v_max)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseBox {
    pub u: (f64, f64),
    pub v: (f64, f64),
}

impl BaseBox {
    pub fn quadrant() -> Self {
        let h = std::f64::consts::FRAC_PI_2;
        BaseBox { u: (0.0, h), v: (-h, h) }
    }
}

/// T²-fibration over a 2D base, with base coordinates `(u, v)` carried by the ring
/// variables `(φ, ψ)`.
///
/// The metric is `Σ_a ℓ_a² (dθ_a + A^a)² + b_u² du² + b_v² dv²`. Fiber and base lengths
/// are single monomials so that the orthonormal frame stays inside the ring.
#[derive(Debug, Clone)]
pub struct FibrationSpec<T: Real> {
    pub name: String,
    pub domain: BaseBox,
    /// Fiber lengths `ℓ_1, ℓ_2`; the vertical metric weights are `h_a = ℓ_a²`.
    pub fiber_lengths: [TrigLaurentFun<T>; 2],
    /// Base lengths `b_u, b_v`.
    pub base_lengths: [TrigLaurentFun<T>; 2],
    /// `connection[a] = (A^a_u, A^a_v)`.
    pub connection: [[TrigLaurentFun<T>; 2]; 2],
    /// Mean curvature `k(e_u), k(e_v)` along the unit horizontal fields.
    pub mean_curvature: [TrigLaurentFun<T>; 2],
}

/// Base variables in the ring.
pub const BASE_VARS: [Var; 2] = [Var::Phi, Var::Psi];

impl<T: Real> FibrationSpec<T> {
    pub fn new(
        name: impl Into<String>,
        domain: BaseBox,
        fiber_lengths: [TrigLaurentFun<T>; 2],
        base_lengths: [TrigLaurentFun<T>; 2],
        connection: [[TrigLaurentFun<T>; 2]; 2],
    ) -> Result<Self, GeometryError> {
        for (what, f) in fiber_lengths.iter().chain(&base_lengths).enumerate() {
            if f.as_monomial().is_none() {
                return Err(GeometryError::UnsupportedSpec(format!("length {what} is not a monomial: {f}")));
            }
        }
        for f in fiber_lengths.iter().chain(&base_lengths).chain(connection.iter().flatten()) {
            if !f.is_theta_independent() {
                return Err(GeometryError::UnsupportedSpec(format!("coefficient depends on the fiber: {f}")));
            }
        }
        let mean_curvature = [0, 1].map(|i| {
            let inv_b = base_lengths[i].recip().expect("checked monomial");
            let k = fiber_lengths.iter().fold(TrigLaurentFun::zero(), |acc, l| {
                &acc + &(&l.differentiate(BASE_VARS[i]) * &l.recip().expect("checked monomial"))
            });
            &k * &inv_b
        });
        Ok(FibrationSpec { name: name.into(), domain, fiber_lengths, base_lengths, connection, mean_curvature })
    }

    /// The round 4-sphere: `ℓ = (cosφ cosψ, sinφ cosψ)`, `b = (cosψ, 1)`, `A = 0`.
    pub fn sphere() -> Self {
        Self::new(
            "S4",
            BaseBox::quadrant(),
            [TrigLaurentFun::trig(1, 0, 1, 0), TrigLaurentFun::trig(0, 1, 1, 0)],
            [TrigLaurentFun::cos_psi(), TrigLaurentFun::one()],
            zero_connection(),
        )
        .expect("sphere spec is valid")
    }

    /// Flat metric with connection `A¹ = sin(v) du`, curvature `dA¹ = −cos(v) du∧dv`.
    pub fn twisted_flat() -> Self {
        let mut a = zero_connection();
        a[0][0] = TrigLaurentFun::sin_psi();
        Self::new(
            "twisted-flat",
            BaseBox { u: (-1.0, 1.0), v: (-1.0, 1.0) },
            [TrigLaurentFun::one(), TrigLaurentFun::one()],
            [TrigLaurentFun::one(), TrigLaurentFun::one()],
            a,
        )
        .expect("twisted spec is valid")
    }

    /// Sphere metric with the exact connection `A^a = d f_a`.
    pub fn sphere_with_exact_connection(f: [TrigLaurentFun<T>; 2]) -> Self {
        let s = Self::sphere();
        let connection = f.map(|fa| BASE_VARS.map(|v| fa.differentiate(v)));
        Self::new("S4+exact", s.domain, s.fiber_lengths, s.base_lengths, connection).expect("valid spec")
    }

    /// Vertical metric weights `h_a = ℓ_a²`.
    pub fn vertical_weights(&self) -> [TrigLaurentFun<T>; 2] {
        [&self.fiber_lengths[0] * &self.fiber_lengths[0], &self.fiber_lengths[1] * &self.fiber_lengths[1]]
    }
}

fn zero_connection<T: Real>() -> [[TrigLaurentFun<T>; 2]; 2] {
    [[TrigLaurentFun::zero(), TrigLaurentFun::zero()], [TrigLaurentFun::zero(), TrigLaurentFun::zero()]]
}

/// Curvature of the horizontal distribution.
#[derive(Debug, Clone)]
pub struct CurvatureForm<T: Real> {
    /// `Ω(∂u_H, ∂v_H, ∂θ_a)` for `a = 1, 2`.
    pub uv: [TrigLaurentFun<T>; 2],
}

impl<T: Real> CurvatureForm<T> {
    /// `Ω(X_H, Y_H, ∂θ_a)` for base vectors `X = (x_u, x_v)`, `Y = (y_u, y_v)`.
    pub fn evaluate(&self, x: [TrigLaurentFun<T>; 2], y: [TrigLaurentFun<T>; 2], a: usize) -> TrigLaurentFun<T> {
        let det = &(&x[0] * &y[1]) - &(&x[1] * &y[0]);
        &det * &self.uv[a]
    }

    pub fn is_zero(&self) -> bool {
        self.uv.iter().all(TrigLaurentFun::is_zero)
    }

    pub fn max_abs(&self) -> T {
        self.uv.iter().fold(T::zero(), |m, f| m.max(f.max_abs()))
    }
}

/// `Ω(X_H, Y_H, ∂θ_a) = ⟨[X_H, Y_H], ∂θ_a⟩ = −(∂u A^a_v − ∂v A^a_u)·h_a`.
pub fn curvature_form<T: Real>(spec: &FibrationSpec<T>) -> CurvatureForm<T> {
    let h = spec.vertical_weights();
    let uv = [0, 1].map(|a| {
        let curl = &spec.connection[a][1].differentiate(Var::Phi) - &spec.connection[a][0].differentiate(Var::Psi);
        &(-&curl) * &h[a]
    });
    CurvatureForm { uv }
}
