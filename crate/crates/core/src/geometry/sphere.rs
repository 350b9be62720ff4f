use num_complex::Complex;

use crate::scalar::Real;
use crate::symcalc::{TrigLaurentFun, Var, WeightFun};

/// Round `S⁴` in toroidal coordinates `(θ1, θ2, φ, ψ)` on the principal stratum.
#[derive(Debug, Clone)]
pub struct SphereGeometry<T: Real> {
    /// Diagonal metric `(g_θ1θ1, g_θ2θ2, g_φφ, g_ψψ)`.
    pub metric: [TrigLaurentFun<T>; 4],
    pub w_s4: WeightFun<T>,
    pub w_b: WeightFun<T>,
    pub w_x: WeightFun<T>,
}

impl<T: Real> Default for SphereGeometry<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> SphereGeometry<T> {
    pub fn new() -> Self {
        SphereGeometry {
            metric: [
                TrigLaurentFun::trig(2, 0, 2, 0),
                TrigLaurentFun::trig(0, 2, 2, 0),
                TrigLaurentFun::trig(0, 0, 2, 0),
                TrigLaurentFun::one(),
            ],
            w_s4: WeightFun::w_s4(),
            w_b: WeightFun::w_b(),
            w_x: WeightFun::w_x(),
        }
    }

    pub fn metric_component(&self, var: Var) -> &TrigLaurentFun<T> {
        &self.metric[var.index()]
    }
}

/// Nonzero components `S(∂θa, ∂θa, Z)` of the second fundamental form of the torus orbits,
/// indexed `[a][Z]` with `Z ∈ {φ, ψ}`.
#[derive(Debug, Clone)]
pub struct SecondFundamentalForm<T: Real> {
    pub components: [[TrigLaurentFun<T>; 2]; 2],
}

impl<T: Real> Default for SecondFundamentalForm<T> {
    fn default() -> Self {
        Self::sphere()
    }
}

impl<T: Real> SecondFundamentalForm<T> {
    pub fn sphere() -> Self {
        let m = |a, b, c, d, s: f64| TrigLaurentFun::trig(a, b, c, d).scale_real(s);
        SecondFundamentalForm {
            components: [
                [m(1, 1, 2, 0, -1.0), m(2, 0, 1, 1, -1.0)],
                [m(1, 1, 2, 0, 1.0), m(0, 2, 1, 1, -1.0)],
            ],
        }
    }

    pub fn get(&self, a: usize, z: Var) -> &TrigLaurentFun<T> {
        match z {
            Var::Phi => &self.components[a][0],
            Var::Psi => &self.components[a][1],
            _ => panic!("second fundamental form is indexed by a base direction"),
        }
    }
}

/// Mean curvature `k(∂φ)`, `k(∂ψ)` of the torus orbits.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanCurvature<T: Real> {
    pub k_phi: TrigLaurentFun<T>,
    pub k_psi: TrigLaurentFun<T>,
}

impl<T: Real> MeanCurvature<T> {
    pub fn sphere() -> Self {
        MeanCurvature {
            k_phi: &TrigLaurentFun::cot_phi() - &TrigLaurentFun::tan_phi(),
            k_psi: TrigLaurentFun::tan_psi().scale_real(-2.0),
        }
    }
}

/// Vertical metric trace `k(Z) = Σ_a S(∂θa, ∂θa, Z) / g(∂θa, ∂θa)`.
pub fn mean_curvature_from_sff<T: Real>(s: &SecondFundamentalForm<T>, g: &SphereGeometry<T>) -> MeanCurvature<T> {
    let trace = |z: Var| {
        (0..2).fold(TrigLaurentFun::zero(), |acc, a| {
            let inv = g.metric[a].recip().expect("vertical metric components are monomials");
            &acc + &(s.get(a, z) * &inv)
        })
    };
    MeanCurvature { k_phi: trace(Var::Phi), k_psi: trace(Var::Psi) }
}

/// A coordinate function together with its torus mode.
#[derive(Debug, Clone)]
pub struct ModeFunction<T: Real> {
    pub mode: [i32; 2],
    /// θ-independent amplitude; the full function is `e^{i mode·θ}` times this.
    pub amplitude: TrigLaurentFun<T>,
}

impl<T: Real> ModeFunction<T> {
    pub fn full(&self) -> TrigLaurentFun<T> {
        &TrigLaurentFun::phase(self.mode[0], self.mode[1]) * &self.amplitude
    }
}

/// Generators `a = e^{iθ1} cosφ cosψ`, `b = e^{iθ2} sinφ cosψ`, `x = sinψ`.
pub fn sphere_generators<T: Real>() -> [ModeFunction<T>; 3] {
    [
        ModeFunction { mode: [1, 0], amplitude: TrigLaurentFun::trig(1, 0, 1, 0) },
        ModeFunction { mode: [0, 1], amplitude: TrigLaurentFun::trig(0, 1, 1, 0) },
        ModeFunction { mode: [0, 0], amplitude: TrigLaurentFun::sin_psi() },
    ]
}

/// `|a|² + |b|² + x² − 1`, which vanishes modulo `cos² + sin² = 1`.
pub fn sphere_relation_defect<T: Real>() -> TrigLaurentFun<T> {
    let [a, b, x] = sphere_generators::<T>().map(|g| g.full());
    let s = &(&(&a * &a.conj()) + &(&b * &b.conj())) + &(&x * &x);
    &s - &TrigLaurentFun::constant(Complex::new(T::one(), T::zero()))
}
