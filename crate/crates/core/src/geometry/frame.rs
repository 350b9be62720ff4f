use super::fibration::{FibrationSpec, BASE_VARS};
use crate::scalar::Real;
use crate::symcalc::{TrigLaurentFun, Var};

/// Vector field `Σ X^μ ∂_μ` in the coordinates `(θ1, θ2, φ, ψ)`.
pub type VectorField<T> = [TrigLaurentFun<T>; 4];

/// Orthonormal frame `e_1 = ∂θ1/ℓ_1`, `e_2 = ∂θ2/ℓ_2`, `e_3 = (∂u)_H/b_u`, `e_4 = (∂v)_H/b_v`
/// of a fibration, with horizontal lift `(∂u)_H = ∂u − A^a_u ∂θ_a`.
#[derive(Debug, Clone)]
pub struct OrthonormalFrame<T: Real> {
    pub fields: [VectorField<T>; 4],
    spec: FibrationSpec<T>,
}

impl<T: Real> OrthonormalFrame<T> {
    pub fn new(spec: &FibrationSpec<T>) -> Self {
        let z = TrigLaurentFun::<T>::zero;
        let inv = |f: &TrigLaurentFun<T>| f.recip().expect("frame lengths are monomials");
        let l = [inv(&spec.fiber_lengths[0]), inv(&spec.fiber_lengths[1])];
        let b = [inv(&spec.base_lengths[0]), inv(&spec.base_lengths[1])];
        let e1 = [l[0].clone(), z(), z(), z()];
        let e2 = [z(), l[1].clone(), z(), z()];
        let horizontal = |i: usize| -> VectorField<T> {
            let mut e = [
                -&(&spec.connection[0][i] * &b[i]),
                -&(&spec.connection[1][i] * &b[i]),
                z(),
                z(),
            ];
            e[2 + i] = b[i].clone();
            e
        };
        OrthonormalFrame { fields: [e1, e2, horizontal(0), horizontal(1)], spec: spec.clone() }
    }

    /// Frame components of a coordinate vector field.
    pub fn components(&self, x: &VectorField<T>) -> [TrigLaurentFun<T>; 4] {
        let s = &self.spec;
        let vertical = |a: usize| {
            let shift = &(&s.connection[a][0] * &x[2]) + &(&s.connection[a][1] * &x[3]);
            &s.fiber_lengths[a] * &(&x[a] + &shift)
        };
        [vertical(0), vertical(1), &s.base_lengths[0] * &x[2], &s.base_lengths[1] * &x[3]]
    }

    /// Structure constants `c[j][k][l] = ⟨[e_j, e_k], e_l⟩`.
    pub fn structure_constants(&self) -> [[[TrigLaurentFun<T>; 4]; 4]; 4] {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| self.components(&bracket(&self.fields[j], &self.fields[k])))
        })
    }

    /// Levi-Civita symbols `Γ[j][k][l] = ⟨∇_{e_j} e_k, e_l⟩` from the Koszul formula.
    pub fn levi_civita(&self) -> [[[TrigLaurentFun<T>; 4]; 4]; 4] {
        levi_civita_from(&self.structure_constants())
    }
}

/// Koszul formula in an orthonormal frame: `Γ_jkl = ½(c_jkl − c_klj + c_ljk)`.
pub fn levi_civita_from<T: Real, const N: usize>(
    c: &[[[TrigLaurentFun<T>; N]; N]; N],
) -> [[[TrigLaurentFun<T>; N]; N]; N] {
    std::array::from_fn(|j| {
        std::array::from_fn(|k| {
            std::array::from_fn(|l| (&(&c[j][k][l] - &c[k][l][j]) + &c[l][j][k]).scale_real(0.5))
        })
    })
}

/// Lie bracket of coordinate vector fields.
pub fn bracket<T: Real>(x: &VectorField<T>, y: &VectorField<T>) -> VectorField<T> {
    std::array::from_fn(|mu| {
        Var::ALL.iter().fold(TrigLaurentFun::zero(), |acc, &v| {
            let i = v.index();
            let t = &(&x[i] * &y[mu].differentiate(v)) - &(&y[i] * &x[mu].differentiate(v));
            &acc + &t
        })
    })
}

/// Structure constants of the base frame `ê_u = ∂u/b_u`, `ê_v = ∂v/b_v` alone.
pub fn base_structure_constants<T: Real>(spec: &FibrationSpec<T>) -> [[[TrigLaurentFun<T>; 2]; 2]; 2] {
    let inv = |f: &TrigLaurentFun<T>| f.recip().expect("frame lengths are monomials");
    let b = [inv(&spec.base_lengths[0]), inv(&spec.base_lengths[1])];
    // [ê_u, ê_v] = b_u⁻¹ ∂u(b_v⁻¹) ∂v − b_v⁻¹ ∂v(b_u⁻¹) ∂u
    let to_v = &b[0] * &b[1].differentiate(BASE_VARS[0]);
    let to_u = -&(&b[1] * &b[0].differentiate(BASE_VARS[1]));
    let uv = [&to_u * &spec.base_lengths[0], &to_v * &spec.base_lengths[1]];
    let z = TrigLaurentFun::<T>::zero;
    let mut c: [[[TrigLaurentFun<T>; 2]; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| [z(), z()]));
    c[0][1] = uv.clone();
    c[1][0] = [-&uv[0], -&uv[1]];
    c
}
