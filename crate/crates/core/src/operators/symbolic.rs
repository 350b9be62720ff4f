//! Exact builders for the Dirac-type operators on the principal stratum.

use num_complex::Complex;

use super::GammaSet;
use crate::scalar::{Real, C};
use crate::symcalc::{FunMatrix, MatrixDiffOp, TrigLaurentFun, Var};

type F<T> = TrigLaurentFun<T>;

fn i_unit<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::one())
}

/// `i · m · f ∂_var`.
fn first_order<T: Real>(var: Var, m: &FunMatrix<T>, f: F<T>) -> MatrixDiffOp<T> {
    MatrixDiffOp::derivative(var, m.scale_fun(&f).scale(i_unit()))
}

/// `i · m · f` as a multiplication operator.
fn zeroth<T: Real>(m: &FunMatrix<T>, f: F<T>) -> MatrixDiffOp<T> {
    MatrixDiffOp::multiplication(m.scale_fun(&f).scale(i_unit()))
}

fn half<T: Real>(f: F<T>) -> F<T> {
    f.scale_real(0.5)
}

/// Local Dirac operator of the round 4-sphere in toroidal coordinates.
pub fn build_d_s4<T: Real>() -> MatrixDiffOp<T> {
    let g = GammaSet::<T>::new();
    let k_phi = half(&F::cot_phi() - &F::tan_phi());
    [
        first_order(Var::Theta1, &g.gamma[0], F::trig(-1, 0, -1, 0)),
        first_order(Var::Theta2, &g.gamma[1], F::trig(0, -1, -1, 0)),
        first_order(Var::Phi, &g.gamma[2], F::trig(0, 0, -1, 0)),
        first_order(Var::Psi, &g.gamma[3], F::one()),
        zeroth(&g.gamma[2], &k_phi * &F::trig(0, 0, -1, 0)),
        zeroth(&g.gamma[3], F::tan_psi().scale_real(-1.5)),
    ]
    .iter()
    .fold(MatrixDiffOp::zero(4), |acc, p| &acc + p)
}

/// First summand of the vertical operator, `i σ¹ ∂θ1 / (cosφ cosψ)`.
pub fn build_d_v_first<T: Real>() -> MatrixDiffOp<T> {
    first_order(Var::Theta1, &GammaSet::<T>::new().sigma[0], F::trig(-1, 0, -1, 0))
}

/// Second summand of the vertical operator, `i σ² ∂θ2 / (sinφ cosψ)`.
pub fn build_d_v_second<T: Real>() -> MatrixDiffOp<T> {
    first_order(Var::Theta2, &GammaSet::<T>::new().sigma[1], F::trig(0, -1, -1, 0))
}

/// Vertical Dirac operator on the fibers.
pub fn build_d_v<T: Real>() -> MatrixDiffOp<T> {
    &build_d_v_first() + &build_d_v_second()
}

/// Dirac operator of the quadrant base; `correction` toggles the `−½ tanψ` term.
pub fn build_d_q<T: Real>(correction: bool) -> MatrixDiffOp<T> {
    let g = GammaSet::<T>::new();
    let mut op = &first_order(Var::Phi, &g.sigma[0], F::trig(0, 0, -1, 0)) + &first_order(Var::Psi, &g.sigma[1], F::one());
    if correction {
        op = &op + &zeroth(&g.sigma[1], F::tan_psi().scale_real(-0.5));
    }
    op
}

/// Metric connection `∇_μ = ∂_μ + ω_μ` on the vertical module, acting on scalar functions.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection<T: Real> {
    /// Zeroth-order parts `ω_φ`, `ω_ψ`.
    pub omega: [F<T>; 2],
}

impl<T: Real> Connection<T> {
    /// As scalar (size 1) first-order operators `(∇_φ, ∇_ψ)`.
    pub fn operators(&self) -> (MatrixDiffOp<T>, MatrixDiffOp<T>) {
        let op = |var, w: &F<T>| {
            &MatrixDiffOp::derivative(var, FunMatrix::identity(1)) + &MatrixDiffOp::multiplication(FunMatrix::scalar(1, w.clone()))
        };
        (op(Var::Phi, &self.omega[0]), op(Var::Psi, &self.omega[1]))
    }
}

/// `∇_φ = ∂φ + ½cotφ − ½tanφ`, `∇_ψ = ∂ψ − tanψ`.
pub fn build_connection<T: Real>() -> Connection<T> {
    Connection { omega: [half(&F::cot_phi() - &F::tan_phi()), -F::tan_psi()] }
}

/// Ingredients of the tensor sum, exposed so that verification suites can perturb them.
#[derive(Debug, Clone)]
pub struct TensorSumParts<T: Real> {
    pub d_v: MatrixDiffOp<T>,
    pub connection: Connection<T>,
    pub d_q: MatrixDiffOp<T>,
}

impl<T: Real> Default for TensorSumParts<T> {
    fn default() -> Self {
        TensorSumParts { d_v: build_d_v(), connection: build_connection(), d_q: build_d_q(true) }
    }
}

impl<T: Real> TensorSumParts<T> {
    /// `D_V ⊗ 1` on `C² ⊗ C²`, before the `Γ` bookkeeping.
    pub fn vertical(&self) -> MatrixDiffOp<T> {
        self.d_v.tensor_identity(2, true)
    }

    /// `1 ⊗_∇ D_Q`: every `B_μ ∂_μ` of the base operator becomes `(1 ⊗ B_μ)(∂_μ + ω_μ)`.
    pub fn connection_lift(&self) -> MatrixDiffOp<T> {
        let mut op = self.d_q.tensor_identity(2, false);
        let id = FunMatrix::identity(2);
        for (var, w) in [(Var::Phi, &self.connection.omega[0]), (Var::Psi, &self.connection.omega[1])] {
            let b = FunMatrix::kron(&id, &self.d_q.coefficient_of(var));
            op = &op + &MatrixDiffOp::multiplication(b.scale_fun(w));
        }
        op
    }

    /// `(γ_X ⊗ 1)(1 ⊗_∇ D_Q)`, before the `Γ` bookkeeping.
    pub fn horizontal(&self) -> MatrixDiffOp<T> {
        let g = GammaSet::<T>::new();
        let gx = FunMatrix::kron(&g.gamma_x, &FunMatrix::identity(2));
        self.connection_lift().sandwich(&gx, &FunMatrix::identity(4)).expect("sizes agree")
    }

    /// Conjugation by `Γ`.
    pub fn bookkeeping(op: &MatrixDiffOp<T>) -> MatrixDiffOp<T> {
        let g = GammaSet::<T>::new();
        op.sandwich(&g.big_gamma, &g.big_gamma).expect("sizes agree")
    }

    pub fn tensor_sum(&self) -> MatrixDiffOp<T> {
        Self::bookkeeping(&(&self.vertical() + &self.horizontal()))
    }
}

/// `Γ (D_V ⊗ 1) Γ`.
pub fn lift_vertical<T: Real>() -> MatrixDiffOp<T> {
    TensorSumParts::bookkeeping(&TensorSumParts::default().vertical())
}

/// `Γ (γ_X ⊗ 1)(1 ⊗_∇ D_Q) Γ`.
pub fn lift_horizontal<T: Real>() -> MatrixDiffOp<T> {
    TensorSumParts::bookkeeping(&TensorSumParts::default().horizontal())
}

/// `Γ [(D_V ⊗ 1) + (γ_X ⊗ 1)(1 ⊗_∇ D_Q)] Γ`.
pub fn tensor_sum<T: Real>() -> MatrixDiffOp<T> {
    TensorSumParts::default().tensor_sum()
}

/// The two zeroth-order terms `T′ = (tanφ/cosψ) σ¹ + tanψ σ²` and
/// `T″ = (cotφ/cosψ) σ¹ − tanψ σ²` from the anticommutator identity.
pub fn anticommutator_terms<T: Real>() -> (FunMatrix<T>, FunMatrix<T>) {
    let g = GammaSet::<T>::new();
    let t1 = &g.sigma[0].scale_fun(&F::trig(-1, 1, -1, 0)) + &g.sigma[1].scale_fun(&F::tan_psi());
    let t2 = &g.sigma[0].scale_fun(&F::trig(1, -1, -1, 0)) - &g.sigma[1].scale_fun(&F::tan_psi());
    (t1, t2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcalc::WeightFun;

    type Op = MatrixDiffOp<f64>;

    #[test]
    fn factorization_holds_exactly() {
        let (zero, r) = (&tensor_sum::<f64>() - &build_d_s4()).is_zero();
        assert!(zero, "residual {r}");
        assert_eq!(r, 0.0);
    }

    #[test]
    fn lifts_split_the_dirac_operator() {
        let d = build_d_s4::<f64>();
        let v = lift_vertical::<f64>();
        assert_eq!(v.coefficient_of(Var::Theta1), d.coefficient_of(Var::Theta1));
        assert_eq!(v.coefficient_of(Var::Theta2), d.coefficient_of(Var::Theta2));
        assert!(v.coefficient_of(Var::Phi).is_zero() && v.zeroth_order().is_zero());
        let h = lift_horizontal::<f64>();
        assert!((&(&d - &v) - &h).is_zero().0);
    }

    #[test]
    fn operators_are_formally_selfadjoint() {
        let d = build_d_s4::<f64>();
        assert!((&d.formal_adjoint(&WeightFun::w_s4()).unwrap() - &d).is_zero().0);
        let dv = build_d_v::<f64>();
        assert!((&dv.formal_adjoint(&WeightFun::w_x()).unwrap() - &dv).is_zero().0);
        let dq = build_d_q::<f64>(true);
        assert!((&dq.formal_adjoint(&WeightFun::w_b()).unwrap() - &dq).is_zero().0);
        // without the correction term the base operator is not symmetric
        let bare = build_d_q::<f64>(false);
        assert!(!(&bare.formal_adjoint(&WeightFun::w_b()).unwrap() - &bare).is_zero().0);
        let h = lift_horizontal::<f64>();
        assert!((&h.formal_adjoint(&WeightFun::w_s4()).unwrap() - &h).is_zero().0);
    }

    #[test]
    fn oddness() {
        let g = GammaSet::<f64>::new();
        let odd = |p: &Op, grading: &FunMatrix<f64>| {
            let a = p.sandwich(grading, grading).unwrap();
            (&a + p).is_zero().0
        };
        assert!(odd(&tensor_sum(), &g.grading));
        assert!(odd(&build_d_v(), &g.gamma_x));
        assert!(odd(&build_d_q(true), &g.gamma_x));
    }

    #[test]
    fn connection_is_half_mean_curvature() {
        let c = build_connection::<f64>();
        let k = crate::geometry::MeanCurvature::<f64>::sphere();
        assert_eq!(c.omega[0], k.k_phi.scale_real(0.5));
        let (_, nabla_psi) = c.operators();
        assert_eq!(nabla_psi.apply(&[F::one()])[0], -F::tan_psi());
    }

    #[test]
    fn connection_is_metric_on_monomials() {
        // ∂φ(ξ̄ η w_X) = (∇ξ)‾ η w_X + ξ̄ (∇η) w_X with ξ, η vertical-mode monomials
        let (nphi, npsi) = build_connection::<f64>().operators();
        let w = WeightFun::<f64>::w_x();
        let xi = &F::phase(1, 0) * &F::trig(2, 1, 0, 1);
        let eta = &F::phase(1, 0) * &F::trig(0, 3, 1, 0);
        for (var, nab) in [(Var::Phi, &nphi), (Var::Psi, &npsi)] {
            let lhs = (&(&xi.conj() * &eta) * w.function()).differentiate(var);
            let a = &(&nab.apply(&[xi.clone()])[0].conj() * &eta) * w.function();
            let b = &(&xi.conj() * &nab.apply(&[eta.clone()])[0]) * w.function();
            assert!((&(&lhs - &a) - &b).is_zero(), "{var:?}");
        }
    }

    #[test]
    fn mode_symbol_of_vertical_operator() {
        let s = build_d_v::<f64>().mode_symbol(1, 0);
        let g = GammaSet::<f64>::new();
        assert_eq!(s.zeroth_order(), g.sigma[0].scale_fun(&F::trig(-1, 0, -1, 0)).scale(Complex::new(-1.0, 0.0)));
        assert!(build_d_v::<f64>().mode_symbol(0, 0).is_zero().0);
    }
}
