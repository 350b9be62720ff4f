//! Exact identities from the proof of the factorization: the connection condition, the
//! anticommutator of the vertical and horizontal parts, and the sum-of-squares rewriting.

use num_complex::Complex;
use rand::{Rng, SeedableRng};

use super::{Check, Mutation, VerificationReport};
use crate::operators::{anticommutator_terms, build_d_v, build_d_v_first, build_d_v_second, GammaSet, TensorSumParts};
use crate::symcalc::{Exponents, FunMatrix, MatrixDiffOp, TrigLaurentFun};

type F = TrigLaurentFun<f64>;
type Op = MatrixDiffOp<f64>;

const EXACT: f64 = 1e-13;

/// Largest coefficient of `op` after reduction modulo `cos² + sin² = 1`.
pub fn ring_residual(op: &Op) -> f64 {
    op.terms().flat_map(|(_, a)| a.entries().iter().map(F::pythagorean_residual)).fold(0.0, f64::max)
}

fn section_residual(v: &[F]) -> f64 {
    v.iter().map(F::pythagorean_residual).fold(0.0, f64::max)
}

/// `ξ ⊗ η` with the first factor's index running fastest.
pub fn tensor_sections(xi: &[F], eta: &[F]) -> Vec<F> {
    eta.iter().flat_map(|e| xi.iter().map(move |x| x * e)).collect()
}

fn i_unit() -> Complex<f64> {
    Complex::new(0.0, 1.0)
}

/// `P ⊗ m` for an operator `P` in the first factor and a matrix function `m` in the second.
fn tensor_with(p: &Op, m: &FunMatrix<f64>) -> Op {
    p.map_coefficients(|a| FunMatrix::kron(a, m))
}

/// `(D_V ×_∇ D)(ξ ⊗ η) − γ_X ξ ⊗ D η` against
/// `D_V ξ ⊗ η + γ_X ∇_φ ξ / cosψ ⊗ iσ¹η + γ_X ∇_ψ ξ ⊗ iσ²η`.
pub fn verify_connection_condition(xi: &[F; 2], eta: &[F; 2], parts: &TensorSumParts<f64>) -> f64 {
    let g = GammaSet::<f64>::new();
    let total = &parts.vertical() + &parts.horizontal();
    let lhs_full = total.apply(&tensor_sections(xi, eta));
    let gx_xi = g.gamma_x.apply(xi);
    let split = tensor_sections(&gx_xi, &parts.d_q.apply(eta));
    let lhs: Vec<F> = lhs_full.iter().zip(&split).map(|(a, b)| a - b).collect();

    let (nabla_phi, nabla_psi) = parts.connection.operators();
    let cov = |op: &Op| -> Vec<F> { xi.iter().map(|x| op.apply(std::slice::from_ref(x)).remove(0)).collect() };
    let sec_phi = g.gamma_x.apply(&cov(&nabla_phi)).iter().map(|f| f * &F::trig(0, 0, -1, 0)).collect::<Vec<_>>();
    let sec_psi = g.gamma_x.apply(&cov(&nabla_psi));
    let is1 = g.sigma[0].scale(i_unit()).apply(eta);
    let is2 = g.sigma[1].scale(i_unit()).apply(eta);
    let rhs = [
        tensor_sections(&build_d_v::<f64>().apply(xi), eta),
        tensor_sections(&sec_phi, &is1),
        tensor_sections(&sec_psi, &is2),
    ];
    let diff: Vec<F> = (0..4).map(|c| rhs.iter().fold(lhs[c].clone(), |acc, r| &acc - &r[c])).collect();
    section_residual(&diff)
}

fn random_monomial(rng: &mut impl Rng) -> F {
    let e = Exponents::new(
        rng.random_range(-2..=2),
        rng.random_range(-2..=2),
        rng.random_range(0..=2),
        rng.random_range(0..=2),
        rng.random_range(0..=2),
        rng.random_range(0..=2),
    );
    F::monomial(e, Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Fixed examples plus `trials` random monomial pairs.
pub fn verify_connection_suite(trials: usize, seed: u64, mutation: Mutation) -> VerificationReport {
    let parts = mutation.parts();
    let mut report = VerificationReport::new("connection").param("trials", trials).param("seed", seed).param("mutation", mutation.name());
    let bump = F::trig(2, 1, 2, 0);
    let eigen_numerators = [F::phase(1, 0), &F::phase(1, 0) * &F::trig(-1, 0, 0, 0)];
    report.push(Check::new("eigenfamily numerator", verify_connection_condition(&eigen_numerators, &[bump.clone(), F::zero()], &parts), EXACT));
    report.push(Check::new("constant section", verify_connection_condition(&[F::one(), F::zero()], &[bump, F::sin_psi()], &parts), EXACT));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let xi = [random_monomial(&mut rng), random_monomial(&mut rng)];
        let eta = [random_monomial(&mut rng), random_monomial(&mut rng)].map(|f| {
            // base sections carry no fiber dependence
            let (e, v) = f.as_monomial().expect("monomial");
            F::monomial(Exponents::new(0, 0, e.cos_phi, e.sin_phi, e.cos_psi, e.sin_psi), v)
        });
        worst = worst.max(verify_connection_condition(&xi, &eta, &parts));
    }
    report.push(Check::new("random monomial pairs", worst, 1e-12));
    report
}

/// `{D_V ⊗ 1, (γ_X ⊗ 1)(1 ⊗_∇ D)}` against `i γ_X D_V′ ⊗ T′ − i γ_X D_V″ ⊗ T″`, in the
/// untwisted `C² ⊗ C²` frame.
pub fn verify_anticommutator(mutation: Mutation) -> VerificationReport {
    let parts = mutation.parts();
    let mut report = VerificationReport::new("anticommutator").param("mutation", mutation.name());
    let lhs = parts.vertical().anticommutator(&parts.horizontal()).expect("orders add to two");
    let g = GammaSet::<f64>::new();
    let (t1, t2) = anticommutator_terms::<f64>();
    let gx_first = build_d_v_first::<f64>().sandwich(&g.gamma_x, &FunMatrix::identity(2)).expect("sizes agree");
    let gx_second = build_d_v_second::<f64>().sandwich(&g.gamma_x, &FunMatrix::identity(2)).expect("sizes agree");
    let rhs = &tensor_with(&gx_first, &t1).scale(i_unit()) - &tensor_with(&gx_second, &t2).scale(i_unit());
    let diff = &lhs - &rhs;
    report.push(Check::new("second-order terms cancel", ring_residual(&lhs.homogeneous_part(2)), EXACT));
    report.push(Check::new("anticommutator identity", ring_residual(&diff), EXACT));
    report.push(Check::new("sum of squares", sum_of_squares_residual(&parts), EXACT));
    let (sq, _) = kappa_square_residual();
    report.push(Check::new("T squares are scalar", sq, EXACT));
    report
}

/// `(T′)² + (T″)² − (tan²φ/cos²ψ + 2tan²ψ + cot²φ/cos²ψ)·1`, with the scalar.
fn kappa_square_residual() -> (f64, F) {
    let (t1, t2) = anticommutator_terms::<f64>();
    let s = &(&t1 * &t1) + &(&t2 * &t2);
    let scalar = &(&F::trig(-2, 2, -2, 0) + &F::tan_psi().powi(2).expect("monomial").scale_real(2.0)) + &F::trig(2, -2, -2, 0);
    let r = &s - &FunMatrix::scalar(2, scalar.clone());
    (r.entries().iter().map(F::pythagorean_residual).fold(0.0, f64::max), scalar)
}

/// Residual of
/// `(D′ + ½iγT′)(D′ − ½iγT′) + (D″ − ½iγT″)(D″ + ½iγT″)
///   = D_V² ⊗ 1 + ¼ ⊗ (T′² + T″²) + {D_V ⊗ 1, γ_X ⊗_∇ D}`.
pub fn sum_of_squares_residual(parts: &TensorSumParts<f64>) -> f64 {
    let g = GammaSet::<f64>::new();
    let (t1, t2) = anticommutator_terms::<f64>();
    let half_i = Complex::new(0.0, 0.5);
    let d1 = build_d_v_first::<f64>().tensor_identity(2, true);
    let d2 = build_d_v_second::<f64>().tensor_identity(2, true);
    let m1 = Op::multiplication(FunMatrix::kron(&g.gamma_x, &t1).scale(half_i));
    let m2 = Op::multiplication(FunMatrix::kron(&g.gamma_x, &t2).scale(half_i));
    let c = |a: &Op, b: &Op| a.compose(b).expect("order two");
    let lhs = &c(&(&d1 + &m1), &(&d1 - &m1)) + &c(&(&d2 - &m2), &(&d2 + &m2));
    let v = parts.vertical();
    let (_, scalar) = kappa_square_residual();
    let quarter = Op::multiplication(FunMatrix::scalar(4, scalar.scale_real(0.25)));
    let rhs = &(&c(&v, &v) + &quarter) + &v.anticommutator(&parts.horizontal()).expect("order two");
    ring_residual(&(&lhs - &rhs))
}
