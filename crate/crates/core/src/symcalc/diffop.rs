use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use super::{FunMatrix, SymError, TrigLaurentFun, Var, WeightFun};
use crate::scalar::{Real, C};

/// Maximal total order of a [`MatrixDiffOp`].
pub const MAX_ORDER: usize = 2;

/// Derivative multi-index over `(θ1, θ2, φ, ψ)`.
pub type DerivIndex = [u8; 4];

fn order_of(idx: &DerivIndex) -> usize {
    idx.iter().map(|&k| k as usize).sum()
}

fn unit(var: Var) -> DerivIndex {
    let mut d = [0u8; 4];
    d[var.index()] = 1;
    d
}

/// Differential operator `Σ_α A_α ∂^α` of order at most two with matrix coefficients.
///
/// Derivatives commute with each other and act on everything to their right; coefficients
/// sit on the left. Terms with a vanishing coefficient matrix are dropped, so the zero
/// operator has an empty term map.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixDiffOp<T: Real> {
    size: usize,
    terms: BTreeMap<DerivIndex, FunMatrix<T>>,
}

impl<T: Real> MatrixDiffOp<T> {
    pub fn zero(size: usize) -> Self {
        MatrixDiffOp { size, terms: BTreeMap::new() }
    }

    pub fn identity(size: usize) -> Self {
        Self::multiplication(FunMatrix::identity(size))
    }

    /// Zeroth-order operator `A`.
    pub fn multiplication(a: FunMatrix<T>) -> Self {
        Self::from_term([0; 4], a)
    }

    /// First-order operator `A ∂_var`.
    pub fn derivative(var: Var, a: FunMatrix<T>) -> Self {
        Self::from_term(unit(var), a)
    }

    pub fn from_term(idx: DerivIndex, a: FunMatrix<T>) -> Self {
        let mut op = Self::zero(a.size());
        op.insert(idx, a);
        op
    }

    fn insert(&mut self, idx: DerivIndex, a: FunMatrix<T>) {
        assert_eq!(a.size(), self.size, "coefficient size must match operator size");
        let merged = match self.terms.remove(&idx) {
            Some(prev) => &prev + &a,
            None => a,
        };
        if !merged.is_zero() {
            self.terms.insert(idx, merged);
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn order(&self) -> usize {
        self.terms.keys().map(order_of).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DerivIndex, &FunMatrix<T>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: DerivIndex) -> FunMatrix<T> {
        self.terms.get(&idx).cloned().unwrap_or_else(|| FunMatrix::zeros(self.size))
    }

    pub fn coefficient_of(&self, var: Var) -> FunMatrix<T> {
        self.coefficient(unit(var))
    }

    pub fn zeroth_order(&self) -> FunMatrix<T> {
        self.coefficient([0; 4])
    }

    /// Part of exactly the given order.
    pub fn homogeneous_part(&self, order: usize) -> Self {
        let mut op = Self::zero(self.size);
        for (k, a) in &self.terms {
            if order_of(k) == order {
                op.insert(*k, a.clone());
            }
        }
        op
    }

    /// Normalizes and reports whether every coefficient vanishes, with the largest surviving
    /// coefficient magnitude as residual.
    pub fn is_zero(&self) -> (bool, T) {
        let r = self.residual();
        (r <= T::ring_threshold(), r)
    }

    pub fn residual(&self) -> T {
        self.terms.values().fold(T::zero(), |m, a| m.max(a.max_abs()))
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map_coefficients(|a| a.scale(s))
    }

    pub fn map_coefficients(&self, f: impl Fn(&FunMatrix<T>) -> FunMatrix<T>) -> Self {
        let mut op = Self::zero(self.size);
        for (k, a) in &self.terms {
            let b = f(a);
            op.size = b.size();
            op.insert(*k, b);
        }
        op
    }

    /// `L · P · R` for matrices `L` (any coefficients) and constant `R`.
    pub fn sandwich(&self, left: &FunMatrix<T>, right: &FunMatrix<T>) -> Result<Self, SymError> {
        debug_assert!(right.is_constant(), "right factor must commute with derivatives");
        let mut op = Self::zero(left.size());
        for (k, a) in &self.terms {
            op.insert(*k, left.try_mul(a)?.try_mul(right)?);
        }
        Ok(op)
    }

    /// `A ⊗ P`-style lift: every coefficient `B` becomes `kron(B, id)` (`first = true`)
    /// or `kron(id, B)`.
    pub fn tensor_identity(&self, other_size: usize, first: bool) -> Self {
        let id = FunMatrix::identity(other_size);
        self.map_coefficients(|a| if first { FunMatrix::kron(a, &id) } else { FunMatrix::kron(&id, a) })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, SymError> {
        if self.size != rhs.size {
            return Err(SymError::SizeMismatch { left: self.size, right: rhs.size });
        }
        let mut op = self.clone();
        for (k, a) in &rhs.terms {
            op.insert(*k, a.clone());
        }
        Ok(op)
    }

    /// Leibniz composition `P ∘ Q`.
    pub fn compose(&self, rhs: &Self) -> Result<Self, SymError> {
        if self.size != rhs.size {
            return Err(SymError::SizeMismatch { left: self.size, right: rhs.size });
        }
        let total = self.order() + rhs.order();
        if total > MAX_ORDER {
            return Err(SymError::OrderOverflow { order: total, max: MAX_ORDER });
        }
        let mut op = Self::zero(self.size);
        for (alpha, a) in &self.terms {
            for (beta, b) in &rhs.terms {
                for gamma in sub_indices(alpha) {
                    let mut db = b.clone();
                    for var in Var::ALL {
                        for _ in 0..gamma[var.index()] {
                            db = db.differentiate(var);
                        }
                    }
                    if db.is_zero() {
                        continue;
                    }
                    let mut coeff = 1u32;
                    let mut idx = [0u8; 4];
                    for i in 0..4 {
                        coeff *= binomial(alpha[i], gamma[i]);
                        idx[i] = alpha[i] - gamma[i] + beta[i];
                    }
                    let term = a.try_mul(&db)?.scale(Complex::new(T::from_u32(coeff).unwrap(), T::zero()));
                    op.insert(idx, term);
                }
            }
        }
        Ok(op)
    }

    /// `P Q + Q P`.
    pub fn anticommutator(&self, rhs: &Self) -> Result<Self, SymError> {
        self.compose(rhs)?.try_add(&rhs.compose(self)?)
    }

    /// Formal adjoint with respect to `⟨ξ, η⟩_w = ∫ w ξ*η` on compactly supported sections.
    ///
    /// For `P = Σ A_μ ∂_μ + A_0` this is `−Σ A_μ* ∂_μ − Σ (∂_μ A_μ* + A_μ* ∂_μ w / w) + A_0*`.
    pub fn formal_adjoint(&self, w: &WeightFun<T>) -> Result<Self, SymError> {
        let ord = self.order();
        if ord > 1 {
            return Err(SymError::OrderOverflow { order: ord, max: 1 });
        }
        let minus = Complex::new(-T::one(), T::zero());
        let mut op = Self::multiplication(self.zeroth_order().conj_transpose());
        for var in Var::ALL {
            let a = self.coefficient_of(var);
            if a.is_zero() {
                continue;
            }
            let ah = a.conj_transpose();
            let zeroth = &ah.differentiate(var) + &ah.scale_fun(&w.log_derivative(var)?);
            op.insert(unit(var), ah.scale(minus));
            op.insert([0; 4], zeroth.scale(minus));
        }
        Ok(op)
    }

    /// Action on a vector of ring elements.
    pub fn apply(&self, section: &[TrigLaurentFun<T>]) -> Vec<TrigLaurentFun<T>> {
        assert_eq!(section.len(), self.size, "section length must match operator size");
        let mut out = vec![TrigLaurentFun::zero(); self.size];
        for (k, a) in &self.terms {
            let d: Vec<TrigLaurentFun<T>> = section
                .iter()
                .map(|f| {
                    let mut g = f.clone();
                    for var in Var::ALL {
                        for _ in 0..k[var.index()] {
                            g = g.differentiate(var);
                        }
                    }
                    g
                })
                .collect();
            for (o, v) in out.iter_mut().zip(a.apply(&d)) {
                *o = &*o + &v;
            }
        }
        out
    }

    /// Restriction to the spectral subspace of mode `(n1, n2)`: every `∂θj` becomes `i nj`.
    ///
    /// Valid for operators whose coefficients are θ-independent, which is the case for every
    /// torus-equivariant operator.
    pub fn mode_symbol(&self, n1: i32, n2: i32) -> Self {
        let mut op = Self::zero(self.size);
        for (k, a) in &self.terms {
            let mut factor = C::<T>::new(T::one(), T::zero());
            for (j, n) in [(0usize, n1), (1, n2)] {
                for _ in 0..k[j] {
                    factor *= Complex::new(T::zero(), T::from_i32(n).unwrap());
                }
            }
            if factor.is_zero() {
                continue;
            }
            let idx = [0, 0, k[2], k[3]];
            op.insert(idx, a.scale(factor));
        }
        op
    }
}

fn sub_indices(alpha: &DerivIndex) -> Vec<DerivIndex> {
    let mut out = vec![[0u8; 4]];
    for i in 0..4 {
        let mut next = Vec::new();
        for g in &out {
            for k in 0..=alpha[i] {
                let mut h = *g;
                h[i] = k;
                next.push(h);
            }
        }
        out = next;
    }
    out
}

fn binomial(n: u8, k: u8) -> u32 {
    let (n, k) = (n as u32, k as u32);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl<T: Real> Add for &MatrixDiffOp<T> {
    type Output = MatrixDiffOp<T>;
    fn add(self, rhs: &MatrixDiffOp<T>) -> MatrixDiffOp<T> {
        self.try_add(rhs).expect("operator sizes agree")
    }
}

impl<T: Real> Sub for &MatrixDiffOp<T> {
    type Output = MatrixDiffOp<T>;
    fn sub(self, rhs: &MatrixDiffOp<T>) -> MatrixDiffOp<T> {
        self.try_add(&-rhs).expect("operator sizes agree")
    }
}

impl<T: Real> Neg for &MatrixDiffOp<T> {
    type Output = MatrixDiffOp<T>;
    fn neg(self) -> MatrixDiffOp<T> {
        self.map_coefficients(|a| -a)
    }
}

impl<T: Real> Add for MatrixDiffOp<T> {
    type Output = MatrixDiffOp<T>;
    fn add(self, rhs: MatrixDiffOp<T>) -> MatrixDiffOp<T> {
        &self + &rhs
    }
}

impl<T: Real> Sub for MatrixDiffOp<T> {
    type Output = MatrixDiffOp<T>;
    fn sub(self, rhs: MatrixDiffOp<T>) -> MatrixDiffOp<T> {
        &self - &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = TrigLaurentFun<f64>;
    type Op = MatrixDiffOp<f64>;

    fn i() -> Complex<f64> {
        Complex::new(0.0, 1.0)
    }

    #[test]
    fn leibniz_with_multiplication() {
        let d = Op::derivative(Var::Phi, FunMatrix::identity(1));
        let m = Op::multiplication(FunMatrix::scalar(1, F::cos_phi()));
        let got = d.compose(&m).unwrap();
        let expected = &Op::derivative(Var::Phi, FunMatrix::scalar(1, F::cos_phi()))
            + &Op::multiplication(FunMatrix::scalar(1, -F::sin_phi()));
        assert!((&got - &expected).is_zero().0);
    }

    #[test]
    fn identity_is_neutral() {
        let p = Op::derivative(Var::Psi, FunMatrix::scalar(2, F::tan_psi()));
        assert_eq!(Op::identity(2).compose(&p).unwrap(), p);
        assert_eq!(p.compose(&Op::identity(2)).unwrap(), p);
    }

    #[test]
    fn order_overflow() {
        let d = Op::derivative(Var::Phi, FunMatrix::identity(1));
        let dd = d.compose(&d).unwrap();
        assert_eq!(dd.order(), 2);
        assert!(matches!(dd.compose(&d), Err(SymError::OrderOverflow { order: 3, .. })));
        assert!(matches!(dd.formal_adjoint(&WeightFun::flat()), Err(SymError::OrderOverflow { .. })));
    }

    #[test]
    fn adjoint_of_psi_derivative_picks_up_weight() {
        let p = Op::derivative(Var::Psi, FunMatrix::scalar(1, F::one().scale(i())));
        let adj = p.formal_adjoint(&WeightFun::w_b()).unwrap();
        let expected = &p + &Op::multiplication(FunMatrix::scalar(1, F::tan_psi().scale(-i())));
        assert!((&adj - &expected).is_zero().0);
    }

    #[test]
    fn mode_symbol_substitutes_phases() {
        let p = Op::derivative(Var::Theta1, FunMatrix::scalar(1, F::one().scale(i())));
        let s = p.mode_symbol(3, 0);
        assert_eq!(s.order(), 0);
        assert_eq!(s.zeroth_order().get(0, 0).coefficient(&super::super::Exponents::ONE), Complex::new(-3.0, 0.0));
    }

    #[test]
    fn apply_matches_hand_derivative() {
        let p = Op::derivative(Var::Phi, FunMatrix::identity(1));
        let out = p.apply(&[F::trig(1, 1, 0, 0)]);
        assert_eq!(out[0], &F::trig(2, 0, 0, 0) - &F::trig(0, 2, 0, 0));
    }
}
