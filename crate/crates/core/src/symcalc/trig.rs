use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::SymError;
use crate::scalar::{Real, C};

/// Coordinate on the principal stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Theta1,
    Theta2,
    Phi,
    Psi,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Theta1, Var::Theta2, Var::Phi, Var::Psi];

    pub fn index(self) -> usize {
        match self {
            Var::Theta1 => 0,
            Var::Theta2 => 1,
            Var::Phi => 2,
            Var::Psi => 3,
        }
    }

    pub fn is_angle(self) -> bool {
        matches!(self, Var::Theta1 | Var::Theta2)
    }
}

/// Exponent tuple of `e^{i(n1 θ1 + n2 θ2)} cos^a φ sin^b φ cos^c ψ sin^d ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponents {
    pub n1: i32,
    pub n2: i32,
    pub cos_phi: i32,
    pub sin_phi: i32,
    pub cos_psi: i32,
    pub sin_psi: i32,
}

impl Exponents {
    pub const ONE: Exponents = Exponents { n1: 0, n2: 0, cos_phi: 0, sin_phi: 0, cos_psi: 0, sin_psi: 0 };

    pub fn new(n1: i32, n2: i32, cos_phi: i32, sin_phi: i32, cos_psi: i32, sin_psi: i32) -> Self {
        Exponents { n1, n2, cos_phi, sin_phi, cos_psi, sin_psi }
    }

    pub fn trig(cos_phi: i32, sin_phi: i32, cos_psi: i32, sin_psi: i32) -> Self {
        Self::new(0, 0, cos_phi, sin_phi, cos_psi, sin_psi)
    }

    pub fn mode(&self) -> [i32; 2] {
        [self.n1, self.n2]
    }

    fn trig_part(&self) -> [i32; 4] {
        [self.cos_phi, self.sin_phi, self.cos_psi, self.sin_psi]
    }
}

impl Add for Exponents {
    type Output = Exponents;
    fn add(self, o: Exponents) -> Exponents {
        Exponents {
            n1: self.n1 + o.n1,
            n2: self.n2 + o.n2,
            cos_phi: self.cos_phi + o.cos_phi,
            sin_phi: self.sin_phi + o.sin_phi,
            cos_psi: self.cos_psi + o.cos_psi,
            sin_psi: self.sin_psi + o.sin_psi,
        }
    }
}

impl Neg for Exponents {
    type Output = Exponents;
    fn neg(self) -> Exponents {
        Exponents {
            n1: -self.n1,
            n2: -self.n2,
            cos_phi: -self.cos_phi,
            sin_phi: -self.sin_phi,
            cos_psi: -self.cos_psi,
            sin_psi: -self.sin_psi,
        }
    }
}

/// Finite complex combination of trigonometric Laurent monomials on the open quadrant
/// times the 2-torus.
///
/// The representation is kept in normal form: no two terms share an exponent tuple and no
/// stored coefficient is below [`Real::ring_threshold`]. No trigonometric identities are
/// applied, so `cos²φ + sin²φ` stays a two-term element (see
/// [`TrigLaurentFun::pythagorean_residual`] for identity checks modulo `cos² + sin² = 1`).
#[derive(Clone, PartialEq)]
pub struct TrigLaurentFun<T: Real> {
    terms: BTreeMap<Exponents, C<T>>,
}

impl<T: Real> Default for TrigLaurentFun<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> TrigLaurentFun<T> {
    pub fn zero() -> Self {
        TrigLaurentFun { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(value: C<T>) -> Self {
        Self::monomial(Exponents::ONE, value)
    }

    pub fn real(value: f64) -> Self {
        Self::constant(Complex::new(T::from_f64_lossy(value), T::zero()))
    }

    pub fn monomial(exps: Exponents, coeff: C<T>) -> Self {
        let mut f = Self::zero();
        f.accumulate(exps, coeff);
        f
    }

    /// Builds an element from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, C<T>)>>(terms: I) -> Self {
        let mut f = Self::zero();
        for (e, v) in terms {
            *f.terms.entry(e).or_insert_with(C::zero) += v;
        }
        f.normalize();
        f
    }

    pub fn cos_phi() -> Self {
        Self::monomial(Exponents::trig(1, 0, 0, 0), C::one())
    }

    pub fn sin_phi() -> Self {
        Self::monomial(Exponents::trig(0, 1, 0, 0), C::one())
    }

    pub fn cos_psi() -> Self {
        Self::monomial(Exponents::trig(0, 0, 1, 0), C::one())
    }

    pub fn sin_psi() -> Self {
        Self::monomial(Exponents::trig(0, 0, 0, 1), C::one())
    }

    /// `cos^a φ sin^b φ cos^c ψ sin^d ψ` with unit coefficient.
    pub fn trig(a: i32, b: i32, c: i32, d: i32) -> Self {
        Self::monomial(Exponents::trig(a, b, c, d), C::one())
    }

    /// Fourier phase `e^{i(n1 θ1 + n2 θ2)}`.
    pub fn phase(n1: i32, n2: i32) -> Self {
        Self::monomial(Exponents::new(n1, n2, 0, 0, 0, 0), C::one())
    }

    pub fn tan_phi() -> Self {
        Self::trig(-1, 1, 0, 0)
    }

    pub fn cot_phi() -> Self {
        Self::trig(1, -1, 0, 0)
    }

    pub fn tan_psi() -> Self {
        Self::trig(0, 0, -1, 1)
    }

    fn accumulate(&mut self, exps: Exponents, coeff: C<T>) {
        let entry = self.terms.entry(exps).or_insert_with(C::zero);
        *entry += coeff;
        if entry.norm() <= T::ring_threshold() {
            self.terms.remove(&exps);
        }
    }

    fn normalize(&mut self) {
        let eps = T::ring_threshold();
        self.terms.retain(|_, v| v.norm() > eps);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C<T>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &Exponents) -> C<T> {
        self.terms.get(exps).copied().unwrap_or_else(C::zero)
    }

    /// Largest coefficient magnitude, the residual used by identity checks.
    pub fn max_abs(&self) -> T {
        self.terms.values().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, *v * s)))
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex::new(T::from_f64_lossy(s), T::zero()))
    }

    /// Complex conjugate: phases flip sign, coefficients are conjugated.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| {
            let mut e = *e;
            e.n1 = -e.n1;
            e.n2 = -e.n2;
            (e, v.conj())
        }))
    }

    /// Set of torus modes `(n1, n2)` carried by the nonzero terms.
    pub fn modes(&self) -> Vec<[i32; 2]> {
        let mut m: Vec<[i32; 2]> = self.terms.keys().map(|e| e.mode()).collect();
        m.sort_unstable();
        m.dedup();
        m
    }

    pub fn is_theta_independent(&self) -> bool {
        self.terms.keys().all(|e| e.n1 == 0 && e.n2 == 0)
    }

    /// True if every term lies in the spectral subspace of `mode`.
    pub fn is_in_mode(&self, mode: [i32; 2]) -> bool {
        self.terms.keys().all(|e| e.mode() == mode)
    }

    /// Single-term elements only: returns the exponents and coefficient.
    pub fn as_monomial(&self) -> Option<(Exponents, C<T>)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, v)| (*e, *v))
        } else {
            None
        }
    }

    /// Multiplicative inverse of a single-term element.
    pub fn recip(&self) -> Result<Self, SymError> {
        let (e, v) = self.as_monomial().ok_or(SymError::NotMonomial { terms: self.len() })?;
        Ok(Self::monomial(-e, v.inv()))
    }

    /// Integer power; negative powers require a single-term element.
    pub fn powi(&self, n: i32) -> Result<Self, SymError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn differentiate(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            match var {
                Var::Theta1 => {
                    if e.n1 != 0 {
                        out.accumulate(*e, *v * Complex::new(T::zero(), T::from_i32(e.n1).unwrap()));
                    }
                }
                Var::Theta2 => {
                    if e.n2 != 0 {
                        out.accumulate(*e, *v * Complex::new(T::zero(), T::from_i32(e.n2).unwrap()));
                    }
                }
                Var::Phi => {
                    // d/dφ cos^a sin^b = -a cos^{a-1} sin^{b+1} + b cos^{a+1} sin^{b-1}
                    if e.cos_phi != 0 {
                        let mut f = *e;
                        f.cos_phi -= 1;
                        f.sin_phi += 1;
                        out.accumulate(f, *v * T::from_i32(-e.cos_phi).unwrap());
                    }
                    if e.sin_phi != 0 {
                        let mut f = *e;
                        f.cos_phi += 1;
                        f.sin_phi -= 1;
                        out.accumulate(f, *v * T::from_i32(e.sin_phi).unwrap());
                    }
                }
                Var::Psi => {
                    if e.cos_psi != 0 {
                        let mut f = *e;
                        f.cos_psi -= 1;
                        f.sin_psi += 1;
                        out.accumulate(f, *v * T::from_i32(-e.cos_psi).unwrap());
                    }
                    if e.sin_psi != 0 {
                        let mut f = *e;
                        f.cos_psi += 1;
                        f.sin_psi -= 1;
                        out.accumulate(f, *v * T::from_i32(e.sin_psi).unwrap());
                    }
                }
            }
        }
        out
    }

    /// Point evaluation at `(θ1, θ2, φ, ψ)`.
    pub fn evaluate(&self, theta1: T, theta2: T, phi: T, psi: T) -> C<T> {
        let (sp, cp) = phi.sin_cos();
        let (ss, cs) = psi.sin_cos();
        self.terms.iter().fold(C::zero(), |acc, (e, v)| {
            let arg = T::from_i32(e.n1).unwrap() * theta1 + T::from_i32(e.n2).unwrap() * theta2;
            let ph = Complex::new(arg.cos(), arg.sin());
            let r = cp.powi(e.cos_phi) * sp.powi(e.sin_phi) * cs.powi(e.cos_psi) * ss.powi(e.sin_psi);
            acc + *v * ph * r
        })
    }

    /// Evaluation of a θ-independent element at a base point `(φ, ψ)`.
    pub fn evaluate_base(&self, phi: T, psi: T) -> C<T> {
        self.evaluate(T::zero(), T::zero(), phi, psi)
    }

    /// `∫_{T²} ∫_0^{π/2} ∫_{-π/2}^{π/2} f dψ dφ dθ1 dθ2` using the Beta-function closed form.
    pub fn integrate_quadrant(&self) -> Result<C<T>, SymError> {
        let mut acc = C::zero();
        let torus = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
        for (e, v) in &self.terms {
            if e.n1 != 0 || e.n2 != 0 {
                continue;
            }
            if e.trig_part().iter().any(|&k| k <= -1) {
                return Err(SymError::NonIntegrable { exponents: *e });
            }
            let i_phi = quarter_period_integral(e.cos_phi, e.sin_phi);
            let i_psi = half_period_integral(e.cos_psi, e.sin_psi);
            acc += *v * T::from_f64_lossy(torus * i_phi * i_psi);
        }
        Ok(acc)
    }

    /// Multiplies by the smallest monomial clearing all negative trig exponents, then reduces
    /// `sin² ↦ 1 − cos²` in both angles. The result is canonical modulo the Pythagorean
    /// identity, so two elements agree on the quadrant iff their reductions (with the same
    /// clearing monomial) coincide.
    pub fn pythagorean_normal_form(&self) -> (Exponents, Self) {
        let mut clear = Exponents::ONE;
        for e in self.terms.keys() {
            clear.cos_phi = clear.cos_phi.max(-e.cos_phi);
            clear.sin_phi = clear.sin_phi.max(-e.sin_phi);
            clear.cos_psi = clear.cos_psi.max(-e.cos_psi);
            clear.sin_psi = clear.sin_psi.max(-e.sin_psi);
        }
        let cleared = self * &Self::monomial(clear, C::one());
        let mut reduced = Self::zero();
        for (e, v) in &cleared.terms {
            let mut pieces = vec![(*e, *v)];
            pieces = reduce_sin_square(pieces, |e| &mut e.sin_phi, |e| &mut e.cos_phi);
            pieces = reduce_sin_square(pieces, |e| &mut e.sin_psi, |e| &mut e.cos_psi);
            for (pe, pv) in pieces {
                reduced.accumulate(pe, pv);
            }
        }
        (clear, reduced)
    }

    /// Residual of `self` as a function on the quadrant, modulo `cos² + sin² = 1`.
    pub fn pythagorean_residual(&self) -> T {
        self.pythagorean_normal_form().1.max_abs()
    }
}

fn reduce_sin_square<T: Real>(
    pieces: Vec<(Exponents, C<T>)>,
    sin: impl Fn(&mut Exponents) -> &mut i32,
    cos: impl Fn(&mut Exponents) -> &mut i32,
) -> Vec<(Exponents, C<T>)> {
    let mut out = Vec::new();
    let mut stack = pieces;
    while let Some((mut e, v)) = stack.pop() {
        if *sin(&mut e) >= 2 {
            *sin(&mut e) -= 2;
            let mut e2 = e;
            *cos(&mut e2) += 2;
            stack.push((e, v));
            stack.push((e2, -v));
        } else {
            out.push((e, v));
        }
    }
    out
}

/// `∫_0^{π/2} cos^a sin^b = B((a+1)/2, (b+1)/2) / 2` for `a, b > -1`.
pub(crate) fn quarter_period_integral(a: i32, b: i32) -> f64 {
    0.5 * beta(0.5 * (a as f64 + 1.0), 0.5 * (b as f64 + 1.0))
}

/// `∫_{-π/2}^{π/2} cos^c sin^d`, zero for odd `d`.
pub(crate) fn half_period_integral(c: i32, d: i32) -> f64 {
    if d.rem_euclid(2) == 1 {
        0.0
    } else {
        beta(0.5 * (c as f64 + 1.0), 0.5 * (d as f64 + 1.0))
    }
}

fn beta(x: f64, y: f64) -> f64 {
    (libm::lgamma(x) + libm::lgamma(y) - libm::lgamma(x + y)).exp()
}

impl<T: Real> fmt::Debug for TrigLaurentFun<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Real> fmt::Display for TrigLaurentFun<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", v.re, v.im)?;
            if e.n1 != 0 || e.n2 != 0 {
                write!(f, "·e^i({}θ1{:+}θ2)", e.n1, e.n2)?;
            }
            for (name, k) in [("cosφ", e.cos_phi), ("sinφ", e.sin_phi), ("cosψ", e.cos_psi), ("sinψ", e.sin_psi)] {
                if k != 0 {
                    write!(f, "·{name}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl<T: Real> Add for &TrigLaurentFun<T> {
    type Output = TrigLaurentFun<T>;
    fn add(self, rhs: &TrigLaurentFun<T>) -> TrigLaurentFun<T> {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.accumulate(*e, *v);
        }
        out
    }
}

impl<T: Real> Sub for &TrigLaurentFun<T> {
    type Output = TrigLaurentFun<T>;
    fn sub(self, rhs: &TrigLaurentFun<T>) -> TrigLaurentFun<T> {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.accumulate(*e, -*v);
        }
        out
    }
}

impl<T: Real> Mul for &TrigLaurentFun<T> {
    type Output = TrigLaurentFun<T>;
    fn mul(self, rhs: &TrigLaurentFun<T>) -> TrigLaurentFun<T> {
        let mut acc: BTreeMap<Exponents, C<T>> = BTreeMap::new();
        for (e1, v1) in &self.terms {
            for (e2, v2) in &rhs.terms {
                *acc.entry(*e1 + *e2).or_insert_with(C::zero) += *v1 * *v2;
            }
        }
        let mut out = TrigLaurentFun { terms: acc };
        out.normalize();
        out
    }
}

impl<T: Real> Neg for &TrigLaurentFun<T> {
    type Output = TrigLaurentFun<T>;
    fn neg(self) -> TrigLaurentFun<T> {
        TrigLaurentFun { terms: self.terms.iter().map(|(e, v)| (*e, -*v)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Real> $tr for TrigLaurentFun<T> {
            type Output = TrigLaurentFun<T>;
            fn $m(self, rhs: TrigLaurentFun<T>) -> TrigLaurentFun<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: Real> $tr<&TrigLaurentFun<T>> for TrigLaurentFun<T> {
            type Output = TrigLaurentFun<T>;
            fn $m(self, rhs: &TrigLaurentFun<T>) -> TrigLaurentFun<T> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Real> Neg for TrigLaurentFun<T> {
    type Output = TrigLaurentFun<T>;
    fn neg(self) -> TrigLaurentFun<T> {
        -&self
    }
}
