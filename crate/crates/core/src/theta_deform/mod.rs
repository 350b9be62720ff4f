//! θ-deformed functions on the sphere acting on mode-graded sections by phase-twisted
//! mode shifts.
//!
//! An element `Σ f_k ⊗ U^k` is stored by the θ-independent amplitudes `f_k e^{−ik·θ}`, and
//! a section likewise by its per-mode amplitudes. `π(f_l ⊗ U^l)` sends the mode-`k` part
//! `ξ_k` to `λ(l, k) f_l ξ_k` in mode `k + l`, where `λ` is the torus product phase.

mod commutator;

pub use commutator::{commutator_norm, CommutatorReport};

use std::collections::BTreeMap;

use num_complex::Complex;
use thiserror::Error;

use crate::geometry::sphere_generators;
use crate::kk_verify::{Check, VerificationReport};
use crate::nc_torus::DeformationMatrix;
use crate::operators::ModeSet;
use crate::scalar::{Real, C};
use crate::symcalc::{Exponents, TrigLaurentFun};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThetaError {
    #[error("output modes outside the mode set: {modes:?}")]
    ModeOverflow { modes: Vec<[i32; 2]> },
    #[error("amplitude for mode {mode:?} depends on the torus angles")]
    NotInSpectralSubspace { mode: [i32; 2] },
}

/// Groups the monomials of `f` by torus mode; the parts sum back to `f`.
pub fn mode_decompose<T: Real>(f: &TrigLaurentFun<T>) -> BTreeMap<[i32; 2], TrigLaurentFun<T>> {
    let mut groups: BTreeMap<[i32; 2], Vec<(Exponents, C<T>)>> = BTreeMap::new();
    for (e, v) in f.terms() {
        groups.entry(e.mode()).or_default().push((*e, *v));
    }
    groups.into_iter().map(|(k, t)| (k, TrigLaurentFun::from_terms(t))).collect()
}

fn strip_phase<T: Real>(f: &TrigLaurentFun<T>, k: [i32; 2]) -> TrigLaurentFun<T> {
    &TrigLaurentFun::phase(-k[0], -k[1]) * f
}

/// Finite sum `Σ f_k ⊗ U^k`, stored as θ-independent amplitudes per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedElement<T: Real> {
    parts: BTreeMap<[i32; 2], TrigLaurentFun<T>>,
}

impl<T: Real> DeformedElement<T> {
    /// Splits a function into spectral subspaces.
    pub fn from_fun(f: &TrigLaurentFun<T>) -> Self {
        let parts = mode_decompose(f).into_iter().map(|(k, fk)| (k, strip_phase(&fk, k))).collect();
        DeformedElement { parts }
    }

    /// From `(mode, amplitude)` pairs; amplitudes must be θ-independent.
    pub fn from_parts(parts: impl IntoIterator<Item = ([i32; 2], TrigLaurentFun<T>)>) -> Result<Self, ThetaError> {
        let mut out = BTreeMap::new();
        for (k, f) in parts {
            if !f.is_theta_independent() {
                return Err(ThetaError::NotInSpectralSubspace { mode: k });
            }
            let e: &mut TrigLaurentFun<T> = out.entry(k).or_insert_with(TrigLaurentFun::zero);
            *e = &*e + &f;
        }
        Ok(DeformedElement { parts: out })
    }

    /// A function pulled back from the base, in mode zero.
    pub fn invariant(f: TrigLaurentFun<T>) -> Result<Self, ThetaError> {
        Self::from_parts([([0, 0], f)])
    }

    pub fn modes(&self) -> Vec<[i32; 2]> {
        self.parts.keys().copied().collect()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&[i32; 2], &TrigLaurentFun<T>)> {
        self.parts.iter()
    }

    pub fn amplitude(&self, k: [i32; 2]) -> TrigLaurentFun<T> {
        self.parts.get(&k).cloned().unwrap_or_else(TrigLaurentFun::zero)
    }

    /// The undeformed function `Σ e^{ik·θ} f_k`.
    pub fn full(&self) -> TrigLaurentFun<T> {
        self.parts.iter().fold(TrigLaurentFun::zero(), |acc, (k, f)| &acc + &(&TrigLaurentFun::phase(k[0], k[1]) * f))
    }

    /// `(f ⊗ U^l)* = λ(l, l) f̄ ⊗ U^{−l}`.
    pub fn star(&self, theta: &DeformationMatrix<T>) -> Self {
        let parts = self
            .parts
            .iter()
            .map(|(k, f)| ([-k[0], -k[1]], f.conj().scale(theta.phase(&wide(*k), &wide(*k)))))
            .collect();
        DeformedElement { parts }
    }

    /// Deformed product: `(f ⊗ U^l)(g ⊗ U^m) = λ(l, m) fg ⊗ U^{l+m}`.
    pub fn product(&self, rhs: &Self, theta: &DeformationMatrix<T>) -> Self {
        let mut parts: BTreeMap<[i32; 2], TrigLaurentFun<T>> = BTreeMap::new();
        for (l, f) in &self.parts {
            for (m, g) in &rhs.parts {
                let t = (f * g).scale(theta.phase(&wide(*l), &wide(*m)));
                let e = parts.entry([l[0] + m[0], l[1] + m[1]]).or_insert_with(TrigLaurentFun::zero);
                *e = &*e + &t;
            }
        }
        DeformedElement { parts }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut parts = self.parts.clone();
        for (k, f) in &rhs.parts {
            let e = parts.entry(*k).or_insert_with(TrigLaurentFun::zero);
            *e = &*e + f;
        }
        DeformedElement { parts }
    }
}

pub(crate) fn wide(k: [i32; 2]) -> [i64; 2] {
    [k[0] as i64, k[1] as i64]
}

/// Mode-graded section: per mode, the θ-independent amplitudes of each spinor component.
#[derive(Debug, Clone, PartialEq)]
pub struct Section<T: Real> {
    pub spinor: usize,
    parts: BTreeMap<[i32; 2], Vec<TrigLaurentFun<T>>>,
}

impl<T: Real> Section<T> {
    pub fn new(spinor: usize) -> Self {
        Section { spinor, parts: BTreeMap::new() }
    }

    pub fn with(mut self, k: [i32; 2], components: Vec<TrigLaurentFun<T>>) -> Self {
        assert_eq!(components.len(), self.spinor, "component count must match the spinor size");
        self.accumulate(k, &components, C::new(T::one(), T::zero()));
        self
    }

    fn accumulate(&mut self, k: [i32; 2], comps: &[TrigLaurentFun<T>], s: C<T>) {
        let e = self.parts.entry(k).or_insert_with(|| vec![TrigLaurentFun::zero(); comps.len()]);
        for (x, y) in e.iter_mut().zip(comps) {
            *x = &*x + &y.scale(s);
        }
    }

    pub fn modes(&self) -> Vec<[i32; 2]> {
        self.parts.keys().copied().collect()
    }

    pub fn get(&self, k: [i32; 2]) -> Option<&[TrigLaurentFun<T>]> {
        self.parts.get(&k).map(|v| v.as_slice())
    }

    /// Full component `Σ_k e^{ik·θ} ξ_k[c]` as a function on the torus bundle.
    pub fn full_component(&self, c: usize) -> TrigLaurentFun<T> {
        self.parts.iter().fold(TrigLaurentFun::zero(), |acc, (k, v)| &acc + &(&TrigLaurentFun::phase(k[0], k[1]) * &v[c]))
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, other: &Self, s: C<T>) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.parts {
            out.accumulate(*k, v, s);
        }
        out
    }

    /// Largest residual over all amplitudes, modulo `cos² + sin² = 1`.
    pub fn residual(&self) -> T {
        self.parts.values().flatten().map(|f| f.pythagorean_residual()).fold(T::zero(), T::max)
    }
}

/// The representation `π` for a fixed deformation, acting on sections supported in `modes`.
#[derive(Debug, Clone)]
pub struct DeformedRep<T: Real> {
    pub theta: DeformationMatrix<T>,
    pub modes: ModeSet,
}

impl<T: Real> DeformedRep<T> {
    pub fn new(theta12: T, modes: ModeSet) -> Self {
        DeformedRep { theta: DeformationMatrix::two(theta12), modes }
    }

    /// `π(x)ξ`, together with the modes whose contributions were dropped.
    pub fn apply_pi_partial(&self, x: &DeformedElement<T>, xi: &Section<T>) -> (Section<T>, Vec<[i32; 2]>) {
        let mut out = Section::new(xi.spinor);
        let mut clipped = Vec::new();
        for (l, f) in x.parts() {
            for (k, comps) in &xi.parts {
                let target = [k[0] + l[0], k[1] + l[1]];
                if !self.modes.contains(target) {
                    clipped.push(target);
                    continue;
                }
                let ph = self.theta.phase(&wide(*l), &wide(*k));
                let prod: Vec<_> = comps.iter().map(|c| f * c).collect();
                out.accumulate(target, &prod, ph);
            }
        }
        clipped.sort_unstable();
        clipped.dedup();
        (out, clipped)
    }

    pub fn apply_pi(&self, x: &DeformedElement<T>, xi: &Section<T>) -> Result<Section<T>, ThetaError> {
        let (out, clipped) = self.apply_pi_partial(x, xi);
        if clipped.is_empty() { Ok(out) } else { Err(ThetaError::ModeOverflow { modes: clipped }) }
    }
}

/// Test section on all modes with `|k|∞ ≤ radius − 1`, so that one mode shift stays inside.
fn interior_section<T: Real>(radius: u32) -> Section<T> {
    let r = radius as i32 - 1;
    let mut s = Section::new(1);
    for a in -r..=r {
        for b in -r..=r {
            let amp = &(&TrigLaurentFun::one() + &TrigLaurentFun::cos_phi().scale_real(0.5 + a as f64 * 0.1))
                + &TrigLaurentFun::sin_psi().scale_real(b as f64 * 0.2 - 0.3);
            s = s.with([a, b], vec![amp]);
        }
    }
    s
}

/// Sphere relations of the deformed generators `a`, `b`, `x`, transported through `π`.
pub fn sphere_relations_check(theta12: f64, modes: &ModeSet) -> VerificationReport {
    let radius = modes.modes().iter().map(|k| k[0].abs().max(k[1].abs())).max().unwrap_or(0) as u32;
    let rep = DeformedRep::<f64>::new(theta12, modes.clone());
    let [a, b, x] = sphere_generators::<f64>().map(|g| {
        DeformedElement::from_parts([(g.mode, g.amplitude)]).expect("generator amplitudes are θ-independent")
    });
    let xi = interior_section::<f64>(radius);
    let one = Complex::new(1.0, 0.0);
    let mut report = VerificationReport::new("sphere-relations").param("theta", theta12).param("modes", radius);
    let pi = |e: &DeformedElement<f64>, s: &Section<f64>| rep.apply_pi_partial(e, s).0;

    let lhs = pi(&a.star(&rep.theta), &pi(&a, &xi))
        .add_scaled(&pi(&b.star(&rep.theta), &pi(&b, &xi)), one)
        .add_scaled(&pi(&x, &pi(&x, &xi)), one)
        .add_scaled(&xi, -one);
    report.push(Check::new("sum of squares is identity", lhs.residual(), 1e-12));

    let wa = wide(a.modes()[0]);
    let wb = wide(b.modes()[0]);
    let mu = rep.theta.phase(&wa, &wb) / rep.theta.phase(&wb, &wa);
    let comm = pi(&a, &pi(&b, &xi)).add_scaled(&pi(&b, &pi(&a, &xi)), -mu);
    report.push(Check::new("ab twisted commutation", comm.residual(), 1e-12).with("phase_arg", mu.arg()));
    report.push(Check::new("phase has unit modulus", (mu.norm() - 1.0).abs(), 1e-14));

    let central = pi(&x, &pi(&a, &xi)).add_scaled(&pi(&a, &pi(&x, &xi)), -one);
    report.push(Check::new("x is central", central.residual(), 1e-12));

    let ab = a.product(&b, &rep.theta);
    let mult = pi(&ab, &xi).add_scaled(&pi(&a, &pi(&b, &xi)), -one);
    report.push(Check::new("multiplicative", mult.residual(), 1e-12));

    let adj = pi(&a.star(&rep.theta).product(&a, &rep.theta), &xi).add_scaled(&pi(&a.star(&rep.theta), &pi(&a, &xi)), -one);
    report.push(Check::new("star compatible", adj.residual(), 1e-12));

    if theta12 == 0.0 {
        let mut worst: f64 = 0.0;
        for g in [&a, &b, &x] {
            let out = pi(g, &xi);
            let classical = &g.full() * &xi.full_component(0);
            worst = worst.max((&out.full_component(0) - &classical).max_abs());
        }
        report.push(Check::new("classical multiplication", worst, 0.0));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_generators() {
        let [a, _, x] = sphere_generators::<f64>().map(|g| g.full());
        assert_eq!(mode_decompose(&a).keys().copied().collect::<Vec<_>>(), vec![[1, 0]]);
        assert_eq!(mode_decompose(&(&a + &a.conj())).keys().copied().collect::<Vec<_>>(), vec![[-1, 0], [1, 0]]);
        assert_eq!(mode_decompose(&x).keys().copied().collect::<Vec<_>>(), vec![[0, 0]]);
        let e = DeformedElement::from_fun(&(&a + &x));
        assert!((&e.full() - &(&a + &x)).is_zero());
    }

    #[test]
    fn zero_deformation_is_multiplication() {
        let rep = DeformedRep::<f64>::new(0.0, ModeSet::radius(3));
        let a = DeformedElement::from_fun(&sphere_generators::<f64>()[0].full());
        let xi = interior_section::<f64>(3);
        let out = rep.apply_pi(&a, &xi).unwrap();
        assert!((&out.full_component(0) - &(&a.full() * &xi.full_component(0))).is_zero());
    }

    #[test]
    fn invariant_elements_multiply() {
        let rep = DeformedRep::<f64>::new(0.37, ModeSet::radius(2));
        let f = TrigLaurentFun::trig(2, 1, 0, 0);
        let x = DeformedElement::invariant(f.clone()).unwrap();
        let xi = interior_section::<f64>(2);
        let out = rep.apply_pi(&x, &xi).unwrap();
        assert!((&out.full_component(0) - &(&f * &xi.full_component(0))).is_zero());
    }

    #[test]
    fn half_twist_phase() {
        let rep = DeformedRep::<f64>::new(0.5, ModeSet::radius(2));
        let x = DeformedElement::from_parts([([1, 0], TrigLaurentFun::one())]).unwrap();
        let xi = Section::new(1).with([0, 1], vec![TrigLaurentFun::one()]);
        let out = rep.apply_pi(&x, &xi).unwrap();
        let want = rep.theta.phase(&[1, 0], &[0, 1]);
        assert!((out.get([1, 1]).unwrap()[0].coefficient(&Exponents::ONE) - want).norm() < 1e-15);
    }

    #[test]
    fn overflow_is_reported() {
        let rep = DeformedRep::<f64>::new(0.2, ModeSet::radius(1));
        let x = DeformedElement::from_parts([([1, 0], TrigLaurentFun::one())]).unwrap();
        let xi = Section::new(1).with([1, 0], vec![TrigLaurentFun::one()]);
        assert_eq!(rep.apply_pi(&x, &xi), Err(ThetaError::ModeOverflow { modes: vec![[2, 0]] }));
    }

    #[test]
    fn relations_hold() {
        for t in [0.0, 1.0 / 3.0, 0.5, 0.237] {
            let r = sphere_relations_check(t, &ModeSet::radius(3));
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn opposite_deformation_is_conjugate() {
        let modes = ModeSet::radius(3);
        let (p, m) = (DeformedRep::<f64>::new(0.3, modes.clone()), DeformedRep::<f64>::new(-0.3, modes));
        let a = DeformedElement::from_fun(&sphere_generators::<f64>()[0].full());
        let b = DeformedElement::from_fun(&sphere_generators::<f64>()[1].full());
        let xi = interior_section::<f64>(2);
        let lhs = p.apply_pi(&a, &p.apply_pi(&b, &xi).unwrap()).unwrap();
        let rhs = m.apply_pi(&a, &m.apply_pi(&b, &xi).unwrap()).unwrap();
        for k in lhs.modes() {
            let (u, v) = (&lhs.get(k).unwrap()[0], &rhs.get(k).unwrap()[0]);
            assert!((&u.conj() - v).is_zero());
        }
    }
}
