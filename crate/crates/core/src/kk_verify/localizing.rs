//! Localizing elements `(f ∘ q) ⊗ 1` and the positivity constant `κ_x`.

use serde::{Deserialize, Serialize};

use super::VerifyError;

const SAMPLES: usize = 401;

/// Smooth bump `f: Q → [0, 1]` supported in a closed coordinate box strictly inside the
/// quadrant, equal to 1 at the box centre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalizingElement {
    pub phi: (f64, f64),
    pub psi: (f64, f64),
}

impl LocalizingElement {
    pub fn new(phi: (f64, f64), psi: (f64, f64)) -> Result<Self, VerifyError> {
        if !(phi.0 <= phi.1 && psi.0 <= psi.1) {
            return Err(VerifyError::EmptySupport);
        }
        let h = std::f64::consts::FRAC_PI_2;
        if phi.0 <= 0.0 || phi.1 >= h || psi.0 <= -h || psi.1 >= h {
            return Err(VerifyError::SupportNotInterior { phi, psi });
        }
        Ok(LocalizingElement { phi, psi })
    }

    /// The box `[π/6, π/3] × [−π/6, π/6]`.
    pub fn standard() -> Self {
        let s = std::f64::consts::FRAC_PI_6;
        LocalizingElement { phi: (s, 2.0 * s), psi: (-s, s) }
    }

    pub fn contains(&self, phi: f64, psi: f64) -> bool {
        (self.phi.0..=self.phi.1).contains(&phi) && (self.psi.0..=self.psi.1).contains(&psi)
    }

    /// `exp(1 − 1/(1 − s²))` in each direction, `s ∈ (−1, 1)` across the box.
    pub fn value(&self, phi: f64, psi: f64) -> f64 {
        bump(phi, self.phi) * bump(psi, self.psi)
    }
}

fn bump(x: f64, (a, b): (f64, f64)) -> f64 {
    if b <= a {
        return if x == a { 1.0 } else { 0.0 };
    }
    let s = (2.0 * x - a - b) / (b - a);
    if s.abs() >= 1.0 { 0.0 } else { (1.0 - 1.0 / (1.0 - s * s)).exp() }
}

/// `¼ (tan²φ/cos²ψ + 2 tan²ψ + cot²φ/cos²ψ)`.
pub fn kappa_expression(phi: f64, psi: f64) -> f64 {
    let c2 = psi.cos().powi(2);
    0.25 * (phi.tan().powi(2) / c2 + 2.0 * psi.tan().powi(2) + 1.0 / (phi.tan().powi(2) * c2))
}

/// Largest value of the expression over a `401 × 401` sampling of the closed support box.
pub fn kappa_raw(x: &LocalizingElement) -> Result<f64, VerifyError> {
    if !(x.phi.0 <= x.phi.1 && x.psi.0 <= x.psi.1) {
        return Err(VerifyError::EmptySupport);
    }
    let at = |(a, b): (f64, f64), i: usize| a + (b - a) * i as f64 / (SAMPLES - 1) as f64;
    let mut best = f64::NEG_INFINITY;
    for i in 0..SAMPLES {
        for j in 0..SAMPLES {
            best = best.max(kappa_expression(at(x.phi, i), at(x.psi, j)));
        }
    }
    Ok(best)
}

/// The sampled maximum inflated by 1%.
pub fn kappa_bound(x: &LocalizingElement) -> Result<f64, VerifyError> {
    kappa_raw(x).map(|k| 1.01 * k)
}
