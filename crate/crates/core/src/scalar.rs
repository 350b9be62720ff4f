//! Scalar abstraction shared by the symbolic and numeric backends.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point type the library is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
    /// Magnitude below which a ring coefficient is treated as zero.
    fn ring_threshold() -> Self;

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to the scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Real for f64 {
    fn ring_threshold() -> Self {
        1e-13
    }
}

impl Real for f32 {
    fn ring_threshold() -> Self {
        1e-5
    }
}

/// Complex scalar over `T`.
pub type C<T> = Complex<T>;
