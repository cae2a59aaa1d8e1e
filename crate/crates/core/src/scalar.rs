//! Scalar abstraction over the floating-point type used by the analysis math.
//!
//! Lattice tables and spin states are integer-valued throughout; only
//! couplings, Boltzmann weights, and accumulated observables live in a
//! floating-point type. Everything downstream of the sampler is generic
//! over [`Scalar`] so the same code runs in `f32` or `f64`; the crate-root
//! aliases pin `f64` as the default.

use std::fmt::Display;
use std::iter::Sum;
use std::ops::AddAssign;

use num_traits::Float;
use rustfft::FftNum;

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar: Float + FftNum + Sum<Self> + AddAssign + Display {
    /// Lossless for f64, rounds for f32. Panics only on non-finite overflow,
    /// which no caller feeds it.
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).expect("finite scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_f64() {
        let x: f64 = Scalar::real(0.4406867935097715);
        assert_eq!(x, 0.4406867935097715);
        assert_eq!(x.to_f64_lossy(), 0.4406867935097715);
    }

    #[test]
    fn counts_convert() {
        let n: f32 = Scalar::from_count(3200);
        assert_eq!(n, 3200.0);
    }
}
