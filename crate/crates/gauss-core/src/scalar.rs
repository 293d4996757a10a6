//! The scalar field abstraction: exact Gaussian rationals for the projective
//! line, complex doubles for the torus.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use exact_algebra::GaussianRational;
use num_complex::Complex64;

pub trait CoreScalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Magnitude used for residual reporting; exact scalars report 0 or 1.
    fn magnitude(&self) -> f64;
}

impl CoreScalar for GaussianRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::from_ratio(num, den)
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        if GaussianRational::is_zero(self) {
            0.0
        } else {
            let (re, im) = self.to_f64_pair();
            (re * re + im * im).sqrt()
        }
    }
}

impl CoreScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Relative L2 distance of two coordinate vectors, for drift diagnostics.
pub fn relative_distance<S: CoreScalar>(a: &[S], b: &[S]) -> f64 {
    assert_eq!(a.len(), b.len(), "coordinate dimension mismatch");
    let mut diff = 0.0;
    let mut scale = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let d = (x.clone() - y.clone()).magnitude();
        diff += d * d;
        scale += x.magnitude().powi(2).max(y.magnitude().powi(2));
    }
    if scale == 0.0 {
        return if diff == 0.0 { 0.0 } else { f64::INFINITY };
    }
    (diff / scale).sqrt()
}
