//! Entry types a density operator can carry.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::FockError;
use crate::series::Series;

pub trait Scalar:
    Clone + Debug + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(v: f64) -> Self;
    fn scale(&self, s: f64) -> Self;
    fn conj(&self) -> Self;
    fn try_div(&self, rhs: &Self) -> Result<Self, FockError>;
    /// Largest coefficient magnitude; zero iff the value is exactly zero.
    fn magnitude(&self) -> f64;
    /// Largest imaginary magnitude (zero for real types).
    fn imag_magnitude(&self) -> f64 {
        0.0
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(v: f64) -> Self {
        v
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn conj(&self) -> Self {
        *self
    }
    fn try_div(&self, rhs: &Self) -> Result<Self, FockError> {
        if *rhs == 0.0 {
            Err(FockError::ZeroTrace)
        } else {
            Ok(self / rhs)
        }
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn try_div(&self, rhs: &Self) -> Result<Self, FockError> {
        if rhs.norm_sqr() == 0.0 {
            Err(FockError::ZeroTrace)
        } else {
            Ok(self / rhs)
        }
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn imag_magnitude(&self) -> f64 {
        self.im.abs()
    }
}

impl<const N: usize> Scalar for Series<N> {
    fn zero() -> Self {
        Series::zero()
    }
    fn one() -> Self {
        Series::one()
    }
    fn from_real(v: f64) -> Self {
        Series::constant(v)
    }
    fn scale(&self, s: f64) -> Self {
        Series::scale(self, s)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn try_div(&self, rhs: &Self) -> Result<Self, FockError> {
        Series::try_div(self, rhs)
    }
    fn magnitude(&self) -> f64 {
        self.max_abs()
    }
}
