//! Truncated power series with real coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::FockError;

/// `c[0] + c[1] x + ... + c[N-1] x^(N-1)`, products truncated at degree `N-1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Series<const N: usize> {
    c: [f64; N],
}

/// Series in the emission probability `p`, degree ≤ 2.
pub type PSeries = Series<3>;

/// Series in `√p`, degree ≤ 8 (probabilities through `p⁴`).
pub type RootSeries = Series<9>;

impl<const N: usize> Series<N> {
    pub const fn new(c: [f64; N]) -> Self {
        Self { c }
    }

    pub const fn zero() -> Self {
        Self { c: [0.0; N] }
    }

    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Self { c }
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    /// `v·x^k`, or zero if `k` is beyond the truncation degree.
    pub fn monomial(v: f64, k: usize) -> Self {
        let mut c = [0.0; N];
        if k < N {
            c[k] = v;
        }
        Self { c }
    }

    /// The expansion variable itself.
    pub fn var() -> Self {
        Self::monomial(1.0, 1)
    }

    pub const fn degree_bound() -> usize {
        N - 1
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.c.get(k).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64; N] {
        &self.c
    }

    pub fn constant_term(&self) -> f64 {
        self.c[0]
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.c;
        for v in &mut c {
            *v *= s;
        }
        Self { c }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Lowest degree with a coefficient above `tol` in magnitude.
    pub fn valuation(&self, tol: f64) -> Option<usize> {
        self.c.iter().position(|v| v.abs() > tol)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, FockError> {
        let a0 = self.c[0];
        if a0 == 0.0 {
            return Err(FockError::ZeroConstantTerm);
        }
        let mut r = [0.0; N];
        r[0] = 1.0 / a0;
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| self.c[j] * r[k - j]).sum();
            r[k] = -s / a0;
        }
        Ok(Self { c: r })
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, FockError> {
        Ok(*self * rhs.inverse()?)
    }

    /// Divide by `x^k`; the `k` lowest coefficients must vanish within `tol`.
    pub fn shift_down(&self, k: usize, tol: f64) -> Result<Self, FockError> {
        if let Some(j) = self.c.iter().take(k).position(|v| v.abs() > tol) {
            return Err(FockError::NonzeroLowOrder { degree: j });
        }
        let mut c = [0.0; N];
        if k < N {
            c[..N - k].copy_from_slice(&self.c[k..]);
        }
        Ok(Self { c })
    }

    /// Re-expand a series in `y = x²` from a series in `x`; odd coefficients must vanish within `tol`.
    /// Terms beyond the target degree are dropped.
    pub fn square_variable<const M: usize>(&self, tol: f64) -> Result<Series<M>, FockError> {
        let mut c = [0.0; M];
        for (i, &v) in self.c.iter().enumerate() {
            if i % 2 == 1 {
                if v.abs() > tol {
                    return Err(FockError::OddPower { degree: i });
                }
            } else if i / 2 < M {
                c[i / 2] = v;
            }
        }
        Ok(Series { c })
    }

    /// Change truncation degree, dropping or zero-padding.
    pub fn resize<const M: usize>(&self) -> Series<M> {
        let mut c = [0.0; M];
        for (i, v) in c.iter_mut().enumerate() {
            *v = self.coeff(i);
        }
        Series { c }
    }
}

impl<const N: usize> Default for Series<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> From<f64> for Series<N> {
    fn from(v: f64) -> Self {
        Self::constant(v)
    }
}

impl<const N: usize> Add for Series<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            self.c[i] += rhs.c[i];
        }
        self
    }
}

impl<const N: usize> AddAssign for Series<N> {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            self.c[i] += rhs.c[i];
        }
    }
}

impl<const N: usize> Sub for Series<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            self.c[i] -= rhs.c[i];
        }
        self
    }
}

impl<const N: usize> Neg for Series<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Series<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut c = [0.0; N];
        for i in 0..N {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..N - i {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Self { c }
    }
}

impl<const N: usize> Mul<f64> for Series<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> fmt::Display for Series<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &v) in self.c.iter().enumerate() {
            if v == 0.0 && !(first && k == N - 1) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{v}")?,
                1 => write!(f, "{v}·x")?,
                _ => write!(f, "{v}·x^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_truncates() {
        let a = PSeries::new([1.0, 2.0, 3.0]);
        let b = PSeries::new([0.0, 1.0, 1.0]);
        assert_eq!((a * b).coeffs(), &[0.0, 1.0, 3.0]);
    }

    #[test]
    fn inverse_of_one_minus_x() {
        let a = PSeries::new([1.0, -1.0, 0.0]);
        assert_eq!(a.inverse().unwrap().coeffs(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn zero_constant_has_no_inverse() {
        assert!(PSeries::var().inverse().is_err());
    }

    #[test]
    fn square_variable_rejects_odd() {
        let s = RootSeries::monomial(1.0, 1);
        assert!(s.square_variable::<5>(0.0).is_err());
        let t = RootSeries::monomial(0.25, 4);
        assert_eq!(t.square_variable::<3>(0.0).unwrap().coeffs(), &[0.0, 0.0, 0.25]);
    }

    #[test]
    fn shift_down_divides_by_x() {
        let s = PSeries::new([0.0, 2.0, 5.0]);
        assert_eq!(s.shift_down(1, 0.0).unwrap().coeffs(), &[2.0, 5.0, 0.0]);
        assert!(PSeries::one().shift_down(1, 0.0).is_err());
    }

    #[test]
    fn eval_horner() {
        let s = PSeries::new([1.0, 2.0, 3.0]);
        assert_eq!(s.eval(2.0), 17.0);
    }
}
