use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncated power series `c_0 + c_1 z + … + c_N z^N` about the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "power series needs at least one coefficient".into(),
            ));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite("power series coefficient"));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `scale · zⁿ`
    pub fn monomial(n: usize, scale: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = scale;
        Self { coeffs }
    }

    /// Taylor polynomial of `sin z` through degree `depth`.
    pub fn sine(depth: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); depth + 1];
        let mut term = 1.0;
        for k in 1..=depth {
            term /= k as f64;
            if k % 2 == 1 {
                let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                coeffs[k] = Complex64::new(sign * term, 0.0);
            }
        }
        Self { coeffs }
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Truncation order `N`.
    #[inline]
    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Index of the highest non-zero coefficient (0 for the zero series).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.re != 0.0 || c.im != 0.0)
            .unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// `Some((n, a))` when the series is exactly `a zⁿ`.
    pub fn as_monomial(&self) -> Option<(usize, Complex64)> {
        let mut found = None;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.re != 0.0 || c.im != 0.0 {
                if found.is_some() {
                    return None;
                }
                found = Some((n, *c));
            }
        }
        found
    }

    /// Horner evaluation of the finite sum.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Cauchy product truncated at `depth`.
    pub fn mul_truncated(&self, other: &PowerSeries, depth: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); depth + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(depth + 1) {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(depth + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Coefficient-wise sum; the shorter series is zero-extended.
    pub fn add(&self, other: &PowerSeries) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        let coeffs = (0..n)
            .map(|k| {
                self.coeffs.get(k).copied().unwrap_or(zero) + other.coeffs.get(k).copied().unwrap_or(zero)
            })
            .collect();
        Self { coeffs }
    }
}
