//! Reproducing-kernel primitives of the weighted Hardy space `H_γ(𝔻)`.
//!
//! The kernel is `k_λ(z) = (1 − λ̄z)^(−γ)`, with the complex power taken on
//! the principal branch of the logarithm. Expanding binomially,
//! `k_λ(z) = Σ c_n(γ) λ̄ⁿ zⁿ` with `c_n(γ) = Γ(γ+n) / (n! Γ(γ))`, which fixes
//! the monomial norms `‖zⁿ‖² = 1 / c_n(γ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The weight `γ > 0` selecting the space `H_γ(𝔻)`.
///
/// `γ = 1` is the Hardy space and `γ = 2` the Bergman space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    gamma: f64,
}

impl SpaceParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma.is_finite() && gamma > 0.0 {
            Ok(Self { gamma })
        } else {
            Err(Error::InvalidGamma(gamma))
        }
    }

    pub fn hardy() -> Self {
        Self { gamma: 1.0 }
    }

    pub fn bergman() -> Self {
        Self { gamma: 2.0 }
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// A point `λ` of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    lambda: Complex64,
}

impl DiskPoint {
    pub fn new(lambda: Complex64) -> Result<Self> {
        if !(lambda.re.is_finite() && lambda.im.is_finite()) {
            return Err(Error::NonFinite("disc point"));
        }
        if lambda.norm_sqr() >= 1.0 {
            return Err(Error::outside(lambda));
        }
        Ok(Self { lambda })
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn origin() -> Self {
        Self {
            lambda: Complex64::new(0.0, 0.0),
        }
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.lambda
    }

    #[inline]
    pub fn modulus_sqr(&self) -> f64 {
        self.lambda.norm_sqr()
    }

    pub fn conj(&self) -> Self {
        Self {
            lambda: self.lambda.conj(),
        }
    }
}

fn check_in_disc(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("evaluation point"));
    }
    if z.norm_sqr() >= 1.0 {
        return Err(Error::outside(z));
    }
    Ok(())
}

/// `k_λ(z) = exp(γ · Log(1 / (1 − λ̄z)))`.
pub fn kernel_value(params: SpaceParams, lambda: DiskPoint, z: Complex64) -> Result<Complex64> {
    check_in_disc(z)?;
    let base = Complex64::new(1.0, 0.0) - lambda.value().conj() * z;
    // Log(1/w) = -Log(w) holds on the principal branch because Re w > 0 here.
    Ok((-params.gamma() * base.ln()).exp())
}

/// `‖k_λ‖² = k_λ(λ) = (1 − |λ|²)^(−γ)`.
pub fn kernel_norm_sq(params: SpaceParams, lambda: DiskPoint) -> f64 {
    (1.0 - lambda.modulus_sqr()).powf(-params.gamma())
}

/// The factor `(1 − |λ|²)^γ = 1 / ‖k_λ‖²` that turns `⟨T k_λ, k_λ⟩` into a
/// Berezin transform.
#[inline]
pub(crate) fn normalization(params: SpaceParams, modulus_sqr: f64) -> f64 {
    (1.0 - modulus_sqr).powf(params.gamma())
}

/// The unit-norm kernel `k̂_λ = k_λ / ‖k_λ‖`.
pub fn normalized_kernel_value(
    params: SpaceParams,
    lambda: DiskPoint,
    z: Complex64,
) -> Result<Complex64> {
    let k = kernel_value(params, lambda, z)?;
    Ok(k * normalization(params, lambda.modulus_sqr()).sqrt())
}

/// Taylor coefficient `c_n(γ)` of `(1 − x)^(−γ)`, by the recurrence
/// `c_{n+1} = c_n (γ + n) / (n + 1)`.
pub fn kernel_taylor_coeff(params: SpaceParams, n: usize) -> f64 {
    let g = params.gamma();
    (0..n).fold(1.0, |c, k| c * (g + k as f64) / (k as f64 + 1.0))
}

/// `c_0(γ), …, c_depth(γ)`.
pub fn kernel_taylor_coeffs(params: SpaceParams, depth: usize) -> Vec<f64> {
    let g = params.gamma();
    let mut out = Vec::with_capacity(depth + 1);
    let mut c = 1.0;
    out.push(c);
    for k in 0..depth {
        c = c * (g + k as f64) / (k as f64 + 1.0);
        out.push(c);
    }
    out
}

/// `‖zⁿ‖² = 1 / c_n(γ)`.
pub fn monomial_norm_sq(params: SpaceParams, n: usize) -> f64 {
    1.0 / kernel_taylor_coeff(params, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn rejects_bad_params() {
        assert!(SpaceParams::new(0.0).is_err());
        assert!(SpaceParams::new(-1.0).is_err());
        assert!(SpaceParams::new(f64::NAN).is_err());
        assert!(SpaceParams::new(f64::INFINITY).is_err());
        assert!(DiskPoint::new(c(1.0, 0.0)).is_err());
        assert!(DiskPoint::new(c(0.6, 0.8)).is_err());
        assert!(DiskPoint::new(c(f64::NAN, 0.0)).is_err());
        assert!(DiskPoint::new(c(0.6, 0.79)).is_ok());
    }

    #[test]
    fn kernel_values() {
        let g1 = SpaceParams::new(1.0).unwrap();
        let g2 = SpaceParams::new(2.0).unwrap();
        let v = kernel_value(g1, DiskPoint::origin(), c(0.5, 0.0)).unwrap();
        assert_eq!(v, c(1.0, 0.0));

        let l = DiskPoint::from_parts(0.5, 0.0).unwrap();
        let v = kernel_value(g2, l, c(0.5, 0.0)).unwrap();
        assert!((v - c(1.0 / 0.5625, 0.0)).norm() < 1e-14);

        // Szegő kernel at λ = 0.5i, z = 0.5: 1 / (1 + 0.25i).
        let l = DiskPoint::from_parts(0.0, 0.5).unwrap();
        let v = kernel_value(g1, l, c(0.5, 0.0)).unwrap();
        let expected = c(1.0, 0.0) / c(1.0, 0.25);
        assert!((v - expected).norm() < 1e-15);

        assert!(kernel_value(g1, l, c(1.0, 0.0)).is_err());
        assert!(kernel_value(g1, l, c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn kernel_norms() {
        let l = DiskPoint::from_parts(0.5_f64.sqrt(), 0.0).unwrap();
        assert_eq!(kernel_norm_sq(SpaceParams::hardy(), DiskPoint::origin()), 1.0);
        assert!(close(kernel_norm_sq(SpaceParams::bergman(), l), 4.0, 1e-14));
        let l = DiskPoint::from_parts(0.0, 0.75_f64.sqrt()).unwrap();
        assert!(close(kernel_norm_sq(SpaceParams::new(0.5).unwrap(), l), 2.0, 1e-14));
    }

    #[test]
    fn normalized_kernel() {
        let g = SpaceParams::new(3.7).unwrap();
        let v = normalized_kernel_value(g, DiskPoint::origin(), c(0.3, -0.2)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);

        let l = DiskPoint::from_parts(0.6, 0.0).unwrap();
        let v = normalized_kernel_value(SpaceParams::bergman(), l, c(0.6, 0.0)).unwrap();
        assert!((v.re - 1.0 / 0.64).abs() < 1e-13 && v.im.abs() < 1e-15);

        let l = DiskPoint::from_parts(0.5, 0.0).unwrap();
        let v = normalized_kernel_value(SpaceParams::hardy(), l, c(0.0, 0.0)).unwrap();
        assert!((v.re - 0.75_f64.sqrt()).abs() < 1e-15);

        // ⟨k̂_λ, k̂_λ⟩ = k̂_λ(λ)·‖k_λ‖⁻¹ = 1
        let l = DiskPoint::from_parts(0.3, 0.5).unwrap();
        let g = SpaceParams::new(0.4).unwrap();
        let v = normalized_kernel_value(g, l, l.value()).unwrap();
        let self_inner = v * normalization(g, l.modulus_sqr()).sqrt();
        assert!((self_inner - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn taylor_coefficients() {
        assert_eq!(kernel_taylor_coeff(SpaceParams::hardy(), 5), 1.0);
        assert_eq!(kernel_taylor_coeff(SpaceParams::bergman(), 3), 4.0);
        assert_eq!(kernel_taylor_coeff(SpaceParams::new(0.5).unwrap(), 1), 0.5);
        assert_eq!(kernel_taylor_coeff(SpaceParams::new(0.5).unwrap(), 0), 1.0);

        let g = SpaceParams::new(2.5).unwrap();
        let all = kernel_taylor_coeffs(g, 40);
        for (n, &cn) in all.iter().enumerate() {
            assert_eq!(cn, kernel_taylor_coeff(g, n));
        }
    }

    #[test]
    fn monomial_norms() {
        assert_eq!(monomial_norm_sq(SpaceParams::hardy(), 3), 1.0);
        assert_eq!(monomial_norm_sq(SpaceParams::bergman(), 1), 0.5);
        assert_eq!(monomial_norm_sq(SpaceParams::bergman(), 3), 0.25);
    }

    #[test]
    fn principal_branch_for_fractional_weight() {
        let g = SpaceParams::new(0.5).unwrap();
        let l = DiskPoint::from_parts(0.0, 0.9).unwrap();
        let z = c(0.9, 0.0);
        let w = c(1.0, 0.0) - l.value().conj() * z; // 1 + 0.81i
        let v = kernel_value(g, l, z).unwrap();
        let expected = Complex64::from_polar(w.norm().powf(-0.5), -0.5 * w.arg());
        assert!((v - expected).norm() < 1e-15);
    }
}
