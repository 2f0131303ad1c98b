//! Operator classes on `H_γ(𝔻)` and their Berezin transforms
//! `T̃(λ) = ⟨T k̂_λ, k̂_λ⟩ = (1 − |λ|²)^γ (T k_λ)(λ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{normalization, DiskPoint, SpaceParams};
use crate::series::PowerSeries;

/// Tolerance on `|ζ| = 1` for finite Blaschke products.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// Holomorphic symbol of a multiplication operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Symbol {
    /// `a_0 + a_1 z + … + a_n zⁿ`, ascending coefficients.
    Polynomial { coeffs: Vec<Complex64> },
    /// `ζ (α − z) / (1 − ᾱz)`; ζ may be any complex number.
    BlaschkeFactor { zeta: Complex64, alpha: Complex64 },
    /// `ζ z^m Π (|α_k|/α_k)(α_k − z)/(1 − ᾱ_k z)` with `|ζ| = 1`.
    BlaschkeProduct {
        zeta: Complex64,
        m: u32,
        zeros: Vec<Complex64>,
    },
}

fn finite(c: Complex64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

impl Symbol {
    pub fn validate(&self) -> Result<()> {
        match self {
            Symbol::Polynomial { coeffs } => {
                if coeffs.is_empty() {
                    return Err(Error::InvalidSymbol("polynomial needs at least one coefficient".into()));
                }
                if !coeffs.iter().copied().all(finite) {
                    return Err(Error::NonFinite("polynomial coefficient"));
                }
            }
            Symbol::BlaschkeFactor { zeta, alpha } => {
                if !finite(*zeta) || !finite(*alpha) {
                    return Err(Error::NonFinite("Blaschke factor parameter"));
                }
                if alpha.norm() >= 1.0 {
                    return Err(Error::InvalidSymbol(format!(
                        "Blaschke factor needs |alpha| < 1, got |alpha| = {}",
                        alpha.norm()
                    )));
                }
            }
            Symbol::BlaschkeProduct { zeta, zeros, .. } => {
                if !finite(*zeta) || !zeros.iter().copied().all(finite) {
                    return Err(Error::NonFinite("Blaschke product parameter"));
                }
                if (zeta.norm() - 1.0).abs() > UNIMODULAR_TOL {
                    return Err(Error::InvalidSymbol(format!(
                        "Blaschke product needs |zeta| = 1, got |zeta| = {}",
                        zeta.norm()
                    )));
                }
                if let Some(a) = zeros.iter().find(|a| a.norm() >= 1.0) {
                    return Err(Error::InvalidSymbol(format!(
                        "Blaschke zeros must satisfy |alpha| < 1, got |alpha| = {}",
                        a.norm()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, Symbol::Polynomial { .. })
    }

    /// True when every defining coefficient is real.
    pub fn has_real_coefficients(&self) -> bool {
        match self {
            Symbol::Polynomial { coeffs } => coeffs.iter().all(|c| c.im == 0.0),
            Symbol::BlaschkeFactor { zeta, alpha } => zeta.im == 0.0 && alpha.im == 0.0,
            Symbol::BlaschkeProduct { zeta, zeros, .. } => {
                zeta.im == 0.0 && zeros.iter().all(|a| a.im == 0.0)
            }
        }
    }
}

/// Evaluates `φ(z)`.
///
/// A Blaschke zero at the origin contributes the factor `z`.
pub fn evaluate_symbol(symbol: &Symbol, z: Complex64) -> Result<Complex64> {
    if !finite(z) {
        return Err(Error::NonFinite("symbol argument"));
    }
    let one = Complex64::new(1.0, 0.0);
    match symbol {
        Symbol::Polynomial { coeffs } => Ok(coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)),
        Symbol::BlaschkeFactor { zeta, alpha } => {
            let den = one - alpha.conj() * z;
            if den.norm_sqr() == 0.0 {
                return Err(Error::Pole { re: z.re, im: z.im });
            }
            Ok(*zeta * (*alpha - z) / den)
        }
        Symbol::BlaschkeProduct { zeta, m, zeros } => {
            let mut acc = *zeta * z.powu(*m);
            for &a in zeros {
                if a.norm_sqr() == 0.0 {
                    acc *= z;
                    continue;
                }
                let den = one - a.conj() * z;
                if den.norm_sqr() == 0.0 {
                    return Err(Error::Pole { re: z.re, im: z.im });
                }
                acc *= (a.norm() / a) * (a - z) / den;
            }
            Ok(acc)
        }
    }
}

/// The operator classes whose Berezin ranges are computed in closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorSpec {
    /// `T f = ⟨f, z^m⟩ zⁿ`
    RankOneMonomial { m: u32, n: u32 },
    /// `T f = Σ_{i≥1} ⟨f, a_i z^i⟩ a_i z^i`; `coeffs[0]` is `a_1`.
    DiagonalMonomialSum { coeffs: Vec<Complex64> },
    /// `T f = Σ_{n≥1} ⟨f, a zⁿ⟩ a zⁿ`, `|a| < 1`.
    GeometricDiagonal { a: Complex64 },
    /// `T f = Σ ⟨f, g_i⟩ h_i`
    GeneralFiniteRank { pairs: Vec<(PowerSeries, PowerSeries)> },
    /// `P f = (k + 1) ⟨f, z^k⟩ z^k`
    ScaledProjection { k: u32 },
    /// `M_φ f = φ f`
    Multiplication { symbol: Symbol },
}

impl OperatorSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            OperatorSpec::RankOneMonomial { .. } | OperatorSpec::ScaledProjection { .. } => Ok(()),
            OperatorSpec::DiagonalMonomialSum { coeffs } => {
                if coeffs.is_empty() {
                    return Err(Error::InvalidOperator("diagonal sum needs at least one coefficient".into()));
                }
                if !coeffs.iter().copied().all(finite) {
                    return Err(Error::NonFinite("diagonal coefficient"));
                }
                Ok(())
            }
            OperatorSpec::GeometricDiagonal { a } => {
                if !finite(*a) {
                    return Err(Error::NonFinite("geometric diagonal coefficient"));
                }
                if a.norm() >= 1.0 {
                    return Err(Error::InvalidOperator(format!(
                        "geometric diagonal needs |a| < 1, got |a| = {}",
                        a.norm()
                    )));
                }
                Ok(())
            }
            OperatorSpec::GeneralFiniteRank { pairs } => {
                if pairs.is_empty() {
                    return Err(Error::InvalidOperator("finite-rank operator needs at least one pair".into()));
                }
                Ok(())
            }
            OperatorSpec::Multiplication { symbol } => symbol.validate(),
        }
    }

    /// Short class name, as used in diagnostics.
    pub fn class_name(&self) -> &'static str {
        match self {
            OperatorSpec::RankOneMonomial { .. } => "rank-one monomial operator",
            OperatorSpec::DiagonalMonomialSum { .. } => "diagonal monomial sum",
            OperatorSpec::GeometricDiagonal { .. } => "geometric diagonal operator",
            OperatorSpec::GeneralFiniteRank { .. } => "general finite-rank operator",
            OperatorSpec::ScaledProjection { .. } => "scaled projection",
            OperatorSpec::Multiplication { .. } => "multiplication operator",
        }
    }

    /// True when the operator is self-adjoint by its construction, so that
    /// its Berezin transform is real.
    pub fn is_self_adjoint(&self) -> bool {
        match self {
            OperatorSpec::RankOneMonomial { m, n } => m == n,
            OperatorSpec::DiagonalMonomialSum { .. }
            | OperatorSpec::GeometricDiagonal { .. }
            | OperatorSpec::ScaledProjection { .. } => true,
            OperatorSpec::GeneralFiniteRank { pairs } => pairs.iter().all(|(g, h)| g == h),
            OperatorSpec::Multiplication { .. } => false,
        }
    }

    /// True when all defining coefficients are real, which makes the
    /// Berezin range closed under conjugation.
    pub fn has_real_coefficients(&self) -> bool {
        match self {
            OperatorSpec::RankOneMonomial { .. } | OperatorSpec::ScaledProjection { .. } => true,
            OperatorSpec::DiagonalMonomialSum { coeffs } => coeffs.iter().all(|c| c.im == 0.0),
            OperatorSpec::GeometricDiagonal { .. } => true,
            OperatorSpec::GeneralFiniteRank { pairs } => {
                pairs.iter().all(|(g, h)| g.is_real() && h.is_real())
            }
            OperatorSpec::Multiplication { symbol } => symbol.has_real_coefficients(),
        }
    }

    /// Diagonal weights `(p, w)` for operators whose transform is
    /// `(1 − r²)^γ Σ w r^{2p}`; `None` for other classes.
    pub(crate) fn monomial_weights(&self) -> Option<Vec<(u32, f64)>> {
        match self {
            OperatorSpec::RankOneMonomial { m, n } if m == n => Some(vec![(*n, 1.0)]),
            OperatorSpec::ScaledProjection { k } => Some(vec![(*k, *k as f64 + 1.0)]),
            OperatorSpec::DiagonalMonomialSum { coeffs } => Some(
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (i as u32 + 1, a.norm_sqr()))
                    .collect(),
            ),
            OperatorSpec::GeneralFiniteRank { pairs } => pairs
                .iter()
                .map(|(g, h)| {
                    if g != h {
                        return None;
                    }
                    g.as_monomial().map(|(p, a)| (p as u32, a.norm_sqr()))
                })
                .collect(),
            _ => None,
        }
    }

    pub fn has_radial_profile(&self) -> bool {
        matches!(
            self,
            OperatorSpec::RankOneMonomial { .. } | OperatorSpec::GeometricDiagonal { .. }
        ) || self.monomial_weights().is_some()
    }
}

/// `(1 − r²)^γ r^{2n}`, computed the same way everywhere so that scaled
/// variants agree bit for bit.
#[inline]
fn diagonal_term(params: SpaceParams, r2: f64, n: u32) -> f64 {
    normalization(params, r2) * r2.powi(n as i32)
}

/// Berezin transform `T̃(λ)` from the closed forms.
///
/// Self-adjoint classes go through a real formula, so their imaginary part
/// is exactly zero.
pub fn berezin_transform(spec: &OperatorSpec, params: SpaceParams, lambda: DiskPoint) -> Complex64 {
    let l = lambda.value();
    let r2 = lambda.modulus_sqr();
    let real = |x: f64| Complex64::new(x, 0.0);
    match spec {
        OperatorSpec::RankOneMonomial { m, n } => {
            if m == n {
                real(diagonal_term(params, r2, *n))
            } else {
                normalization(params, r2) * l.conj().powu(*m) * l.powu(*n)
            }
        }
        OperatorSpec::DiagonalMonomialSum { coeffs } => {
            let sum: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a.norm_sqr() * r2.powi(i as i32 + 1))
                .sum();
            real(normalization(params, r2) * sum)
        }
        OperatorSpec::GeometricDiagonal { a } => {
            real(a.norm_sqr() * r2 * (1.0 - r2).powf(params.gamma() - 1.0))
        }
        OperatorSpec::GeneralFiniteRank { pairs } => {
            let w = normalization(params, r2);
            if spec.is_self_adjoint() {
                let sum: f64 = pairs.iter().map(|(g, _)| g.eval(l).norm_sqr()).sum();
                real(w * sum)
            } else {
                let sum: Complex64 = pairs.iter().map(|(g, h)| g.eval(l).conj() * h.eval(l)).sum();
                w * sum
            }
        }
        OperatorSpec::ScaledProjection { k } => real((*k as f64 + 1.0) * diagonal_term(params, r2, *k)),
        OperatorSpec::Multiplication { symbol } => {
            // |λ| < 1 keeps every Blaschke denominator away from zero.
            evaluate_symbol(symbol, l).expect("symbol is analytic on the open disc")
        }
    }
}

fn check_radius(r: f64, open_left: bool) -> Result<()> {
    let ok = r.is_finite() && r < 1.0 && if open_left { r > 0.0 } else { r >= 0.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("radius {r} outside the admissible range")))
    }
}

/// Profile `F(r)` of a radial class: `T̃(λ) = F(|λ|)` for the self-adjoint
/// radial classes and `|T̃(λ)| = F(|λ|)` for `⟨f, z^m⟩zⁿ` with `m ≠ n`.
pub fn radial_profile(spec: &OperatorSpec, params: SpaceParams, r: f64) -> Result<f64> {
    check_radius(r, false)?;
    let r2 = r * r;
    match spec {
        OperatorSpec::RankOneMonomial { m, n } if m != n => {
            Ok(normalization(params, r2) * r.powi((m + n) as i32))
        }
        OperatorSpec::GeometricDiagonal { a } => {
            Ok(a.norm_sqr() * r2 * (1.0 - r2).powf(params.gamma() - 1.0))
        }
        OperatorSpec::ScaledProjection { k } => Ok((*k as f64 + 1.0) * diagonal_term(params, r2, *k)),
        OperatorSpec::RankOneMonomial { n, .. } => Ok(diagonal_term(params, r2, *n)),
        _ => {
            let weights = spec
                .monomial_weights()
                .ok_or(Error::NoRadialProfile(spec.class_name()))?;
            let sum: f64 = weights.iter().map(|&(p, w)| w * r2.powi(p as i32)).sum();
            Ok(normalization(params, r2) * sum)
        }
    }
}

/// `d/dr [(1 − r²)^γ r^{2p}] = 2 r^{2p−1} (1 − r²)^{γ−1} [p − (p + γ) r²]`
fn diagonal_term_derivative(gamma: f64, r: f64, p: u32) -> f64 {
    let r2 = r * r;
    2.0 * r.powi(2 * p as i32 - 1) * (1.0 - r2).powf(gamma - 1.0) * (p as f64 - (p as f64 + gamma) * r2)
}

/// Closed-form `dF/dr` of [`radial_profile`] on `0 < r < 1`.
pub fn radial_profile_derivative(spec: &OperatorSpec, params: SpaceParams, r: f64) -> Result<f64> {
    check_radius(r, true)?;
    let g = params.gamma();
    let r2 = r * r;
    match spec {
        OperatorSpec::RankOneMonomial { m, n } if m != n => {
            let s = (m + n) as f64;
            Ok((1.0 - r2).powf(g - 1.0) * r.powi((m + n) as i32 - 1) * (s - (s + 2.0 * g) * r2))
        }
        OperatorSpec::GeometricDiagonal { a } => {
            Ok(2.0 * a.norm_sqr() * r * (1.0 - r2).powf(g - 2.0) * (1.0 - g * r2))
        }
        _ => {
            let weights = spec
                .monomial_weights()
                .ok_or(Error::NoRadialProfile(spec.class_name()))?;
            Ok(weights
                .iter()
                .map(|&(p, w)| w * diagonal_term_derivative(g, r, p))
                .sum())
        }
    }
}
