//! Exact Berezin-range descriptions, critical radii and extremal values.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{monomial_norm_sq, DiskPoint, SpaceParams};
use crate::operators::{berezin_transform, radial_profile, OperatorSpec, Symbol};
use crate::roots::polynomial_roots;
use crate::series_oracle::inner_product_series;

/// `|γ − 1|` below which the geometric diagonal operator is treated as the
/// boundary case `γ = 1`.
pub const GAMMA_ONE_TOL: f64 = 1e-12;

const SCAN_POINTS: usize = 1024;

/// Shape of a Berezin range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape")]
pub enum RangeDescription {
    ClosedInterval { lo: f64, hi: f64 },
    /// `[lo, hi)`
    HalfOpenInterval { lo: f64, hi_excluded: f64 },
    /// `(lo, hi]`
    LeftOpenInterval { lo_excluded: f64, hi: f64 },
    /// `[lo, ∞)`
    Ray { lo: f64 },
    ClosedDisc { center: Complex64, radius: f64 },
    OpenDisc { center: Complex64, radius: f64 },
    /// `φ(𝔻)` with no simpler description.
    ImageSet { symbol: Symbol },
    /// No closed form; the range lies in the closed disc `|w| ≤ radius`.
    ContainedInDisc { radius: f64 },
}

impl RangeDescription {
    /// Membership test. Closed boundaries are widened by `slack`; open
    /// boundaries are strict. For [`RangeDescription::ImageSet`] the test
    /// solves `φ(z) = w` and accepts roots with `|z| < 1 + slack`.
    pub fn contains(&self, w: Complex64, slack: f64) -> bool {
        let on_axis = w.im.abs() <= slack;
        match self {
            RangeDescription::ClosedInterval { lo, hi } => on_axis && w.re >= lo - slack && w.re <= hi + slack,
            RangeDescription::HalfOpenInterval { lo, hi_excluded } => {
                on_axis && w.re >= lo - slack && w.re < *hi_excluded
            }
            RangeDescription::LeftOpenInterval { lo_excluded, hi } => {
                on_axis && w.re > *lo_excluded && w.re <= hi + slack
            }
            RangeDescription::Ray { lo } => on_axis && w.re >= lo - slack,
            RangeDescription::ClosedDisc { center, radius } => (w - center).norm() <= radius + slack,
            RangeDescription::OpenDisc { center, radius } => (w - center).norm() < *radius,
            RangeDescription::ContainedInDisc { radius } => w.norm() <= radius + slack,
            RangeDescription::ImageSet { symbol } => image_contains(symbol, w, slack),
        }
    }

    /// Largest modulus over the described set (`∞` for rays).
    pub fn sup_modulus(&self) -> f64 {
        match self {
            RangeDescription::ClosedInterval { lo, hi } => lo.abs().max(hi.abs()),
            RangeDescription::HalfOpenInterval { lo, hi_excluded } => lo.abs().max(hi_excluded.abs()),
            RangeDescription::LeftOpenInterval { lo_excluded, hi } => lo_excluded.abs().max(hi.abs()),
            RangeDescription::Ray { .. } => f64::INFINITY,
            RangeDescription::ClosedDisc { center, radius } | RangeDescription::OpenDisc { center, radius } => {
                center.norm() + radius
            }
            RangeDescription::ContainedInDisc { radius } => *radius,
            RangeDescription::ImageSet { .. } => f64::NAN,
        }
    }

    pub fn is_convex_by_construction(&self) -> bool {
        !matches!(
            self,
            RangeDescription::ImageSet { .. } | RangeDescription::ContainedInDisc { .. }
        )
    }
}

fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

impl fmt::Display for RangeDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RangeDescription::ClosedInterval { lo, hi } => write!(f, "ClosedInterval [{lo}, {hi}]"),
            RangeDescription::HalfOpenInterval { lo, hi_excluded } => {
                write!(f, "HalfOpenInterval [{lo}, {hi_excluded})")
            }
            RangeDescription::LeftOpenInterval { lo_excluded, hi } => {
                write!(f, "LeftOpenInterval ({lo_excluded}, {hi}]")
            }
            RangeDescription::Ray { lo } => write!(f, "Ray [{lo}, inf)"),
            RangeDescription::ClosedDisc { center, radius } => {
                write!(f, "ClosedDisc center={} radius={radius}", fmt_c(*center))
            }
            RangeDescription::OpenDisc { center, radius } => {
                write!(f, "OpenDisc center={} radius={radius}", fmt_c(*center))
            }
            RangeDescription::ImageSet { .. } => write!(f, "ImageSet phi(D)"),
            RangeDescription::ContainedInDisc { radius } => write!(f, "ContainedInDisc radius={radius}"),
        }
    }
}

/// Numerator and denominator polynomials of a rational symbol.
fn symbol_as_ratio(symbol: &Symbol) -> (Vec<Complex64>, Vec<Complex64>) {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mul = |p: &[Complex64], q: &[Complex64]| {
        let mut out = vec![zero; p.len() + q.len() - 1];
        for (i, &a) in p.iter().enumerate() {
            for (j, &b) in q.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    match symbol {
        Symbol::Polynomial { coeffs } => (coeffs.clone(), vec![one]),
        Symbol::BlaschkeFactor { zeta, alpha } => (
            vec![*zeta * *alpha, -*zeta],
            vec![one, -alpha.conj()],
        ),
        Symbol::BlaschkeProduct { zeta, m, zeros } => {
            let mut num = vec![zero; *m as usize + 1];
            num[*m as usize] = *zeta;
            let mut den = vec![one];
            for &a in zeros {
                if a.norm_sqr() == 0.0 {
                    num = mul(&num, &[zero, one]);
                } else {
                    let u = a.norm() / a;
                    num = mul(&num, &[u * a, -u]);
                    den = mul(&den, &[one, -a.conj()]);
                }
            }
            (num, den)
        }
    }
}

/// `w ∈ φ(𝔻)` by solving `P(z) − w Q(z) = 0`.
fn image_contains(symbol: &Symbol, w: Complex64, slack: f64) -> bool {
    let (num, den) = symbol_as_ratio(symbol);
    let n = num.len().max(den.len());
    let zero = Complex64::new(0.0, 0.0);
    let poly: Vec<Complex64> = (0..n)
        .map(|k| num.get(k).copied().unwrap_or(zero) - w * den.get(k).copied().unwrap_or(zero))
        .collect();
    match polynomial_roots(&poly) {
        // φ ≡ w
        None => true,
        Some(roots) => roots.iter().any(|z| z.norm() < 1.0 + slack),
    }
}

/// `γ^γ nⁿ / (n + γ)^{n+γ}`, the maximum of `(1 − r²)^γ r^{2n}`.
pub fn rank_one_max(n: u32, gamma: f64) -> f64 {
    let s = n as f64 + gamma;
    (gamma / s).powf(gamma) * (n as f64 / s).powi(n as i32)
}

/// `(2γ / (s + 2γ))^γ (s / (s + 2γ))^{s/2}` with `s = m + n`, the maximum
/// of `(1 − r²)^γ r^s`.
pub fn rank_one_disc_radius(m: u32, n: u32, gamma: f64) -> f64 {
    let s = (m + n) as f64;
    let t = s + 2.0 * gamma;
    (2.0 * gamma / t).powf(gamma) * (s / t).powf(s / 2.0)
}

/// `|a|² (γ − 1)^{γ−1} / γ^γ` for `γ > 1`.
pub fn geometric_diagonal_max(a_sqr: f64, gamma: f64) -> f64 {
    a_sqr * ((gamma - 1.0) / gamma).powf(gamma - 1.0) / gamma
}

fn is_gamma_one(params: SpaceParams) -> bool {
    (params.gamma() - 1.0).abs() < GAMMA_ONE_TOL
}

/// Classifies a polynomial as constant, `A zⁿ + B`, or neither.
fn polynomial_disc(coeffs: &[Complex64]) -> Option<(Complex64, f64)> {
    let nonzero: Vec<(usize, Complex64)> = coeffs
        .iter()
        .copied()
        .enumerate()
        .filter(|(k, c)| *k > 0 && c.norm_sqr() > 0.0)
        .collect();
    match nonzero.as_slice() {
        [] => Some((coeffs[0], 0.0)),
        [(_, a)] => Some((coeffs[0], a.norm())),
        _ => None,
    }
}

/// Predicted Berezin range.
pub fn predict_range(spec: &OperatorSpec, params: SpaceParams) -> RangeDescription {
    range_report(spec, params).range
}

/// A predicted range together with its provenance flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeReport {
    pub range: RangeDescription,
    /// Endpoints come from a numerical search rather than a formula.
    pub estimated: bool,
    /// Extensions beyond the classical hypotheses and known discrepancies.
    pub notes: Vec<String>,
}

pub fn range_report(spec: &OperatorSpec, params: SpaceParams) -> RangeReport {
    let g = params.gamma();
    let mut notes = Vec::new();
    let mut estimated = false;
    let range = match spec {
        OperatorSpec::RankOneMonomial { m, n } => {
            if *m == 0 || *n == 0 {
                notes.push(format!(
                    "extension: m = {m}, n = {n}; the closed form is stated for m, n >= 1 and is applied verbatim"
                ));
            }
            if m == n {
                if *n == 0 {
                    RangeDescription::LeftOpenInterval { lo_excluded: 0.0, hi: 1.0 }
                } else {
                    RangeDescription::ClosedInterval { lo: 0.0, hi: rank_one_max(*n, g) }
                }
            } else {
                RangeDescription::ClosedDisc {
                    center: Complex64::new(0.0, 0.0),
                    radius: rank_one_disc_radius(*m, *n, g),
                }
            }
        }
        OperatorSpec::DiagonalMonomialSum { .. } => {
            let (range, searched) = radial_interval(spec, params);
            estimated = searched;
            range
        }
        OperatorSpec::GeometricDiagonal { a } => {
            let a2 = a.norm_sqr();
            if a2 == 0.0 {
                RangeDescription::ClosedInterval { lo: 0.0, hi: 0.0 }
            } else if is_gamma_one(params) {
                notes.push(
                    "discrepancy: the reference table's weighted-space column lists [0, inf) for \
                     0 < gamma <= 1, but at gamma = 1 the transform |a|^2 |lambda|^2 stays below |a|^2; \
                     reporting [0, |a|^2)"
                        .to_string(),
                );
                RangeDescription::HalfOpenInterval { lo: 0.0, hi_excluded: a2 }
            } else if g > 1.0 {
                RangeDescription::ClosedInterval { lo: 0.0, hi: geometric_diagonal_max(a2, g) }
            } else {
                RangeDescription::Ray { lo: 0.0 }
            }
        }
        OperatorSpec::ScaledProjection { k } => {
            if *k == 0 {
                notes.push(
                    "extension: k = 0 gives (1 - |lambda|^2)^gamma with range (0, 1]; 0 is not attained".to_string(),
                );
                RangeDescription::LeftOpenInterval { lo_excluded: 0.0, hi: 1.0 }
            } else {
                RangeDescription::ClosedInterval {
                    lo: 0.0,
                    hi: (*k as f64 + 1.0) * rank_one_max(*k, g),
                }
            }
        }
        OperatorSpec::GeneralFiniteRank { .. } if spec.has_radial_profile() => {
            let (range, searched) = radial_interval(spec, params);
            estimated = searched;
            range
        }
        OperatorSpec::GeneralFiniteRank { pairs } => {
            if spec.is_self_adjoint() {
                estimated = true;
                notes.push(
                    "estimated: the range is an interval; endpoints come from a numerical search and \
                     their attainment is not certified"
                        .to_string(),
                );
                let (lo, hi) = self_adjoint_extrema(spec, params);
                RangeDescription::ClosedInterval { lo, hi }
            } else {
                notes.push("no closed form; reporting the operator-norm disc that contains the range".to_string());
                let radius = pairs
                    .iter()
                    .map(|(g, h)| {
                        (inner_product_series(params, g, g).re * inner_product_series(params, h, h).re).sqrt()
                    })
                    .sum();
                RangeDescription::ContainedInDisc { radius }
            }
        }
        OperatorSpec::Multiplication { symbol } => match symbol {
            Symbol::Polynomial { coeffs } => match polynomial_disc(coeffs) {
                Some((center, 0.0)) => RangeDescription::ClosedDisc { center, radius: 0.0 },
                Some((center, radius)) => RangeDescription::OpenDisc { center, radius },
                None => RangeDescription::ImageSet { symbol: symbol.clone() },
            },
            Symbol::BlaschkeFactor { zeta, .. } => {
                if zeta.norm_sqr() == 0.0 {
                    RangeDescription::ClosedDisc { center: *zeta, radius: 0.0 }
                } else {
                    RangeDescription::OpenDisc {
                        center: Complex64::new(0.0, 0.0),
                        radius: zeta.norm(),
                    }
                }
            }
            Symbol::BlaschkeProduct { zeta, m, zeros } => {
                if *m == 0 && zeros.is_empty() {
                    RangeDescription::ClosedDisc { center: *zeta, radius: 0.0 }
                } else {
                    RangeDescription::OpenDisc {
                        center: Complex64::new(0.0, 0.0),
                        radius: 1.0,
                    }
                }
            }
        },
    };
    RangeReport { range, estimated, notes }
}

/// Range of `(1 − r²)^γ Σ w r^{2p}`. A single term has a closed form; sums
/// are maximized numerically, and the flag reports that.
fn radial_interval(spec: &OperatorSpec, params: SpaceParams) -> (RangeDescription, bool) {
    let weights: Vec<(u32, f64)> = spec
        .monomial_weights()
        .unwrap_or_default()
        .into_iter()
        .filter(|&(_, w)| w > 0.0)
        .collect();
    let constant = weights.iter().any(|&(p, _)| p == 0);
    let (hi, searched) = match weights.as_slice() {
        [] => return (RangeDescription::ClosedInterval { lo: 0.0, hi: 0.0 }, false),
        [(0, w)] => (*w, false),
        [(p, w)] => (w * rank_one_max(*p, params.gamma()), false),
        _ => {
            let profile = |r: f64| radial_profile(spec, params, r).unwrap_or(0.0);
            let (_, max) = scalar_max_search(profile);
            (max.max(profile(0.0)), true)
        }
    };
    let range = if constant {
        RangeDescription::LeftOpenInterval { lo_excluded: 0.0, hi }
    } else {
        RangeDescription::ClosedInterval { lo: 0.0, hi }
    };
    (range, searched)
}

/// Extrema of a real Berezin transform over the disc: polar scan followed by
/// compass-search refinement.
fn self_adjoint_extrema(spec: &OperatorSpec, params: SpaceParams) -> (f64, f64) {
    const R_MAX: f64 = 1.0 - 1e-12;
    let eval = |r: f64, t: f64| {
        let r = r.clamp(0.0, R_MAX);
        let l = DiskPoint::new(Complex64::from_polar(r, t)).unwrap_or_else(|_| DiskPoint::origin());
        berezin_transform(spec, params, l).re
    };
    let (nr, nt) = (200usize, 256usize);
    let mut best_lo = (0.0, 0.0, eval(0.0, 0.0));
    let mut best_hi = best_lo;
    for i in 0..=nr {
        // denser near the boundary
        let s = i as f64 / nr as f64;
        let r = (1.0 - (1.0 - s).powi(3)) * R_MAX;
        for j in 0..nt {
            let t = 2.0 * std::f64::consts::PI * j as f64 / nt as f64;
            let v = eval(r, t);
            if v < best_lo.2 {
                best_lo = (r, t, v);
            }
            if v > best_hi.2 {
                best_hi = (r, t, v);
            }
        }
    }
    let refine = |start: (f64, f64, f64), sign: f64| {
        let (mut r, mut t, mut v) = start;
        let (mut dr, mut dt) = (1.0 / nr as f64, 2.0 * std::f64::consts::PI / nt as f64);
        while dr > 1e-14 {
            let mut improved = false;
            for (er, et) in [(dr, 0.0), (-dr, 0.0), (0.0, dt), (0.0, -dt)] {
                let (cr, ct) = ((r + er).clamp(0.0, R_MAX), t + et);
                let cv = eval(cr, ct);
                if sign * cv > sign * v {
                    (r, t, v) = (cr, ct, cv);
                    improved = true;
                }
            }
            if !improved {
                dr *= 0.5;
                dt *= 0.5;
            }
        }
        v
    };
    (refine(best_lo, -1.0), refine(best_hi, 1.0))
}

/// Location `r²` and value of the interior maximum of a radial profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub r_squared: f64,
    pub value: f64,
}

pub fn critical_radius(spec: &OperatorSpec, params: SpaceParams) -> Result<CriticalPoint> {
    let g = params.gamma();
    match spec {
        OperatorSpec::RankOneMonomial { m, n } => {
            if m + n == 0 {
                return Err(Error::NoInteriorMaximum(
                    "m = n = 0: the profile (1 - r^2)^gamma is maximal at the origin".into(),
                ));
            }
            if m == n {
                let nf = *n as f64;
                Ok(CriticalPoint { r_squared: nf / (nf + g), value: rank_one_max(*n, g) })
            } else {
                let s = (m + n) as f64;
                Ok(CriticalPoint {
                    r_squared: s / (s + 2.0 * g),
                    value: rank_one_disc_radius(*m, *n, g),
                })
            }
        }
        OperatorSpec::ScaledProjection { k } => {
            if *k == 0 {
                return Err(Error::NoInteriorMaximum(
                    "k = 0: the profile (1 - r^2)^gamma is maximal at the origin".into(),
                ));
            }
            let kf = *k as f64;
            Ok(CriticalPoint {
                r_squared: kf / (kf + g),
                value: (kf + 1.0) * rank_one_max(*k, g),
            })
        }
        OperatorSpec::GeometricDiagonal { a } => {
            if is_gamma_one(params) {
                Err(Error::NoInteriorMaximum(
                    "gamma = 1: the profile increases to the supremum |a|^2, which is not attained".into(),
                ))
            } else if g < 1.0 {
                Err(Error::NoInteriorMaximum(
                    "0 < gamma < 1: the profile is unbounded; the range is the ray [0, inf)".into(),
                ))
            } else {
                Ok(CriticalPoint {
                    r_squared: 1.0 / g,
                    value: geometric_diagonal_max(a.norm_sqr(), g),
                })
            }
        }
        _ if spec.has_radial_profile() => {
            let (r, value) = scalar_max_search(|r| radial_profile(spec, params, r).unwrap_or(0.0));
            Ok(CriticalPoint { r_squared: r * r, value })
        }
        _ => Err(Error::NoRadialProfile(spec.class_name())),
    }
}

fn golden_section_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, width: f64) -> f64 {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > width {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Maximizes a profile on `(0, 1)`: uniform 1024-point scan, golden-section
/// refinement around the best sample, then bisection on the sign of a
/// finite-difference derivative.
pub fn scalar_max_search<F: Fn(f64) -> f64>(profile: F) -> (f64, f64) {
    let step = 1.0 / SCAN_POINTS as f64;
    let (best, _) = (1..SCAN_POINTS)
        .map(|i| (i, profile(i as f64 * step)))
        .fold((1, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let lo = (best as f64 - 1.0) * step;
    let hi = ((best as f64 + 1.0) * step).min(1.0 - 1e-15);
    let x0 = golden_section_max(&profile, lo.max(1e-15), hi, 1e-9);

    // five-point stencil
    let slope = |x: f64| {
        let h = 1e-4_f64.min(x / 3.0).min((1.0 - x) / 3.0);
        (profile(x - 2.0 * h) - profile(x + 2.0 * h) + 8.0 * (profile(x + h) - profile(x - h))) / (12.0 * h)
    };
    let mut x = x0;
    let mut delta = 1e-8;
    for _ in 0..8 {
        let (mut a, mut b) = ((x0 - delta).max(1e-15), (x0 + delta).min(1.0 - 1e-15));
        if slope(a) > 0.0 && slope(b) < 0.0 {
            while b - a > 1e-14 {
                let mid = 0.5 * (a + b);
                if slope(mid) > 0.0 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            x = 0.5 * (a + b);
            break;
        }
        delta *= 4.0;
    }
    // Near a maximum the values agree to rounding, so the stationary point
    // wins unless it is clearly worse.
    let (fx, f0) = (profile(x), profile(x0));
    if fx >= f0 - 4.0 * f64::EPSILON * f0.abs() {
        (x, fx)
    } else {
        (x0, f0)
    }
}

/// `‖T‖` for rank-one and finite-rank operators; bounds the Berezin radius.
pub fn rank_one_norm_bound(spec: &OperatorSpec, params: SpaceParams) -> Result<f64> {
    match spec {
        OperatorSpec::RankOneMonomial { m, n } => {
            Ok((monomial_norm_sq(params, *m as usize) * monomial_norm_sq(params, *n as usize)).sqrt())
        }
        OperatorSpec::ScaledProjection { k } => Ok((*k as f64 + 1.0) * monomial_norm_sq(params, *k as usize)),
        OperatorSpec::DiagonalMonomialSum { coeffs } => Ok(coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm_sqr() * monomial_norm_sq(params, i + 1))
            .sum()),
        OperatorSpec::GeneralFiniteRank { pairs } => Ok(pairs
            .iter()
            .map(|(g, h)| (inner_product_series(params, g, g).re * inner_product_series(params, h, h).re).sqrt())
            .sum()),
        OperatorSpec::GeometricDiagonal { .. } => Err(Error::Unsupported(
            "norm bound is only provided for finite-rank operators".into(),
        )),
        OperatorSpec::Multiplication { .. } => Err(Error::Unsupported(
            "multiplication operators are bounded by sup |phi| on the circle, not by a rank-one norm".into(),
        )),
    }
}

/// `(γ, γ^γ nⁿ/(n+γ)^{n+γ})` for each weight, the top of the range of
/// `⟨f, zⁿ⟩zⁿ`.
pub fn gamma_limit_curve(n: u32, gammas: &[f64]) -> Result<Vec<(f64, f64)>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if gammas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("weights must be sorted ascending".into()));
    }
    gammas
        .iter()
        .map(|&g| {
            SpaceParams::new(g)?;
            Ok((g, rank_one_max(n, g)))
        })
        .collect()
}
