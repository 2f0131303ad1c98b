//! Berezin transforms from first principles: truncated kernel expansions and
//! monomial inner products, with no use of the closed forms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{kernel_norm_sq, kernel_taylor_coeffs, DiskPoint, SpaceParams};
use crate::operators::{berezin_transform, OperatorSpec, Symbol};
use crate::series::PowerSeries;

pub const DEFAULT_DEPTH: usize = 200;

/// Largest `|λ|` the oracle accepts.
pub const MAX_MODULUS: f64 = 0.95;

/// `⟨f, g⟩ = Σ f_n conj(g_n) ‖zⁿ‖²` over the common coefficients.
pub fn inner_product_series(params: SpaceParams, f: &PowerSeries, g: &PowerSeries) -> Complex64 {
    let len = f.coeffs().len().min(g.coeffs().len());
    let c = kernel_taylor_coeffs(params, len - 1);
    f.coeffs()
        .iter()
        .zip(g.coeffs())
        .zip(&c)
        .map(|((&a, &b), &cn)| a * b.conj() / cn)
        .sum()
}

/// The kernel section `Σ_{n≤N} c_n(γ) λ̄ⁿ zⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedKernel {
    pub lambda: DiskPoint,
    pub depth: usize,
    series: PowerSeries,
}

impl TruncatedKernel {
    pub fn new(params: SpaceParams, lambda: DiskPoint, depth: usize) -> Self {
        let lb = lambda.value().conj();
        let mut power = Complex64::new(1.0, 0.0);
        let coeffs = kernel_taylor_coeffs(params, depth)
            .into_iter()
            .map(|c| {
                let v = power * c;
                power *= lb;
                v
            })
            .collect();
        let series = PowerSeries::new(coeffs).expect("finite kernel coefficients");
        Self { lambda, depth, series }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        self.series.coeffs()
    }

    pub fn as_series(&self) -> &PowerSeries {
        &self.series
    }
}

/// `(g_i, h_i)` pairs for the finite-rank classes; `T f = Σ ⟨f, g_i⟩ h_i`.
fn rank_pairs(spec: &OperatorSpec, depth: usize) -> Vec<(PowerSeries, PowerSeries)> {
    let one = Complex64::new(1.0, 0.0);
    match spec {
        OperatorSpec::RankOneMonomial { m, n } => {
            vec![(PowerSeries::monomial(*m as usize, one), PowerSeries::monomial(*n as usize, one))]
        }
        OperatorSpec::DiagonalMonomialSum { coeffs } => coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| (PowerSeries::monomial(i + 1, a), PowerSeries::monomial(i + 1, a)))
            .collect(),
        OperatorSpec::GeometricDiagonal { a } => (1..=depth)
            .map(|n| (PowerSeries::monomial(n, *a), PowerSeries::monomial(n, *a)))
            .collect(),
        OperatorSpec::GeneralFiniteRank { pairs } => pairs.clone(),
        OperatorSpec::ScaledProjection { k } => {
            let k = *k as usize;
            vec![(
                PowerSeries::monomial(k, Complex64::new(k as f64 + 1.0, 0.0)),
                PowerSeries::monomial(k, one),
            )]
        }
        OperatorSpec::Multiplication { .. } => Vec::new(),
    }
}

/// Smallest truncation depth the oracle needs for `spec`.
pub fn required_depth(spec: &OperatorSpec) -> Result<usize> {
    Ok(match spec {
        OperatorSpec::RankOneMonomial { m, n } => (*m).max(*n) as usize,
        OperatorSpec::DiagonalMonomialSum { coeffs } => coeffs.len(),
        OperatorSpec::GeometricDiagonal { .. } => 1,
        OperatorSpec::GeneralFiniteRank { pairs } => pairs
            .iter()
            .map(|(g, h)| g.degree().max(h.degree()))
            .max()
            .unwrap_or(0),
        OperatorSpec::ScaledProjection { k } => *k as usize,
        OperatorSpec::Multiplication { symbol } => match symbol {
            Symbol::Polynomial { coeffs } => PowerSeries::new(coeffs.clone())?.degree(),
            _ => {
                return Err(Error::Unsupported(
                    "the series oracle handles polynomial symbols only".into(),
                ))
            }
        },
    })
}

/// `⟨T k_λ^{(N)}, k_λ^{(N)}⟩ / ‖k_λ‖²`.
pub fn berezin_via_series(
    spec: &OperatorSpec,
    params: SpaceParams,
    lambda: DiskPoint,
    depth: usize,
) -> Result<Complex64> {
    spec.validate()?;
    let required = required_depth(spec)?;
    if depth < required {
        return Err(Error::DepthTooSmall { depth, required });
    }
    if lambda.modulus_sqr() > MAX_MODULUS * MAX_MODULUS {
        return Err(Error::InvalidArgument(format!(
            "series oracle needs |lambda| <= {MAX_MODULUS}, got {}",
            lambda.modulus_sqr().sqrt()
        )));
    }
    let k = TruncatedKernel::new(params, lambda, depth);
    let kn = k.as_series();
    let inner = match spec {
        OperatorSpec::Multiplication { symbol: Symbol::Polynomial { coeffs } } => {
            let phi = PowerSeries::new(coeffs.clone())?;
            inner_product_series(params, &phi.mul_truncated(kn, depth), kn)
        }
        _ => rank_pairs(spec, depth)
            .iter()
            .map(|(g, h)| inner_product_series(params, kn, g) * inner_product_series(params, h, kn))
            .sum(),
    };
    Ok(inner / kernel_norm_sq(params, lambda))
}

/// Upper bound on `Σ_{n>N} c_n(γ) rⁿ`.
///
/// Terms are summed explicitly up to the index `M` past which the ratio
/// `c_{n+1} r / c_n` stays below some `q < 1`; the rest is bounded by a
/// geometric series. Everything runs in log space.
pub fn tail_bound(params: SpaceParams, r: f64, depth: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidArgument(format!("tail bound needs 0 <= r < 1, got {r}")));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let g = params.gamma();
    let ratio = |n: usize| r * (g + n as f64) / (n as f64 + 1.0);
    let mut m0 = 0;
    while ratio(m0) >= 1.0 {
        m0 += 1;
    }
    let m = (depth + 1).max(m0);
    let q = r * ((g + m as f64) / (m as f64 + 1.0)).max(1.0);

    // log t_n = log c_n + n log r
    let ln_r = r.ln();
    let mut ln_t = 0.0_f64;
    let mut partial = 0.0_f64;
    for n in 0..m {
        if n > depth {
            partial += ln_t.exp();
        }
        ln_t += ((g + n as f64) / (n as f64 + 1.0)).ln() + ln_r;
    }
    Ok(partial + (ln_t - (1.0 - q).ln()).exp())
}

/// One randomized oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub index: usize,
    pub spec: OperatorSpec,
    pub params: SpaceParams,
    pub lambda: DiskPoint,
}

fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
}

fn random_series(rng: &mut ChaCha8Rng) -> PowerSeries {
    let len = rng.random_range(1..=6);
    let real = rng.random_bool(0.5);
    let coeffs = (0..len)
        .map(|_| {
            let c = random_complex(rng, 2.0);
            if real { Complex64::new(c.re, 0.0) } else { c }
        })
        .collect();
    PowerSeries::new(coeffs).expect("finite coefficients")
}

/// Seeded corpus over the finite-rank classes with `γ ∈ [γ_min, γ_max]` and
/// `|λ| ≤ max_modulus`.
pub fn random_corpus(seed: u64, count: usize, gamma_range: (f64, f64), max_modulus: f64) -> Vec<CorpusCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|index| {
            let spec = match index % 5 {
                0 => OperatorSpec::RankOneMonomial { m: rng.random_range(0..8), n: rng.random_range(0..8) },
                1 => OperatorSpec::DiagonalMonomialSum {
                    coeffs: (0..rng.random_range(1..=5)).map(|_| random_complex(&mut rng, 1.5)).collect(),
                },
                2 => {
                    let a = Complex64::from_polar(rng.random_range(0.0..0.99), rng.random_range(0.0..std::f64::consts::TAU));
                    OperatorSpec::GeometricDiagonal { a }
                }
                3 => OperatorSpec::GeneralFiniteRank {
                    pairs: (0..rng.random_range(1..=3))
                        .map(|_| {
                            let g = random_series(&mut rng);
                            let h = if rng.random_bool(0.25) { g.clone() } else { random_series(&mut rng) };
                            (g, h)
                        })
                        .collect(),
                },
                _ => OperatorSpec::ScaledProjection { k: rng.random_range(0..8) },
            };
            let gamma = rng.random_range(gamma_range.0..=gamma_range.1);
            let r = max_modulus * rng.random::<f64>().sqrt();
            let lambda = DiskPoint::new(Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU)))
                .expect("modulus below one");
            CorpusCase { index, spec, params: SpaceParams::new(gamma).expect("positive weight"), lambda }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub index: usize,
    pub closed_form: Complex64,
    pub series: Complex64,
    pub difference: f64,
}

/// Runs every case in parallel; results come back in corpus order.
pub fn verify_corpus(cases: &[CorpusCase], depth: usize) -> Result<Vec<OracleCheck>> {
    cases
        .par_iter()
        .map(|case| {
            let closed_form = berezin_transform(&case.spec, case.params, case.lambda);
            let series = berezin_via_series(&case.spec, case.params, case.lambda, depth)?;
            Ok(OracleCheck { index: case.index, closed_form, series, difference: (series - closed_form).norm() })
        })
        .collect()
}
