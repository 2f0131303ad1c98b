//! Simultaneous polynomial root finding (Aberth–Ehrlich iteration).

use num_complex::Complex64;

const MAX_ITER: usize = 500;

fn trim(coeffs: &[Complex64]) -> &[Complex64] {
    let end = coeffs
        .iter()
        .rposition(|c| c.norm() > 0.0)
        .map_or(0, |i| i + 1);
    &coeffs[..end]
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    coeffs.iter().rev().fold((zero, zero), |(p, dp), &c| (p * z + c, dp * z + p))
}

/// All complex roots of `Σ coeffs[k] z^k` (ascending order), with
/// multiplicity. Returns `None` for the zero polynomial.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let p = trim(coeffs);
    if p.is_empty() {
        return None;
    }
    let degree = p.len() - 1;
    if degree == 0 {
        return Some(Vec::new());
    }
    let lead = p[degree];
    let monic: Vec<Complex64> = p.iter().map(|&c| c / lead).collect();
    if degree == 1 {
        return Some(vec![-monic[0]]);
    }

    // Cauchy bound for the initial circle.
    let bound = 1.0 + monic[..degree].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = bound.min(1e6) * 0.5 + 0.1;
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let (f, df) = eval_with_derivative(&monic, z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(1.0, 0.0) / d
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_and_cubic() {
        // z² + 1
        let r = polynomial_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(r.len(), 2);
        for root in &r {
            assert!((root * root + 1.0).norm() < 1e-13);
        }
        // (z − 1)(z − 2i)(z + 0.5)
        let roots = [c(1.0, 0.0), c(0.0, 2.0), c(-0.5, 0.0)];
        let mut p = vec![c(1.0, 0.0)];
        for &a in &roots {
            let mut next = vec![c(0.0, 0.0); p.len() + 1];
            for (k, &pk) in p.iter().enumerate() {
                next[k + 1] += pk;
                next[k] -= a * pk;
            }
            p = next;
        }
        let found = polynomial_roots(&p).unwrap();
        for a in roots {
            assert!(found.iter().any(|f| (f - a).norm() < 1e-12), "{a} not in {found:?}");
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(polynomial_roots(&[c(0.0, 0.0)]).is_none());
        assert!(polynomial_roots(&[c(2.0, 0.0), c(0.0, 0.0)]).unwrap().is_empty());
        assert_eq!(polynomial_roots(&[c(-2.0, 0.0), c(4.0, 0.0)]).unwrap(), vec![c(0.5, 0.0)]);
    }

    #[test]
    fn high_degree() {
        // z^14 − 0.5
        let mut p = vec![c(0.0, 0.0); 15];
        p[0] = c(-0.5, 0.0);
        p[14] = c(1.0, 0.0);
        let r = polynomial_roots(&p).unwrap();
        assert_eq!(r.len(), 14);
        for z in r {
            assert!((z.norm() - 0.5_f64.powf(1.0 / 14.0)).abs() < 1e-12);
        }
    }
}
