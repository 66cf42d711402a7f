//! The zero-dimensional `φ⁴` integral, its Bessel closed form and its
//! divergent weak-coupling series.

use std::f64::consts::PI;

use serde::Serialize;

use super::quadrature::integrate_to_infinity;
use crate::error::{Error, Result};
use crate::scalar::{factorial, from_bigint, powi, ratio, ExactScalar};

const REL_TOL: f64 = 1e-10;
const TAIL: f64 = 1e-16;

/// `I(a, g) = (π √a)^{-1/2} ∫ exp(-x²/√a - g x⁴/4!) dx` over the real line.
pub fn phi4_integral(a: f64, g: f64) -> Result<f64> {
    if !(a > 0.0) || !(g >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "the integral needs a > 0 and g >= 0, got a = {a}, g = {g}"
        )));
    }
    let root_a = a.sqrt();
    let f = |x: f64| {
        let x2 = x * x;
        (-x2 / root_a - g * x2 * x2 / 24.0).exp()
    };
    let half = integrate_to_infinity(f, 0.0, REL_TOL, TAIL)?;
    Ok(2.0 * half.value / (PI * root_a).sqrt())
}

/// `e^z K_ν(z) = ∫_0^∞ exp(-z (cosh t - 1)) cosh(ν t) dt` for `z > 0`.
pub fn scaled_bessel_k(nu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::InvalidArgument(format!("K_nu needs z > 0, got {z}")));
    }
    let f = |t: f64| {
        let s = (0.5 * t).sinh();
        (-2.0 * z * s * s).exp() * (nu * t).cosh()
    };
    Ok(integrate_to_infinity(f, 0.0, REL_TOL, TAIL)?.value)
}

/// `(2/√(2π)) (3/ag)^{1/2} e^{3/ag} K_{1/4}(3/ag)`.
pub fn macdonald_closed(a: f64, g: f64) -> Result<f64> {
    if !(a > 0.0) || !(g > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "the closed form needs a > 0 and g > 0, got a = {a}, g = {g}"
        )));
    }
    let z = 3.0 / (a * g);
    Ok(2.0 / (2.0 * PI).sqrt() * z.sqrt() * scaled_bessel_k(0.25, z)?)
}

/// `Γ(m + 1/2)/√π = (2m)! / (4^m m!)`.
pub fn gamma_half_over_sqrt_pi(m: usize) -> ExactScalar {
    from_bigint(factorial(2 * m)) / from_bigint(factorial(m) << (2 * m))
}

/// Exact coefficients `Γ(2n + 1/2)/(√π n!) (1/4!)^n` of `(-ag)^n` in the
/// weak-coupling series.
pub fn phi4_series_coefficients(n_max: usize) -> Vec<ExactScalar> {
    (0..=n_max)
        .map(|n| gamma_half_over_sqrt_pi(2 * n) / from_bigint(factorial(n)) / powi(&ratio(24, 1), n))
        .collect()
}

/// Coefficients `Γ(2n + 1/2)/(√π n!) (4/4!)^n` of the vacuum expectation of
/// `N[exp(y (λ(a + a†))⁴/4!)]` written through the Gamma function.
pub fn x4_gamma_coefficients(n_max: usize) -> Vec<ExactScalar> {
    (0..=n_max)
        .map(|n| gamma_half_over_sqrt_pi(2 * n) / from_bigint(factorial(n)) * powi(&ratio(1, 6), n))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationReport {
    pub terms: Vec<f64>,
    /// `partial_sums[k] = terms[0] + ... + terms[k]`.
    pub partial_sums: Vec<f64>,
    /// Index of the smallest `|terms[n]|`, first occurrence.
    pub optimal_index: usize,
    /// Sum of the terms before `optimal_index`.
    pub optimal_sum: f64,
    pub first_omitted: f64,
    /// `phi4_integral(a, g)`, absent where the integral does not exist.
    pub reference: Option<f64>,
    pub abs_error_at_optimal: Option<f64>,
}

/// Partial sums of `Σ Γ(2n + 1/2)/(√π n!) (-ag/4!)^n` up to `n = nmax`.
/// Terms are accumulated as logarithms so large `nmax` cannot overflow.
pub fn phi4_series(a: f64, g: f64, nmax: usize) -> Result<TruncationReport> {
    let x = -a * g / 24.0;
    let (log_x, negative) = (x.abs().ln(), x < 0.0);
    let mut terms = Vec::with_capacity(nmax + 1);
    let mut log_term = 0.0f64;
    for n in 0..=nmax {
        let sign = if negative && n % 2 == 1 { -1.0 } else { 1.0 };
        terms.push(sign * log_term.exp());
        let nf = n as f64;
        log_term += ((2.0 * nf + 0.5) * (2.0 * nf + 1.5) / (nf + 1.0)).ln() + log_x;
    }
    let partial_sums: Vec<f64> = terms
        .iter()
        .scan(0.0, |acc, t| {
            *acc += t;
            Some(*acc)
        })
        .collect();
    let optimal_index = terms
        .iter()
        .enumerate()
        .fold(0, |best, (i, t)| if t.abs() < terms[best].abs() { i } else { best });
    let optimal_sum = if optimal_index == 0 { 0.0 } else { partial_sums[optimal_index - 1] };
    let reference = phi4_integral(a, g).ok();
    Ok(TruncationReport {
        first_omitted: terms[optimal_index],
        abs_error_at_optimal: reference.map(|r| (optimal_sum - r).abs()),
        terms,
        partial_sums,
        optimal_index,
        optimal_sum,
        reference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::to_f64;

    #[test]
    fn gaussian_normalisation() {
        for a in [0.3, 1.0, 2.0, 7.5] {
            assert!((phi4_integral(a, 0.0).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!(phi4_integral(0.0, 1.0).is_err());
        assert!(phi4_integral(1.0, -0.1).is_err());
    }

    #[test]
    fn integral_decreases_in_coupling() {
        let values: Vec<f64> = [0.0, 0.1, 0.3, 1.0, 3.0]
            .iter()
            .map(|&g| phi4_integral(1.0, g).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn bessel_half_order_is_elementary() {
        // K_{1/2}(z) = sqrt(pi / (2 z)) e^{-z}
        for z in [0.2, 1.0, 5.0, 60.0] {
            let expected = (PI / (2.0 * z)).sqrt();
            assert!((scaled_bessel_k(0.5, z).unwrap() / expected - 1.0).abs() < 1e-10);
        }
        assert!(scaled_bessel_k(0.25, 0.0).is_err());
    }

    #[test]
    fn closed_form_matches_integral() {
        for (a, g) in [(1.0, 0.5), (1.0, 1.0), (0.5, 0.1), (2.0, 1.0)] {
            let diff = phi4_integral(a, g).unwrap() - macdonald_closed(a, g).unwrap();
            assert!(diff.abs() < 1e-8, "({a}, {g}): {diff}");
        }
        assert!(macdonald_closed(1.0, 0.0).is_err());
        assert!(macdonald_closed(-1.0, 1.0).is_err());
    }

    #[test]
    fn closed_form_depends_on_product_only() {
        let base = macdonald_closed(1.0, 0.4).unwrap();
        for (a, g) in [(2.0, 0.2), (0.5, 0.8), (4.0, 0.1)] {
            assert!((macdonald_closed(a, g).unwrap() - base).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_approaches_one() {
        let values: Vec<f64> = [0.2, 0.1, 0.05]
            .iter()
            .map(|&g| macdonald_closed(1.0, g).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] < w[1] && w[1] < 1.0));
    }

    #[test]
    fn exact_coefficients() {
        let c = phi4_series_coefficients(3);
        assert_eq!(c[0], ratio(1, 1));
        assert_eq!(c[1], ratio(1, 32));
        assert_eq!(gamma_half_over_sqrt_pi(2), ratio(3, 4));
        let report = phi4_series(1.0, 1.0, 20).unwrap();
        for (n, c) in phi4_series_coefficients(20).iter().enumerate() {
            let expected = to_f64(c) * if n % 2 == 1 { -1.0 } else { 1.0 };
            assert!((report.terms[n] / expected - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn series_report() {
        let free = phi4_series(1.0, 0.0, 10).unwrap();
        assert_eq!(free.partial_sums, vec![1.0; 11]);
        assert_eq!(free.optimal_index, 1);
        assert_eq!(free.optimal_sum, 1.0);

        let r = phi4_series(1.0, 0.1, 100).unwrap();
        assert!(r.terms.windows(2).all(|w| w[0] * w[1] < 0.0));
        assert!((r.terms[1] + 0.1 / 32.0).abs() < 1e-15);
        let resolution = 1e-10 * r.reference.unwrap();
        assert!(r.abs_error_at_optimal.unwrap() <= r.first_omitted.abs() + resolution);
        // no integral for negative coupling, but the series is still formed
        let negative = phi4_series(1.0, -0.1, 5).unwrap();
        assert!(negative.reference.is_none());
        assert!(negative.terms.iter().all(|t| *t > 0.0));
        // large orders stay finite
        let big = phi4_series(1.0, 1.0, 60).unwrap();
        assert!(big.terms.iter().all(|t| t.is_finite()));
    }
}
