//! Double-precision checks of the analytic statements: Bell asymptotics,
//! divergence of the Kerr-type series and the `φ⁴` integral.

mod phi4;
pub mod quadrature;

pub use phi4::{
    gamma_half_over_sqrt_pi, macdonald_closed, phi4_integral, phi4_series, phi4_series_coefficients,
    scaled_bessel_k, x4_gamma_coefficients, TruncationReport,
};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Natural log of `n! exp(e^r - 1) / (r^{n+1} sqrt(2π e^r))` with
/// `r = ln n - ln ln n`.
pub fn bell_asymptotic_ln(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("the Bell asymptotic needs n >= 3, got {n}")));
    }
    let nf = n as f64;
    let r = nf.ln() - nf.ln().ln();
    let ln_fact: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    Ok(ln_fact + r.exp() - 1.0 - (nf + 1.0) * r.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln() - 0.5 * r)
}

pub fn bell_asymptotic(n: usize) -> Result<f64> {
    bell_asymptotic_ln(n).map(f64::exp)
}

fn check_nonzero<T>(values: &[T], is_zero: impl Fn(&T) -> bool) -> Result<()> {
    match values.iter().position(is_zero) {
        Some(i) => Err(Error::InvalidArgument(format!("entry {i} is zero"))),
        None => Ok(()),
    }
}

/// d'Alembert ratios `A_{n+1} / ((n+1) A_n)` of the series `Σ A_n λ^n/n!`.
pub fn divergence_ratio(a: &[f64]) -> Result<Vec<f64>> {
    check_nonzero(a, |x| *x == 0.0)?;
    Ok(a.windows(2)
        .enumerate()
        .map(|(n, w)| w[1] / ((n as f64 + 1.0) * w[0]))
        .collect())
}

/// [`divergence_ratio`] over exact values.
pub fn divergence_ratio_exact(a: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
    check_nonzero(a, ExactScalar::is_zero)?;
    Ok(a.windows(2)
        .enumerate()
        .map(|(n, w)| &w[1] / (&w[0] * ExactScalar::from_integer((n + 1).into())))
        .collect())
}

/// Ratios `c_{n+1}/c_n` of consecutive ordinary coefficients of an even
/// EGF in `λ²`: `c_n = A_{2n}/(2n)!`, given the list `A_0, A_2, A_4, ...`.
pub fn even_series_ratio(a_even: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
    check_nonzero(a_even, ExactScalar::is_zero)?;
    Ok(a_even
        .windows(2)
        .enumerate()
        .map(|(n, w)| {
            let k = 2 * n + 1;
            &w[1] / (&w[0] * ExactScalar::from_integer((k * (k + 1)).into()))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::bell_number;
    use crate::counting::{count, kerr_sequence, z2_closed, ModelSpec};
    use crate::scalar::to_f64;

    #[test]
    fn bell_asymptotic_scale() {
        let ratio = bell_asymptotic(10).unwrap() / 115975.0;
        assert!((0.1..=10.0).contains(&ratio), "{ratio}");
        let exact = to_f64(&ExactScalar::from_integer(bell_number(50)));
        let log_ratio = bell_asymptotic_ln(50).unwrap() / exact.ln();
        assert!((log_ratio - 1.0).abs() < 0.02, "{log_ratio}");
        let values: Vec<f64> = (10..=100).map(|n| bell_asymptotic_ln(n).unwrap()).collect();
        assert!(values.windows(2).all(|w| w[1] > w[0]));
        assert!(bell_asymptotic(2).is_err());
    }

    #[test]
    fn exponential_series_converges() {
        let r = divergence_ratio(&[1.0; 30]).unwrap();
        assert_eq!(r[0], 1.0);
        assert!(r.windows(2).all(|w| w[1] < w[0]));
        assert!(r[28] < 0.04);
        assert!(divergence_ratio(&[1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn kerr_series_diverges() {
        let a = kerr_sequence(2, 26).unwrap();
        let r = divergence_ratio_exact(&a).unwrap();
        // 15428 / (6 * 1352) > 203464 / (7 * 15428): the ratios wobble at first
        assert!(r[6] < r[5]);
        assert!(r[6..].windows(2).all(|w| w[1] > w[0]));
        let floats: Vec<f64> = a.iter().map(to_f64).collect();
        let rf = divergence_ratio(&floats).unwrap();
        assert!((rf[20] - to_f64(&r[20])).abs() < 1e-12);
    }

    #[test]
    fn superfluid_radius_is_one() {
        let a = z2_closed(48).into_coeffs();
        let even: Vec<ExactScalar> = a.iter().step_by(2).cloned().collect();
        let r: Vec<f64> = even_series_ratio(&even).unwrap().iter().map(to_f64).collect();
        // decreasing towards 1 like 1 + sqrt(2/n), the exp(2x/(1-x)) saddle
        assert!(r.windows(2).all(|w| w[1] < w[0] && w[1] > 1.0));
        let n = (r.len() - 1) as f64 + 0.5;
        let scaled = (r[r.len() - 1] - 1.0) * n.sqrt();
        assert!((1.0..2.0).contains(&scaled), "{scaled}");
        let sf = count(&ModelSpec::superfluidity(6), 6).unwrap().a;
        assert!(divergence_ratio_exact(&sf).is_err());
    }
}
