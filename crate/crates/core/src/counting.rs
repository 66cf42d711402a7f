//! The counting formula `A_n = Y_n[L] Y_n[V]` and the generating functions
//! built on it.
//!
//! `L_m` are the strengths of the multi-legged propagators (from
//! `F(x) = exp(sum L_m x^m/m!)`), `V_n` the vertex strengths evaluated at
//! `z = 1`. All closed forms are expanded as exact formal series; the only
//! floating point here is [`partition_integrand`].

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{bell_number, bell_polynomial, complete_bell, hermite_kdf, modified_hermite_list};
use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, from_bigint, int, powi, ratio, rising, ExactScalar};
use crate::series::EgfSeries;

/// Weight sequences `L_1..L_N` and `V_1..V_N` of a counting problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelSpec {
    #[serde(rename = "L", with = "crate::scalar::serde_str::vec")]
    l: Vec<ExactScalar>,
    #[serde(rename = "V", with = "crate::scalar::serde_str::vec")]
    v: Vec<ExactScalar>,
}

impl ModelSpec {
    pub fn new(l: Vec<ExactScalar>, v: Vec<ExactScalar>) -> Result<Self> {
        if l.len() != v.len() {
            return Err(Error::InvalidArgument(format!(
                "L and V must share the truncation length, got {} and {}",
                l.len(),
                v.len()
            )));
        }
        Ok(ModelSpec { l, v })
    }

    /// Pads finitely supported weight lists with zeros up to `order`.
    pub fn from_finite(l: &[ExactScalar], v: &[ExactScalar], order: usize) -> Result<Self> {
        if l.len() > order || v.len() > order {
            return Err(Error::InvalidArgument(format!(
                "weight lists longer than the order {order}"
            )));
        }
        let pad = |xs: &[ExactScalar]| {
            let mut out = xs.to_vec();
            out.resize(order, ExactScalar::zero());
            out
        };
        Self::new(pad(l), pad(v))
    }

    /// `L_1 = L_M = 1`, `V_n = 1`: the `lambda a†a + lambda^M (a†a)^M / M!`
    /// family (Kerr-type for `M = 2`).
    pub fn kerr(m: usize, order: usize) -> Self {
        let l = (1..=order)
            .map(|i| if i == 1 || i == m { int(1) } else { int(0) })
            .collect();
        ModelSpec {
            l,
            v: vec![int(1); order],
        }
    }

    /// `L_2 = 1`, `V_1 = 2`, `V_2 = 1`: `exp(lambda^2 (a + a†)^2 / 2)` at `z = 1`.
    pub fn superfluidity(order: usize) -> Self {
        let pick = |i: usize, vals: &[(usize, i64)]| {
            vals.iter()
                .find(|(k, _)| *k == i)
                .map(|&(_, v)| int(v))
                .unwrap_or_else(|| int(0))
        };
        ModelSpec {
            l: (1..=order).map(|i| pick(i, &[(2, 1)])).collect(),
            v: (1..=order).map(|i| pick(i, &[(1, 2), (2, 1)])).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.l.len()
    }

    /// `L_m`, 1-based; zero beyond the truncation.
    pub fn l(&self) -> &[ExactScalar] {
        &self.l
    }

    pub fn v(&self) -> &[ExactScalar] {
        &self.v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountResult {
    #[serde(rename = "A", with = "crate::scalar::serde_str::vec")]
    pub a: Vec<ExactScalar>,
    #[serde(rename = "yL", with = "crate::scalar::serde_str::vec")]
    pub y_l: Vec<ExactScalar>,
    #[serde(rename = "yV", with = "crate::scalar::serde_str::vec")]
    pub y_v: Vec<ExactScalar>,
}

/// `A_n = Y_n[L] Y_n[V]` for `n = 0..=order`, the coefficients of
/// `Z(L, V, lambda) = sum A_n lambda^n / n!`.
pub fn count(model: &ModelSpec, order: usize) -> Result<CountResult> {
    if model.order() < order {
        return Err(Error::TooShort {
            what: "model weight list",
            needed: order,
            got: model.order(),
        });
    }
    let y_l: Vec<_> = (0..=order)
        .map(|n| complete_bell(n, &model.l))
        .collect::<Result<_>>()?;
    let y_v: Vec<_> = (0..=order)
        .map(|n| complete_bell(n, &model.v))
        .collect::<Result<_>>()?;
    let a = y_l.iter().zip(&y_v).map(|(x, y)| x * y).collect();
    Ok(CountResult { a, y_l, y_v })
}

/// `A_n = H_n^(M)(1, 1) B_n`: partitions into singletons and M-blocks
/// times all partitions.
pub fn kerr_sequence(m: usize, order: usize) -> Result<Vec<ExactScalar>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("Kerr family needs M >= 2, got {m}")));
    }
    (0..=order)
        .map(|n| Ok(hermite_kdf(n, m, &int(1), &int(1))? * from_bigint(bell_number(n))))
        .collect()
}

/// `Z_1 = exp(2 lambda + lambda^2/2)`, coefficients `h_n(2)`.
pub fn z1_series(order: usize) -> EgfSeries {
    EgfSeries::new(modified_hermite_list(order, &int(2))).expect("non-empty")
}

/// `sum_n h_{Mn}(2)/n! (lambda^M / M!)^n` as a lambda-EGF: the coefficient
/// of `lambda^{Mn}/(Mn)!` is `(Mn)! h_{Mn}(2) / ((M!)^n n!)`.
pub fn zm_series(m: usize, order: usize) -> EgfSeries {
    let h = modified_hermite_list(order, &int(2));
    let m_fact = from_bigint(factorial(m));
    EgfSeries::from_fn(order, |k| {
        if k % m != 0 {
            return int(0);
        }
        let n = k / m;
        &h[k] * from_bigint(factorial(k)) / (powi(&m_fact, n) * from_bigint(factorial(n)))
    })
}

pub fn z2_series(order: usize) -> EgfSeries {
    zm_series(2, order)
}

pub fn z3_series(order: usize) -> EgfSeries {
    zm_series(3, order)
}

fn poly(order: usize, terms: &[(usize, ExactScalar)]) -> EgfSeries {
    let mut ord = vec![ExactScalar::zero(); order + 1];
    for (k, c) in terms {
        if *k <= order {
            ord[*k] += c;
        }
    }
    EgfSeries::from_ordinary(&ord).expect("non-empty")
}

/// Doetsch closed form `(1 - lambda^2)^(-1/2) exp(2 lambda^2 / (1 - lambda^2))`.
pub fn z2_closed(order: usize) -> EgfSeries {
    let one_minus = poly(order, &[(0, int(1)), (2, int(-1))]);
    let prefactor = one_minus.pow(&ratio(-1, 2)).expect("constant term 1");
    let two_l2 = poly(order, &[(2, int(2))]);
    let exponent = two_l2.mul(&one_minus.recip().expect("constant term 1"));
    prefactor.mul(&exponent.exp().expect("no constant term"))
}

/// `phi(lambda) = (1 - sqrt(1 - 4 lambda^3)) / lambda^3 = 2 sum_k C_k lambda^{3k}`.
pub fn catalan_phi(order: usize) -> EgfSeries {
    let terms: Vec<_> = (0..=order / 3)
        .map(|k| {
            let catalan = binomial(2 * k, k) / BigInt::from(k + 1);
            (3 * k, from_bigint(catalan * 2))
        })
        .collect();
    poly(order, &terms)
}

/// The `M = 3` closed form
/// `(1 - phi l^3)^(-1/2) exp(phi^3 l^3/6 - phi^4 l^6/8)
///  2F0(1/6, 5/6; ; 3 l^6 / (2 (1 - phi l^3)^3))`
/// with every factor expanded as an exact formal series.
pub fn z3_closed(order: usize) -> EgfSeries {
    let phi = catalan_phi(order);
    let u = phi.shift_up(3);
    let one_minus_u = EgfSeries::one(order).sub(&u);
    let prefactor = one_minus_u.pow(&ratio(-1, 2)).expect("constant term 1");

    let phi3 = phi.mul(&phi).mul(&phi);
    let phi4 = phi3.mul(&phi);
    let exponent = phi3
        .shift_up(3)
        .scale(&ratio(1, 6))
        .sub(&phi4.shift_up(6).scale(&ratio(1, 8)));
    let exp_factor = exponent.exp().expect("no constant term");

    let cube = one_minus_u.mul(&one_minus_u).mul(&one_minus_u);
    let argument = cube
        .recip()
        .expect("constant term 1")
        .shift_up(6)
        .scale(&ratio(3, 2));
    // formal 2F0(1/6, 5/6; ; w) = sum (1/6)_n (5/6)_n w^n / n!
    let (a, b) = (ratio(1, 6), ratio(5, 6));
    let hypergeometric = EgfSeries::from_fn(order, |n| rising(&a, n) * rising(&b, n));
    let f20 = hypergeometric.compose(&argument).expect("no constant term");

    prefactor.mul(&exp_factor).mul(&f20)
}

/// Coefficients per `(y lambda^4)^n` of `<0| N[exp(y (lambda(a + a†))^4 / 4!)] |0>`,
/// from the product formula: the Hadamard product of `exp(t^4/4!)` with
/// `exp(x^2/2) = sum H_m^(2)(0, 1) x^m/m!`, read off at `t^{4n}`.
pub fn x4_vacuum_coefficients(n_max: usize) -> Vec<ExactScalar> {
    let order = 4 * n_max;
    let quartic = poly(order, &[(4, ratio(1, 24))]).exp().expect("no constant term");
    let gaussian = poly(order, &[(2, ratio(1, 2))]).exp().expect("no constant term");
    let product = quartic.hadamard(&gaussian);
    (0..=n_max)
        .map(|n| product.coeff(4 * n) / from_bigint(factorial(4 * n)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegrandValue {
    pub value: f64,
    /// Upper bound on the omitted tail `sum_{k > K}`.
    pub tail_bound: f64,
    pub terms: usize,
}

/// `e^{-|z|^2} sum_{k=0}^{K} |z|^{2k}/k! exp(-beta (k lambda + (k lambda)^M / M!))`.
pub fn partition_integrand(m: usize, beta: f64, lambda: f64, zsq: f64, terms: usize) -> Result<IntegrandValue> {
    if !(beta > 0.0) {
        return Err(Error::InvalidArgument(format!("beta must be positive, got {beta}")));
    }
    if !(lambda >= 0.0) || !(zsq >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "lambda and |z|^2 must be non-negative, got {lambda} and {zsq}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let m_fact: f64 = (1..=m).map(|i| i as f64).product();
    let energy = |k: f64| beta * (k * lambda + (k * lambda).powi(m as i32) / m_fact);
    // log of the Poisson weight e^{-z} z^k / k!
    let log_poisson = |k: usize| {
        if zsq == 0.0 {
            return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
        }
        let log_fact: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
        -zsq + k as f64 * zsq.ln() - log_fact
    };
    let mut value = 0.0;
    for k in 0..=terms {
        value += (log_poisson(k) - energy(k as f64)).exp();
    }
    // Beyond K the Boltzmann factor is at most its value at K+1 and the
    // Poisson tail is dominated by a geometric series.
    let next = terms + 1;
    let ratio_bound = zsq / (next as f64 + 1.0);
    let tail_bound = if ratio_bound < 1.0 {
        (log_poisson(next) - energy(next as f64)).exp() / (1.0 - ratio_bound)
    } else {
        f64::INFINITY
    };
    Ok(IntegrandValue {
        value,
        tail_bound,
        terms,
    })
}

/// Both sides of the `lambda^n/n!` coefficient of the integrand:
/// `lhs = H_n^(M)(-beta, -beta) B_n(|z|^2)` and `rhs` obtained from the
/// Dobiński sum `e^{-z} sum_k z^k/k! H_n^(M)(-beta k, -beta k^M)`. The
/// polynomial `P(k) = H_n^(M)(-beta k, -beta k^M)` is expanded in falling
/// factorials by forward differences, and `e^{-z} sum_k z^k k^(l falling)/k! = z^l`
/// closes the sum exactly.
pub fn integrand_coefficient_identity(
    m: usize,
    beta: &ExactScalar,
    n: usize,
    zsq: &ExactScalar,
) -> Result<(ExactScalar, ExactScalar)> {
    let minus_beta = -beta.clone();
    let lhs = hermite_kdf(n, m, &minus_beta, &minus_beta)? * bell_polynomial(n, zsq);

    // P has degree n in k, so n+1 samples determine it.
    let samples: Vec<ExactScalar> = (0..=n)
        .map(|k| {
            let k = int(k as i64);
            hermite_kdf(n, m, &(&minus_beta * &k), &(&minus_beta * powi(&k, m)))
        })
        .collect::<Result<_>>()?;
    let mut diffs = samples;
    let mut rhs = ExactScalar::zero();
    let mut l_fact = ExactScalar::one();
    for l in 0..=n {
        if l > 0 {
            l_fact *= int(l as i64);
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        rhs += &diffs[0] / &l_fact * powi(zsq, l);
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::rational;
    use proptest::prelude::*;

    fn ints(values: &[i64]) -> Vec<ExactScalar> {
        values.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn kerr_m2_counts() {
        let result = count(&ModelSpec::kerr(2, 6), 6).unwrap();
        assert_eq!(result.a, ints(&[1, 1, 4, 20, 150, 1352, 15428]));
        for n in 0..=6 {
            assert_eq!(result.a[n], &result.y_l[n] * &result.y_v[n]);
        }
        assert_eq!(kerr_sequence(2, 6).unwrap(), result.a);
    }

    #[test]
    fn kerr_m3_sequence_has_572_at_five() {
        let a = kerr_sequence(3, 6).unwrap();
        assert_eq!(a, ints(&[1, 1, 2, 10, 75, 572, 6293]));
        assert_eq!(hermite_kdf(5, 3, &int(1), &int(1)).unwrap(), int(11));
        assert!(kerr_sequence(1, 3).is_err());
    }

    #[test]
    fn kerr_matches_count_for_several_m() {
        for m in 2..=4 {
            let direct = count(&ModelSpec::kerr(m, 8), 8).unwrap().a;
            assert_eq!(kerr_sequence(m, 8).unwrap(), direct, "M = {m}");
        }
    }

    #[test]
    fn single_leg_gives_bell() {
        let model = ModelSpec::from_finite(&[int(1)], &[], 7).unwrap();
        let mut model_v = model.clone();
        model_v.v = vec![int(1); 7];
        let a = count(&model_v, 7).unwrap().a;
        let bells: Vec<_> = (0..=7).map(|n| from_bigint(bell_number(n))).collect();
        assert_eq!(a, bells);
    }

    #[test]
    fn superfluidity_counts() {
        let a = count(&ModelSpec::superfluidity(12), 12).unwrap().a;
        for n in (1..=11).step_by(2) {
            assert_eq!(a[n], int(0));
        }
        let even: Vec<_> = (0..=5).map(|n| a[2 * n].clone()).collect();
        assert_eq!(even, ints(&[1, 5, 129, 7485, 755265, 116338005]));
    }

    #[test]
    fn model_validation() {
        assert!(ModelSpec::new(vec![int(1)], vec![]).is_err());
        assert!(count(&ModelSpec::kerr(2, 3), 5).is_err());
        assert!(ModelSpec::from_finite(&ints(&[1, 1, 1]), &[], 2).is_err());
    }

    #[test]
    fn z_series_fixtures() {
        assert_eq!(z1_series(7).into_coeffs(), ints(&[1, 2, 5, 14, 43, 142, 499, 1850]));
        assert_eq!(z1_series(10), EgfSeries::from_ints(&[0, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap().exp().unwrap());
        let z2 = z2_series(12);
        assert_eq!(z2.coeff(4), &int(129));
        for k in (1..=11).step_by(2) {
            assert!(z2.coeff(k).is_zero());
        }
        assert_eq!(z2, z2_closed(12));
        assert_eq!(z2, count(&ModelSpec::superfluidity(12), 12).map(|r| EgfSeries::new(r.a).unwrap()).unwrap());
    }

    #[test]
    fn z3_fixtures() {
        let closed = z3_closed(12);
        assert_eq!(closed.ordinary()[3], ratio(7, 3));
        for k in 0..=12 {
            if k % 3 != 0 {
                assert!(closed.coeff(k).is_zero(), "k = {k}");
            }
        }
        assert_eq!(closed, z3_series(12));
        // the M = 3 graph model agrees too: L_3 = 1, V_1 = 2, V_2 = 1
        let model = ModelSpec::from_finite(&ints(&[0, 0, 1]), &ints(&[2, 1]), 12).unwrap();
        assert_eq!(count(&model, 12).unwrap().a, z3_series(12).into_coeffs());
    }

    #[test]
    fn catalan_phi_is_the_square_root_form() {
        let order = 15;
        let four_l3 = poly(order, &[(0, int(1)), (3, int(-4))]);
        let root = four_l3.pow(&ratio(1, 2)).unwrap();
        let lhs = EgfSeries::one(order).sub(&root);
        assert_eq!(lhs, catalan_phi(order).shift_up(3));
    }

    #[test]
    fn x4_vacuum_first_terms() {
        let c = x4_vacuum_coefficients(2);
        // H_4^(2)(0,1) = 3, H_8^(2)(0,1) = 105
        assert_eq!(c, vec![int(1), ratio(3, 24), ratio(105, 2 * 24 * 24)]);
    }

    #[test]
    fn integrand_limits() {
        let v = partition_integrand(2, 1e-14, 0.3, 2.5, 80).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12);
        let v = partition_integrand(3, 2.0, 0.0, 1.7, 80).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12);
        let a = partition_integrand(2, 1.0, 0.1, 1.0, 60).unwrap();
        let b = partition_integrand(2, 1.0, 0.1, 1.0, 80).unwrap();
        assert!((a.value - b.value).abs() < 1e-12);
        assert!(a.tail_bound < 1e-12);
        assert!(a.value < 1.0 && a.value > 0.0);
        assert!(partition_integrand(2, 0.0, 0.1, 1.0, 10).is_err());
        assert!(partition_integrand(2, -1.0, 0.1, 1.0, 10).is_err());
        assert_eq!(partition_integrand(2, 1.0, 0.5, 0.0, 5).unwrap().value, 1.0);
    }

    #[test]
    fn integrand_identity_examples() {
        assert_eq!(integrand_coefficient_identity(2, &int(1), 0, &int(1)).unwrap(), (int(1), int(1)));
        let (lhs, rhs) = integrand_coefficient_identity(2, &int(1), 1, &int(1)).unwrap();
        assert_eq!(lhs, int(-1));
        assert_eq!(rhs, int(-1));
    }

    proptest! {
        #[test]
        fn integrand_identity_holds(beta in rational(), zsq in rational(), n in 0usize..=6, m in 2usize..=4) {
            let (lhs, rhs) = integrand_coefficient_identity(m, &beta, n, &zsq).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
