//! Truncated exponential generating functions with exact coefficients.
//!
//! A series stores `f_n` for `f(x) = sum f_n x^n / n!`, so the familiar
//! integer sequences (Bell, involution, Hermite) appear verbatim. Every
//! series carries its truncation order; binary operations truncate to the
//! smaller order instead of padding with zeros.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{egf_exp_coeffs, egf_log_coeffs, egf_product};
use crate::scalar::{binomial, factorial, from_bigint, ExactScalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct EgfSeries {
    coeffs: Vec<ExactScalar>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    #[serde(with = "crate::scalar::serde_str::vec")]
    coeffs: Vec<ExactScalar>,
}

impl From<EgfSeries> for SeriesRepr {
    fn from(s: EgfSeries) -> Self {
        SeriesRepr {
            order: s.order(),
            coeffs: s.coeffs,
        }
    }
}

impl TryFrom<SeriesRepr> for EgfSeries {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        if r.coeffs.len() != r.order + 1 {
            return Err(Error::InvalidArgument(format!(
                "series of order {} needs {} coefficients, got {}",
                r.order,
                r.order + 1,
                r.coeffs.len()
            )));
        }
        Ok(EgfSeries { coeffs: r.coeffs })
    }
}

impl EgfSeries {
    /// Builds a series from `f_0..f_N`. An empty list is rejected since a
    /// series always has at least its constant term.
    pub fn new(coeffs: Vec<ExactScalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(EgfSeries { coeffs })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> ExactScalar) -> Self {
        EgfSeries {
            coeffs: (0..=order).map(&mut f).collect(),
        }
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| crate::scalar::int(v)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| ExactScalar::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| {
            if n == 0 {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        })
    }

    /// The series `x`.
    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |n| {
            if n == 1 {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        })
    }

    /// Converts ordinary Taylor coefficients `c_n` (of `x^n`) to `n! c_n`.
    pub fn from_ordinary(ordinary: &[ExactScalar]) -> Result<Self> {
        Self::new(
            ordinary
                .iter()
                .enumerate()
                .map(|(n, c)| c * from_bigint(factorial(n)))
                .collect(),
        )
    }

    /// Taylor coefficients `f_n / n!`.
    pub fn ordinary(&self) -> Vec<ExactScalar> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c / from_bigint(factorial(n)))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &ExactScalar {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<ExactScalar> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        EgfSeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar) -> Self {
        EgfSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        EgfSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Product of the generating functions (binomial convolution).
    pub fn mul(&self, other: &Self) -> Self {
        EgfSeries {
            coeffs: egf_product(&self.coeffs, &other.coeffs),
        }
    }

    /// Point-wise Hadamard product `sum f_n g_n x^n/n!`, i.e. the value of
    /// `f(d/dx) g(x)` at `x = 0`.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    /// `exp(g)`, whose coefficients are the complete Bell polynomials
    /// `Y_n[g]` with `Y_0 = 1`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                expected: "0",
                got: self.coeffs[0].clone(),
            });
        }
        Ok(EgfSeries {
            coeffs: egf_exp_coeffs(&self.coeffs),
        })
    }

    /// Inverse of [`EgfSeries::exp`] on series with `f_0 = 1`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm {
                expected: "1",
                got: self.coeffs[0].clone(),
            });
        }
        Ok(EgfSeries {
            coeffs: egf_log_coeffs(&self.coeffs),
        })
    }

    /// `f(g(x))` with `F_n = sum_k B_{n,k}(g_1, ...) f_k`. The partial Bell
    /// table is built from `B_{n,k} = sum_i C(n-1,i-1) g_i B_{n-i,k-1}`.
    /// The result order is the minimum of the two orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                expected: "0",
                got: inner.coeffs[0].clone(),
            });
        }
        let order = self.order().min(inner.order());
        let g = &inner.coeffs;
        // table[n][k] = B_{n,k}(g)
        let mut table = vec![vec![ExactScalar::zero(); order + 1]; order + 1];
        table[0][0] = ExactScalar::one();
        for n in 1..=order {
            for k in 1..=n {
                let mut acc = ExactScalar::zero();
                for i in 1..=n - k + 1 {
                    let prev = &table[n - i][k - 1];
                    if prev.is_zero() || g[i].is_zero() {
                        continue;
                    }
                    acc += &g[i] * prev * from_bigint(binomial(n - 1, i - 1));
                }
                table[n][k] = acc;
            }
        }
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(ExactScalar::zero(), |acc, k| {
                    acc + &table[n][k] * &self.coeffs[k]
                })
            })
            .collect();
        Ok(EgfSeries { coeffs })
    }

    /// Multiplicative inverse; requires `f_0 != 0`.
    pub fn recip(&self) -> Result<Self> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::ConstantTerm {
                expected: "nonzero",
                got: f0.clone(),
            });
        }
        let inv0 = f0.recip();
        let mut h: Vec<ExactScalar> = vec![inv0.clone()];
        for n in 1..=self.order() {
            let mut acc = ExactScalar::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k] * &h[n - k] * from_bigint(binomial(n, k));
            }
            h.push(-acc * &inv0);
        }
        Ok(EgfSeries { coeffs: h })
    }

    /// `f^alpha` for `f_0 = 1` and rational `alpha`, as `exp(alpha log f)`.
    pub fn pow(&self, alpha: &ExactScalar) -> Result<Self> {
        self.log()?.scale(alpha).exp()
    }

    /// Multiplies the underlying function by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let ord = self.ordinary();
        let shifted: Vec<ExactScalar> = (0..=self.order())
            .map(|n| {
                if n >= k {
                    ord[n - k].clone()
                } else {
                    ExactScalar::zero()
                }
            })
            .collect();
        Self::from_ordinary(&shifted).expect("non-empty")
    }

    /// Substitutes `x -> c x^k`; the result keeps the same order.
    pub fn substitute_monomial(&self, c: &ExactScalar, k: usize) -> Self {
        let ord = self.ordinary();
        let mut out = vec![ExactScalar::zero(); self.order() + 1];
        let mut cp = ExactScalar::one();
        for (n, a) in ord.iter().enumerate() {
            if n * k > self.order() {
                break;
            }
            out[n * k] = a * &cp;
            cp *= c;
        }
        Self::from_ordinary(&out).expect("non-empty")
    }
}

/// Integers as scalars, used by constructors of well-known sequences.
pub fn integer_series(values: impl IntoIterator<Item = BigInt>) -> Result<EgfSeries> {
    EgfSeries::new(values.into_iter().map(from_bigint).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use crate::test_support::{rational_vec, set_partition_count};
    use proptest::prelude::*;

    fn ones(order: usize) -> EgfSeries {
        EgfSeries::from_fn(order, |_| int(1))
    }

    fn bell_oracle(order: usize) -> EgfSeries {
        EgfSeries::from_fn(order, |n| int(set_partition_count(n) as i64))
    }

    // Ordinary power-series substitution computed with plain Taylor
    // coefficients, independent of the Bell-table route.
    fn substitute_ordinary(outer: &[ExactScalar], inner: &[ExactScalar]) -> Vec<ExactScalar> {
        let n = outer.len().min(inner.len());
        let mut result = vec![ExactScalar::zero(); n];
        let mut power = vec![ExactScalar::zero(); n];
        power[0] = int(1);
        for c in outer.iter().take(n) {
            for (r, p) in result.iter_mut().zip(&power) {
                *r += c * p;
            }
            let mut next = vec![ExactScalar::zero(); n];
            for i in 0..n {
                for j in 0..n - i {
                    next[i + j] += &power[i] * &inner[j];
                }
            }
            power = next;
        }
        result
    }

    // Applies sum_m F_m lambda^m/m! (d/dx)^m literally to the polynomial
    // G(x) = sum_n G_n x^n/n! and sets x = 0.
    fn differential_operator_oracle(f: &EgfSeries, g: &EgfSeries) -> Vec<ExactScalar> {
        let order = f.order().min(g.order());
        let mut poly: Vec<ExactScalar> = g.ordinary()[..=order].to_vec();
        let mut out = Vec::new();
        for m in 0..=order {
            // poly currently holds the m-th derivative of G
            out.push(f.coeff(m) * &poly[0]);
            poly = (1..poly.len())
                .map(|i| &poly[i] * int(i as i64))
                .chain(std::iter::once(ExactScalar::zero()))
                .collect();
        }
        out
    }

    #[test]
    fn hadamard_examples() {
        assert_eq!(ones(6).hadamard(&ones(6)), ones(6));
        let fact = EgfSeries::from_fn(7, |n| from_bigint(factorial(n)));
        assert_eq!(fact.hadamard(&ones(7)), fact);
        assert_eq!(ones(3).hadamard(&ones(5)).order(), 3);
    }

    #[test]
    fn exp_examples() {
        let g = EgfSeries::from_fn(8, |n| if n == 0 { int(0) } else { int(1) });
        assert_eq!(g.exp().unwrap(), bell_oracle(8));
        let c = ratio(-3, 7);
        let lin = EgfSeries::from_fn(6, |n| if n == 1 { c.clone() } else { int(0) });
        let expected = EgfSeries::from_fn(6, |n| crate::scalar::powi(&c, n));
        assert_eq!(lin.exp().unwrap(), expected);
        let h = EgfSeries::from_ints(&[0, 2, 1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(
            h.exp().unwrap(),
            EgfSeries::from_ints(&[1, 2, 5, 14, 43, 142, 499, 1850]).unwrap()
        );
        assert!(matches!(ones(3).exp(), Err(Error::ConstantTerm { .. })));
    }

    #[test]
    fn log_examples() {
        let g = EgfSeries::from_fn(8, |n| if n == 0 { int(0) } else { int(1) });
        assert_eq!(bell_oracle(8).log().unwrap(), g);
        assert_eq!(ones(6).log().unwrap(), EgfSeries::identity(6));
        assert!(EgfSeries::zero(3).log().is_err());
    }

    #[test]
    fn compose_examples() {
        let f = EgfSeries::from_ints(&[3, -1, 4, 1, -5, 9]).unwrap();
        assert_eq!(f.compose(&EgfSeries::identity(5)).unwrap(), f);
        let g = EgfSeries::from_fn(8, |n| if n == 0 { int(0) } else { int(1) });
        assert_eq!(ones(8).compose(&g).unwrap(), bell_oracle(8));
        assert!(f.compose(&ones(5)).is_err());
    }

    #[test]
    fn recip_and_pow() {
        let one_minus_x = EgfSeries::from_ints(&[1, -1, 0, 0, 0, 0]).unwrap();
        let geometric = EgfSeries::from_fn(5, |n| from_bigint(factorial(n)));
        assert_eq!(one_minus_x.recip().unwrap(), geometric);
        let sq = geometric.pow(&ratio(1, 2)).unwrap();
        assert_eq!(sq.mul(&sq), geometric);
    }

    #[test]
    fn serializes_as_strings() {
        let s = EgfSeries::new(vec![int(1), ratio(-1, 2)]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"order":1,"coeffs":["1","-1/2"]}"#);
        let back: EgfSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<EgfSeries>(r#"{"order":2,"coeffs":["1"]}"#).is_err());
    }

    proptest! {
        #[test]
        fn hadamard_commutative_bilinear(
            f in rational_vec(11), g in rational_vec(11), h in rational_vec(11),
            (p, q) in (-9i64..9, 1i64..9),
        ) {
            let (f, g, h) = (EgfSeries::new(f).unwrap(), EgfSeries::new(g).unwrap(), EgfSeries::new(h).unwrap());
            let c = ratio(p, q);
            prop_assert_eq!(f.hadamard(&g), g.hadamard(&f));
            prop_assert_eq!(f.scale(&c).add(&h).hadamard(&g), f.hadamard(&g).scale(&c).add(&h.hadamard(&g)));
        }

        #[test]
        fn product_formula_matches_operator_application(f in rational_vec(9), g in rational_vec(9)) {
            let (f, g) = (EgfSeries::new(f).unwrap(), EgfSeries::new(g).unwrap());
            prop_assert_eq!(f.hadamard(&g).into_coeffs(), differential_operator_oracle(&f, &g));
            prop_assert_eq!(g.hadamard(&f).into_coeffs(), differential_operator_oracle(&g, &f));
        }

        #[test]
        fn exp_log_inverse(mut f in rational_vec(11)) {
            f[0] = int(1);
            let f = EgfSeries::new(f).unwrap();
            prop_assert_eq!(f.log().unwrap().exp().unwrap(), f.clone());
            let mut g = f.into_coeffs();
            g[0] = int(0);
            let g = EgfSeries::new(g).unwrap();
            prop_assert_eq!(g.exp().unwrap().log().unwrap(), g);
        }

        #[test]
        fn compose_matches_substitution(mut f in rational_vec(7), mut g in rational_vec(7), linear in any::<bool>()) {
            g[0] = int(0);
            if linear {
                f = vec![int(1), int(1), int(0), int(0), int(0), int(0), int(0)];
            }
            let (fs, gs) = (EgfSeries::new(f).unwrap(), EgfSeries::new(g).unwrap());
            let composed = fs.compose(&gs).unwrap();
            let oracle = substitute_ordinary(&fs.ordinary(), &gs.ordinary());
            prop_assert_eq!(composed.ordinary(), oracle);
        }

        #[test]
        fn compose_truncation_stable(f in rational_vec(11), mut g in rational_vec(11), m in 0usize..=10) {
            g[0] = int(0);
            let (f, g) = (EgfSeries::new(f).unwrap(), EgfSeries::new(g).unwrap());
            let full = f.compose(&g).unwrap().truncate(m);
            let short = f.truncate(m).compose(&g.truncate(m)).unwrap();
            prop_assert_eq!(full, short);
        }
    }
}
