//! Coefficient rings for exponential generating functions.
//!
//! The exp/log recurrences below only need a commutative ring that can be
//! scaled by integers, so they are shared between scalar series and the
//! operator-symbol series of the normal-ordering engine.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{binomial, ExactScalar};

pub trait EgfRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    /// Commutative ring product.
    fn mul(&self, other: &Self) -> Self;
    fn scale_int(&self, k: &BigInt) -> Self;
}

impl EgfRing for ExactScalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_int(&self, k: &BigInt) -> Self {
        self * ExactScalar::from_integer(k.clone())
    }
}

/// Binomial convolution `h_n = sum_k C(n,k) f_k g_{n-k}`, the EGF product.
pub fn egf_product<R: EgfRing>(f: &[R], g: &[R]) -> Vec<R> {
    let len = f.len().min(g.len());
    (0..len)
        .map(|n| {
            (0..=n).fold(R::zero(), |acc, k| {
                if f[k].is_zero() || g[n - k].is_zero() {
                    acc
                } else {
                    acc.add(&f[k].mul(&g[n - k]).scale_int(&binomial(n, k)))
                }
            })
        })
        .collect()
}

/// Coefficients of `exp(g)` from `y' = g' y`; `g[0]` is ignored and
/// treated as zero.
pub fn egf_exp_coeffs<R: EgfRing>(g: &[R]) -> Vec<R> {
    let mut y = Vec::with_capacity(g.len());
    if g.is_empty() {
        return y;
    }
    y.push(R::one());
    for n in 0..g.len() - 1 {
        let mut next = R::zero();
        for k in 0..=n {
            if g[k + 1].is_zero() || y[n - k].is_zero() {
                continue;
            }
            next = next.add(&g[k + 1].mul(&y[n - k]).scale_int(&binomial(n, k)));
        }
        y.push(next);
    }
    y
}

/// Coefficients of `log(f)` for `f[0] == 1` (not checked here).
pub fn egf_log_coeffs<R: EgfRing>(f: &[R]) -> Vec<R> {
    let mut g = Vec::with_capacity(f.len());
    if f.is_empty() {
        return g;
    }
    g.push(R::zero());
    for n in 0..f.len() - 1 {
        let mut next = f[n + 1].clone();
        for k in 0..n {
            if g[k + 1].is_zero() || f[n - k].is_zero() {
                continue;
            }
            next = next.sub(&g[k + 1].mul(&f[n - k]).scale_int(&binomial(n, k)));
        }
        g.push(next);
    }
    g
}
