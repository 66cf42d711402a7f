use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::normal_form::NormalForm;
use super::rewrite::normal_order_word;
use super::word::BosonWord;
use crate::error::{Error, Result};
use crate::ring::{egf_exp_coeffs, egf_log_coeffs};
use crate::scalar::{powi, ExactScalar};

/// EGF in `x` whose coefficients are normally ordered operators. Entry
/// `n` is the operator coefficient of `x^n / n!`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolSeries {
    pub order: usize,
    pub coeffs: Vec<NormalForm>,
}

impl SymbolSeries {
    pub fn new(coeffs: Vec<NormalForm>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a symbol series needs at least one coefficient".into(),
            ));
        }
        Ok(SymbolSeries {
            order: coeffs.len() - 1,
            coeffs,
        })
    }

    /// `:exp(...):` with `a†`, `a` commuting. Entry 0 must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument(
                "exponent series must have a zero constant term".into(),
            ));
        }
        Self::new(egf_exp_coeffs(&self.coeffs))
    }

    /// Logarithm over commuting symbols; entry 0 must be the identity.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_identity() {
            return Err(Error::InvalidArgument(format!(
                "entry 0 must be the identity to take a logarithm, got {}",
                self.coeffs[0]
            )));
        }
        Self::new(egf_log_coeffs(&self.coeffs))
    }
}

/// Entries `N[w^n]` for `n = 0..=order`, computed incrementally by
/// multiplying the previous normal form by `op` and re-ordering.
pub fn power_series(op: &NormalForm, order: usize) -> SymbolSeries {
    let mut coeffs = vec![NormalForm::identity()];
    for n in 1..=order {
        let next = coeffs[n - 1].operator_product(op);
        coeffs.push(next);
    }
    SymbolSeries { order, coeffs }
}

/// The normally ordered exponential `N[exp(x w)]` to order `order`.
pub fn word_power_series(word: &BosonWord, order: usize) -> SymbolSeries {
    power_series(&normal_order_word(word), order)
}

/// Vertex functions `V_1..V_N` of an operator: the logarithm of its
/// normally ordered exponential over commuting symbols. Entry 0 is zero.
pub fn extract_vertices_of(op: &NormalForm, order: usize) -> Result<SymbolSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument(
            "vertex extraction needs order >= 1".into(),
        ));
    }
    power_series(op, order).log()
}

pub fn extract_vertices(word: &BosonWord, order: usize) -> Result<SymbolSeries> {
    extract_vertices_of(&normal_order_word(word), order)
}

/// The normal symbol `sum c_ij zbar^i z^j`, i.e. `<z| nf |z>`.
pub fn coherent_expectation(nf: &NormalForm, z: &ExactScalar, zbar: &ExactScalar) -> ExactScalar {
    nf.terms().fold(ExactScalar::zero(), |acc, (i, j, c)| {
        acc + c * powi(zbar, i as usize) * powi(z, j as usize)
    })
}
