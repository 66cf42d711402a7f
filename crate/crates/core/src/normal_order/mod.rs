//! Boson normal ordering.
//!
//! Words over `{a, a†}` are rewritten with `a a† -> a† a + 1` until every
//! annihilator stands to the right. The resulting [`NormalForm`] is the
//! coefficient table of `sum c_ij (a†)^i a^j`. Powers of an operator are
//! built incrementally from normal-form products, and the vertex functions
//! `V_n` come from the logarithm of the normally ordered exponential read
//! as a series over commuting symbols.

mod fock;
mod normal_form;
mod rewrite;
mod symbols;
mod word;

pub use fock::{apply_to_fock, apply_word_to_fock, FockVector, SqrtAmplitude};
pub use normal_form::NormalForm;
pub use rewrite::{normal_order_with, normal_order_word, parse_operator};
pub use symbols::{
    coherent_expectation, extract_vertices, extract_vertices_of, power_series, word_power_series,
    SymbolSeries,
};
pub use word::{BosonWord, Letter};
