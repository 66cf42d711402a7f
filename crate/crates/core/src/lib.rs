//! Exact combinatorics of boson normal ordering.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`] — truncated exponential generating functions over exact
//!   rationals: Hadamard products, composition, `exp` and `log`.
//! * [`combinatorics`] — Stirling and Bell numbers, partial and complete
//!   Bell polynomials with their inversion, Hermite–Kampé de Fériet and
//!   modified Hermite polynomials.
//! * [`normal_order`] — a term-rewriting engine for words in `a`, `a†`,
//!   normally ordered exponentials and their vertex functions.
//! * [`counting`] — `A_n = Y_n[L] Y_n[V]`, the Kerr-type and
//!   superfluidity-type generating functions and their closed forms.
//! * [`diagrams`] — enumeration of line-labelled graphs as pairs of set
//!   partitions, weighted totals and isomorphism classes.
//! * [`numerics`] — floating point checks: Bell asymptotics, divergence
//!   ratios, the zero-dimensional `φ⁴` integral and its Bessel closed form.
//! * [`verify`] and [`cli`] — the fixture report and the command line.

pub mod cli;
pub mod combinatorics;
pub mod counting;
pub mod diagrams;
pub mod error;
pub mod normal_order;
pub mod numerics;
pub mod ring;
pub mod scalar;
pub mod series;
pub mod verify;

#[cfg(test)]
pub(crate) mod test_support;

pub use error::{Error, Result};
pub use scalar::ExactScalar;
pub use series::EgfSeries;
