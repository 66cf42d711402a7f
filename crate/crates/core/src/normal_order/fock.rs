//! Exact action on number states.
//!
//! Coordinates are taken in the unnormalised basis `e_k = (a†)^k |0>`,
//! where `a† e_k = e_{k+1}` and `a e_k = k e_{k-1}`; every entry stays
//! rational. Since `|k> = e_k / sqrt(k!)`, normalised amplitudes are
//! recovered as rational multiples of square roots.

use num_traits::Zero;

use super::normal_form::NormalForm;
use super::word::{BosonWord, Letter};
use crate::error::{Error, Result};
use crate::scalar::{factorial, from_bigint, int, ExactScalar};

/// The image of the input state `e_m` (equivalently `sqrt(m!) |m>`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockVector {
    pub input: usize,
    pub coords: Vec<ExactScalar>,
}

/// `coeff * sqrt(radicand)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtAmplitude {
    pub coeff: ExactScalar,
    pub radicand: ExactScalar,
}

impl FockVector {
    /// Amplitudes of `nf |m>` on the orthonormal states `|k>`, equal to
    /// `coords[k] * sqrt(k! / m!)`.
    pub fn normalized_amplitudes(&self) -> Vec<SqrtAmplitude> {
        let m_fact = from_bigint(factorial(self.input));
        self.coords
            .iter()
            .enumerate()
            .map(|(k, c)| SqrtAmplitude {
                coeff: c.clone(),
                radicand: from_bigint(factorial(k)) / &m_fact,
            })
            .collect()
    }
}

/// `nf e_m` on the basis `e_0..e_cutoff`.
pub fn apply_to_fock(nf: &NormalForm, m: usize, cutoff: usize) -> Result<FockVector> {
    if m > cutoff {
        return Err(Error::FockCutoff { m, cutoff });
    }
    let mut coords = vec![ExactScalar::zero(); cutoff + 1];
    for (i, j, c) in nf.terms() {
        let (i, j) = (i as usize, j as usize);
        if j > m {
            continue;
        }
        let target = m - j + i;
        if target > cutoff {
            return Err(Error::FockCutoff { m, cutoff });
        }
        // a^j e_m = m!/(m-j)! e_{m-j}
        let falling = from_bigint(factorial(m) / factorial(m - j));
        coords[target] += c * falling;
    }
    Ok(FockVector { input: m, coords })
}

/// Applies the letters of `word` one at a time, rightmost first.
pub fn apply_word_to_fock(word: &BosonWord, m: usize, cutoff: usize) -> Result<FockVector> {
    if m > cutoff {
        return Err(Error::FockCutoff { m, cutoff });
    }
    let width = m + word.len() + 1;
    let mut state = vec![ExactScalar::zero(); width];
    state[m] = int(1);
    for letter in word.letters().iter().rev() {
        let mut next = vec![ExactScalar::zero(); width];
        for (k, c) in state.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match letter {
                Letter::Adag => next[k + 1] += c,
                Letter::A if k > 0 => next[k - 1] += c * int(k as i64),
                Letter::A => {}
            }
        }
        state = next;
    }
    if state.iter().skip(cutoff + 1).any(|c| !c.is_zero()) {
        return Err(Error::FockCutoff { m, cutoff });
    }
    state.resize(cutoff + 1, ExactScalar::zero());
    Ok(FockVector {
        input: m,
        coords: state,
    })
}
