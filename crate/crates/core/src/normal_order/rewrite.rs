use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::normal_form::NormalForm;
use super::word::{BosonWord, Letter};
use crate::error::{Error, Result};
use crate::scalar::{from_bigint, parse_scalar, ExactScalar};

/// Normal form of a word by exhaustive rewriting `a a† -> a† a + 1`,
/// always reducing the leftmost redex.
pub fn normal_order_word(word: &BosonWord) -> NormalForm {
    normal_order_with(word, |_, redexes| redexes[0])
}

/// Rewrites with a caller-chosen redex. `choose` receives the current word
/// and the positions `p` with `word[p] = a`, `word[p+1] = a†`, and returns
/// one of those positions.
pub fn normal_order_with(
    word: &BosonWord,
    mut choose: impl FnMut(&[Letter], &[usize]) -> usize,
) -> NormalForm {
    let mut pending: HashMap<Vec<Letter>, BigInt> = HashMap::new();
    pending.insert(word.letters().to_vec(), BigInt::one());
    let mut done: HashMap<(u32, u32), BigInt> = HashMap::new();

    while let Some(key) = pending.keys().next().cloned() {
        let coeff = pending.remove(&key).expect("key present");
        if coeff.is_zero() {
            continue;
        }
        let redexes: Vec<usize> = key
            .windows(2)
            .enumerate()
            .filter(|(_, w)| *w == [Letter::A, Letter::Adag])
            .map(|(p, _)| p)
            .collect();
        if redexes.is_empty() {
            let creation = key.iter().filter(|&&l| l == Letter::Adag).count() as u32;
            let annihilation = key.len() as u32 - creation;
            *done.entry((creation, annihilation)).or_default() += coeff;
            continue;
        }
        let p = choose(&key, &redexes);
        assert!(redexes.contains(&p), "chosen position {p} is not a redex");
        let mut swapped = key.clone();
        swapped.swap(p, p + 1);
        let mut contracted = key.clone();
        contracted.drain(p..p + 2);
        *pending.entry(swapped).or_default() += &coeff;
        *pending.entry(contracted).or_default() += coeff;
    }

    NormalForm::from_terms(
        done.into_iter()
            .map(|((i, j), c)| (i, j, from_bigint(c))),
    )
}

/// Parses a sum of words such as `a+A` or `2*AAa + -1/2*a`. Each word is
/// normally ordered and the results are added.
pub fn parse_operator(text: &str) -> Result<NormalForm> {
    let mut total = NormalForm::zero();
    for raw in text.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in operator {text:?}")));
        }
        let (coeff, word) = match term.split_once('*') {
            Some((c, w)) => (parse_scalar(c)?, w),
            None => (ExactScalar::one(), term),
        };
        let word: BosonWord = word.parse()?;
        total = total.add(&normal_order_word(&word).scale(&coeff));
    }
    Ok(total)
}
