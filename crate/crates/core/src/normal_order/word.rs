use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Annihilation operator `a`, written `a`.
    A,
    /// Creation operator `a†`, written `A`.
    Adag,
}

impl Letter {
    pub fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::Adag => 'A',
        }
    }
}

/// A finite product of `a` and `a†`, read left to right as written; the
/// rightmost letter acts first on a state.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BosonWord {
    letters: Vec<Letter>,
}

impl BosonWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BosonWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BosonWord) -> BosonWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BosonWord { letters }
    }

    pub fn pow(&self, n: usize) -> BosonWord {
        BosonWord {
            letters: self.letters.repeat(n),
        }
    }

    /// True when no `a` precedes an `a†`.
    pub fn is_normal(&self) -> bool {
        !self.letters.windows(2).any(|w| w == [Letter::A, Letter::Adag])
    }
}

impl FromStr for BosonWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'A' => Ok(Letter::Adag),
                other => Err(Error::Parse(format!(
                    "word letters must be 'a' (annihilation) or 'A' (creation), found {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BosonWord::new)
    }
}

impl fmt::Display for BosonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}
