use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::Letter;
use crate::scalar::{binomial, factorial, from_bigint, parse_scalar, ExactScalar};

/// `sum c_ij (a†)^i a^j`, keyed by `(i, j)` = (creation power,
/// annihilation power). Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalForm {
    terms: BTreeMap<(u32, u32), ExactScalar>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::monomial(0, 0, ExactScalar::one())
    }

    pub fn monomial(creation: u32, annihilation: u32, coeff: ExactScalar) -> Self {
        let mut nf = Self::zero();
        nf.add_term(creation, annihilation, coeff);
        nf
    }

    pub fn letter(l: Letter) -> Self {
        match l {
            Letter::A => Self::monomial(0, 1, ExactScalar::one()),
            Letter::Adag => Self::monomial(1, 0, ExactScalar::one()),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, ExactScalar)>) -> Self {
        let mut nf = Self::zero();
        for (i, j, c) in terms {
            nf.add_term(i, j, c);
        }
        nf
    }

    pub fn add_term(&mut self, creation: u32, annihilation: u32, coeff: ExactScalar) {
        if coeff.is_zero() {
            return;
        }
        let key = (creation, annihilation);
        let entry = self.terms.entry(key).or_insert_with(ExactScalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, creation: u32, annihilation: u32) -> ExactScalar {
        self.terms
            .get(&(creation, annihilation))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, u32, &ExactScalar)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn max_annihilation(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::from_terms(self.terms().map(|(i, j, x)| (i, j, x * c)))
    }

    /// Operator product, re-ordered with
    /// `a^j (a†)^k = sum_r C(j,r) C(k,r) r! (a†)^(k-r) a^(j-r)`.
    pub fn operator_product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            for (k, l, d) in other.terms() {
                let cd = c * d;
                for r in 0..=j.min(k) {
                    let (ju, ku, ru) = (j as usize, k as usize, r as usize);
                    let weight: BigInt = binomial(ju, ru) * binomial(ku, ru) * factorial(ru);
                    out.add_term(i + k - r, j + l - r, &cd * from_bigint(weight));
                }
            }
        }
        out
    }

    /// Product with `a†` and `a` treated as commuting symbols, the
    /// multiplication inside the double-dot `:...:` bracket.
    pub fn symbol_product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            for (k, l, d) in other.terms() {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }
}

impl crate::ring::EgfRing for NormalForm {
    fn zero() -> Self {
        NormalForm::zero()
    }
    fn one() -> Self {
        NormalForm::identity()
    }
    fn is_zero(&self) -> bool {
        NormalForm::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        NormalForm::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        NormalForm::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.symbol_product(other)
    }
    fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&from_bigint(k.clone()))
    }
}

/// JSON form: `[[i, j, "p/q"], ...]`, highest powers first.
impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (i, j, c) in self.terms().rev() {
            seq.serialize_element(&(i, j, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<(u32, u32, String)>::deserialize(d)?;
        let mut nf = NormalForm::zero();
        for (i, j, c) in raw {
            nf.add_term(i, j, parse_scalar(&c).map_err(D::Error::custom)?);
        }
        Ok(nf)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, j, c)) in self.terms().rev().enumerate() {
            let monomial = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let pow = |sym: &str, p: u32| match p {
                        0 => String::new(),
                        1 => sym.to_string(),
                        _ => format!("{sym}^{p}"),
                    };
                    [pow("a†", i), pow("a", j)]
                        .into_iter()
                        .filter(|s| !s.is_empty())
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (monomial.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{monomial}")?,
                (false, false) => write!(f, "{mag} {monomial}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn zero_terms_are_dropped() {
        let mut nf = NormalForm::monomial(1, 1, int(2));
        nf.add_term(1, 1, int(-2));
        assert!(nf.is_zero());
        assert_eq!(NormalForm::monomial(3, 0, int(0)).len(), 0);
    }

    #[test]
    fn commutator_from_product() {
        let a = NormalForm::letter(Letter::A);
        let ad = NormalForm::letter(Letter::Adag);
        let aad = a.operator_product(&ad);
        let ada = ad.operator_product(&a);
        assert_eq!(aad.sub(&ada), NormalForm::identity());
        assert_eq!(a.symbol_product(&ad), ad.symbol_product(&a));
    }

    #[test]
    fn json_layout() {
        let nf = NormalForm::from_terms([(0, 0, int(1)), (1, 1, int(1)), (2, 0, ratio(-1, 3))]);
        let json = serde_json::to_string(&nf).unwrap();
        assert_eq!(json, r#"[[2,0,"-1/3"],[1,1,"1"],[0,0,"1"]]"#);
        let back: NormalForm = serde_json::from_str(&json).unwrap();
        assert_eq!(back, nf);
    }

    #[test]
    fn display() {
        let nf = NormalForm::from_terms([(0, 0, int(1)), (1, 1, int(1)), (2, 3, ratio(-1, 3))]);
        assert_eq!(nf.to_string(), "-1/3 a†^2 a^3 + a† a + 1");
        assert_eq!(NormalForm::zero().to_string(), "0");
    }
}
