//! Stirling and Bell numbers, partial/complete Bell polynomials and the
//! Hermite families they specialise to.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, from_bigint, int, powi, ExactScalar};

/// Multiplicities `nu_1..nu_n` of an integer partition: `sum j nu_j = n`
/// and `sum nu_j = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionVector {
    pub nu: Vec<usize>,
}

impl PartitionVector {
    pub fn total(&self) -> usize {
        self.nu.iter().enumerate().map(|(j, v)| (j + 1) * v).sum()
    }

    pub fn parts(&self) -> usize {
        self.nu.iter().sum()
    }

    /// `n! / prod_j [nu_j! (j!)^nu_j]`, the number of set partitions of
    /// an n-set with this block-size profile.
    pub fn multiplicity(&self) -> BigInt {
        let denom = self.nu.iter().enumerate().fold(BigInt::one(), |acc, (j, &v)| {
            acc * factorial(v) * num_traits::pow(factorial(j + 1), v)
        });
        factorial(self.total()) / denom
    }
}

/// Integer partitions of `n` into exactly `k` positive parts.
pub fn partition_vectors(n: usize, k: usize) -> Vec<PartitionVector> {
    fn rec(rest: usize, slots: usize, max: usize, nu: &mut Vec<usize>, out: &mut Vec<PartitionVector>) {
        if slots == 0 {
            if rest == 0 {
                out.push(PartitionVector { nu: nu.clone() });
            }
            return;
        }
        // each remaining part is at least 1 and at most `max`
        let hi = max.min(rest + 1 - slots);
        for part in (1..=hi).rev() {
            if part * slots < rest {
                break;
            }
            nu[part - 1] += 1;
            rec(rest - part, slots - 1, part, nu, out);
            nu[part - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    if k == 0 || k > n {
        if n == 0 && k == 0 {
            out.push(PartitionVector { nu: vec![] });
        }
        return out;
    }
    let mut nu = vec![0; n];
    rec(n, k, n, &mut nu, &mut out);
    out
}

/// Stirling numbers of the second kind, row by row up to `n_max`.
pub fn stirling2_table(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let stay = if k < n { prev[k].clone() * BigInt::from(k) } else { BigInt::zero() };
                let new_block = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
                stay + new_block
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `S(n, k)` by the recurrence `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(n: usize, k: usize) -> Result<ExactScalar> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "S(n, k) needs k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(from_bigint(stirling2_table(n)[n][k].clone()))
}

pub fn bell_numbers(n_max: usize) -> Vec<BigInt> {
    stirling2_table(n_max)
        .into_iter()
        .map(|row| row.into_iter().sum())
        .collect()
}

pub fn bell_number(n: usize) -> BigInt {
    bell_numbers(n).pop().expect("non-empty")
}

/// Touchard polynomial `B_n(u) = sum_k S(n,k) u^k`.
pub fn bell_polynomial(n: usize, u: &ExactScalar) -> ExactScalar {
    stirling2_table(n)[n]
        .iter()
        .enumerate()
        .fold(ExactScalar::zero(), |acc, (k, s)| acc + from_bigint(s.clone()) * powi(u, k))
}

/// Partial Bell polynomial `B_{n,k}(g_1, ..., g_{n-k+1})` as the explicit
/// sum over partition vectors. `g[0]` is `g_1`. Out-of-range `k` follows
/// the usual conventions `B_{0,0} = 1` and `B_{n,k} = 0` otherwise.
pub fn multivariate_bell(n: usize, k: usize, g: &[ExactScalar]) -> Result<ExactScalar> {
    if k == 0 || k > n {
        return Ok(if n == 0 && k == 0 { int(1) } else { int(0) });
    }
    let needed = n - k + 1;
    if g.len() < needed {
        return Err(Error::TooShort {
            what: "B_{n,k} argument list",
            needed,
            got: g.len(),
        });
    }
    let mut total = ExactScalar::zero();
    for pv in partition_vectors(n, k) {
        let mut term = from_bigint(pv.multiplicity());
        for (j, &v) in pv.nu.iter().enumerate() {
            if v > 0 {
                term *= powi(&g[j], v);
            }
        }
        total += term;
    }
    Ok(total)
}

/// Complete Bell polynomial `Y_n[g] = sum_k B_{n,k}(g)`, `Y_0 = 1`.
pub fn complete_bell(n: usize, g: &[ExactScalar]) -> Result<ExactScalar> {
    if n == 0 {
        return Ok(int(1));
    }
    if g.len() < n {
        return Err(Error::TooShort {
            what: "Y_n argument list",
            needed: n,
            got: g.len(),
        });
    }
    (1..=n).try_fold(ExactScalar::zero(), |acc, k| Ok(acc + multivariate_bell(n, k, g)?))
}

/// Recovers `g_1..g_N` from `Y_1..Y_N` with
/// `g_n = sum_j (-1)^(j-1) (j-1)! B_{n,j}(Y_1, ...)`.
pub fn bell_inverse(y: &[ExactScalar]) -> Vec<ExactScalar> {
    (1..=y.len())
        .map(|n| {
            (1..=n).fold(ExactScalar::zero(), |acc, j| {
                let b = multivariate_bell(n, j, y).expect("length checked");
                let term = b * from_bigint(factorial(j - 1));
                if j % 2 == 1 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Two-variable Hermite–Kampé de Fériet polynomial, the `x^n/n!`
/// coefficient of `exp(g1 x + gm x^M / M!)`.
pub fn hermite_kdf(n: usize, m: usize, g1: &ExactScalar, gm: &ExactScalar) -> Result<ExactScalar> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("H^(M) needs M >= 2, got {m}")));
    }
    let m_fact = from_bigint(factorial(m));
    let n_fact = from_bigint(factorial(n));
    let mut total = ExactScalar::zero();
    for r in 0..=n / m {
        let rest = n - m * r;
        let denom = from_bigint(factorial(rest) * factorial(r)) * powi(&m_fact, r);
        total += powi(g1, rest) * powi(gm, r) / denom;
    }
    Ok(total * n_fact)
}

/// Involution numbers, `H_n^(2)(1, 1)`.
pub fn involution(n: usize) -> BigInt {
    hermite_kdf(n, 2, &int(1), &int(1))
        .expect("M = 2")
        .to_integer()
}

/// Modified Hermite polynomials: `h_0 = 1`, `h_1 = x`,
/// `h_{n+1} = x h_n + n h_{n-1}`; generated by `exp(x t + t^2/2)`.
pub fn modified_hermite(n: usize, x: &ExactScalar) -> ExactScalar {
    modified_hermite_list(n, x).pop().expect("non-empty")
}

pub fn modified_hermite_list(n_max: usize, x: &ExactScalar) -> Vec<ExactScalar> {
    let mut out = vec![int(1)];
    if n_max >= 1 {
        out.push(x.clone());
    }
    for n in 1..n_max {
        let next = x * &out[n] + int(n as i64) * &out[n - 1];
        out.push(next);
    }
    out
}

/// Compares `B_{n,k}(a b g_1, a b^2 g_2, ...)` with `a^k b^n B_{n,k}(g)`.
pub fn homogeneity_check(
    n: usize,
    k: usize,
    a: &ExactScalar,
    b: &ExactScalar,
    g: &[ExactScalar],
) -> Result<bool> {
    let scaled: Vec<ExactScalar> = g
        .iter()
        .enumerate()
        .map(|(j, gj)| a * powi(b, j + 1) * gj)
        .collect();
    let lhs = multivariate_bell(n, k, &scaled)?;
    let rhs = powi(a, k) * powi(b, n) * multivariate_bell(n, k, g)?;
    Ok(lhs == rhs)
}
