//! Fixture comparisons against the published values, grouped by module.
//!
//! Every check carries the expected value, the computed value and a
//! status. Checks run in parallel and the report is ordered by name, so
//! the serialized report is identical between runs when timings are off.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{
    bell_inverse, bell_numbers, complete_bell, homogeneity_check, involution, modified_hermite_list,
    multivariate_bell, stirling2,
};
use crate::counting::{
    count, integrand_coefficient_identity, kerr_sequence, x4_vacuum_coefficients, z1_series, z2_closed,
    z2_series, z3_closed, z3_series, ModelSpec,
};
use crate::diagrams::{enumerate, weighted_total};
use crate::error::{Error, Result};
use crate::normal_order::{
    apply_to_fock, apply_word_to_fock, extract_vertices, extract_vertices_of, normal_order_word,
    parse_operator, BosonWord, NormalForm,
};
use crate::numerics::{
    bell_asymptotic, divergence_ratio, divergence_ratio_exact, macdonald_closed, phi4_integral,
    phi4_series, x4_gamma_coefficients,
};
use crate::scalar::{factorial, from_bigint, int, ratio, to_f64, ExactScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub scope: Scope,
    pub checks: Vec<Check>,
    pub overall: Status,
    /// Per-check wall time in milliseconds, in check order. Only filled
    /// when requested, since it breaks byte-for-byte reproducibility.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    All,
    Series,
    Combinatorics,
    NormalOrder,
    Counting,
    Diagrams,
    Numerics,
}

impl Scope {
    const NAMES: [(&'static str, Scope); 7] = [
        ("all", Scope::All),
        ("series", Scope::Series),
        ("combinatorics", Scope::Combinatorics),
        ("normal-order", Scope::NormalOrder),
        ("counting", Scope::Counting),
        ("diagrams", Scope::Diagrams),
        ("numerics", Scope::Numerics),
    ];
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scope::NAMES
            .iter()
            .find(|(name, _)| *name == s)
            .map(|(_, scope)| *scope)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scope '{s}'")))
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = Scope::NAMES.iter().find(|(_, s)| s == self).map(|(n, _)| *n).unwrap_or("?");
        f.write_str(name)
    }
}

fn list(values: &[ExactScalar]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn ints(values: &[i64]) -> Vec<ExactScalar> {
    values.iter().map(|&v| int(v)).collect()
}

fn compare(name: &str, expected: String, got: String) -> Check {
    let status = if expected == got { Status::Pass } else { Status::Fail };
    Check {
        name: name.into(),
        expected,
        got,
        status,
    }
}

fn holds(name: &str, expected: &str, got: String, ok: bool) -> Check {
    Check {
        name: name.into(),
        expected: expected.into(),
        got,
        status: if ok { Status::Pass } else { Status::Fail },
    }
}

fn failed(name: &str, err: Error) -> Check {
    holds(name, "no error", err.to_string(), false)
}

fn guard(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| failed(name, e))
}

type CheckFn = fn() -> Check;

fn series_checks() -> Vec<CheckFn> {
    vec![
        || {
            let name = "series: Bell numbers from exp(e^x - 1)";
            guard(name, || {
                let inner = crate::EgfSeries::from_fn(10, |n| if n == 0 { int(0) } else { int(1) });
                let got = inner.exp()?;
                let expected = ints(&[1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]);
                Ok(compare(name, list(&expected), list(got.coeffs())))
            })
        },
        || {
            let name = "series: log(exp(f)) roundtrip";
            guard(name, || {
                let f = crate::EgfSeries::new(vec![int(0), ratio(1, 2), int(-3), ratio(5, 7), int(2), ratio(-1, 9)])?;
                let back = f.exp()?.log()?;
                Ok(compare(name, list(f.coeffs()), list(back.coeffs())))
            })
        },
    ]
}

fn combinatorics_checks() -> Vec<CheckFn> {
    vec![
        || {
            let expected = ints(&[1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]);
            let got: Vec<ExactScalar> = bell_numbers(10).into_iter().map(from_bigint).collect();
            compare("combinatorics: Bell numbers B_0..B_10", list(&expected), list(&got))
        },
        || {
            let expected = ints(&[1, 2, 5, 14, 43, 142, 499, 1850]);
            compare(
                "combinatorics: modified Hermite h_n(2), n <= 7",
                list(&expected),
                list(&modified_hermite_list(7, &int(2))),
            )
        },
        || {
            let expected = ints(&[1, 1, 2, 4, 10, 26, 76, 232]);
            let got: Vec<ExactScalar> = (0..8).map(|n| from_bigint(involution(n))).collect();
            compare("combinatorics: involution numbers, n <= 7", list(&expected), list(&got))
        },
        || {
            let name = "combinatorics: B_{n,k}(1,...,1) = S(n,k), n <= 8";
            guard(name, || {
                let ones = vec![int(1); 8];
                let mut bad = Vec::new();
                for n in 1..=8 {
                    for k in 1..=n {
                        if multivariate_bell(n, k, &ones)? != stirling2(n, k)? {
                            bad.push(format!("({n},{k})"));
                        }
                    }
                }
                Ok(holds(name, "all equal", format!("{} mismatches", bad.len()), bad.is_empty()))
            })
        },
        || {
            let name = "combinatorics: Bell inversion roundtrip";
            guard(name, || {
                let g = vec![ratio(1, 3), int(-2), ratio(5, 4), int(0), ratio(-7, 2), int(3), ratio(1, 8), int(9)];
                let y: Vec<ExactScalar> = (1..=8).map(|n| complete_bell(n, &g)).collect::<Result<_>>()?;
                let back = bell_inverse(&y);
                Ok(compare(name, list(&g), list(&back)))
            })
        },
        || {
            let name = "combinatorics: homogeneity of partial Bell polynomials";
            guard(name, || {
                let g = vec![ratio(2, 3), int(-1), ratio(3, 5), int(4), ratio(-1, 6), int(2), int(1), ratio(1, 2)];
                let mut ok = true;
                for n in 1..=8 {
                    for k in 1..=n {
                        ok &= homogeneity_check(n, k, &ratio(-3, 2), &ratio(5, 7), &g)?;
                    }
                }
                Ok(holds(name, "holds for n <= 8", ok.to_string(), ok))
            })
        },
    ]
}

fn normal_order_checks() -> Vec<CheckFn> {
    vec![
        || {
            let name = "normal-order: (a†a)^n gives S(n,k), n <= 8";
            guard(name, || {
                let number: BosonWord = "Aa".parse()?;
                let mut ok = true;
                for n in 1..=8 {
                    let nf = normal_order_word(&number.pow(n));
                    for k in 0..=n {
                        ok &= nf.coeff(k as u32, k as u32) == stirling2(n, k)?;
                    }
                    ok &= nf.len() == n;
                }
                Ok(holds(name, "coefficients S(n,k)", ok.to_string(), ok))
            })
        },
        || {
            let name = "normal-order: rewriting agrees with Fock action";
            guard(name, || {
                let mut ok = true;
                for w in ["aA", "AaAaAa", "aaAAa", "AAaaAA", "aAaAaA", "aaaAAA"] {
                    let word: BosonWord = w.parse()?;
                    let nf = normal_order_word(&word);
                    for m in 0..5 {
                        let cutoff = m + word.len();
                        ok &= apply_to_fock(&nf, m, cutoff)? == apply_word_to_fock(&word, m, cutoff)?;
                    }
                }
                Ok(holds(name, "equal on e_0..e_4", ok.to_string(), ok))
            })
        },
        || {
            let name = "normal-order: vertices of a†a";
            guard(name, || {
                let v = extract_vertices(&"Aa".parse()?, 6)?;
                let ok = v.coeffs[1..].iter().all(|c| *c == NormalForm::monomial(1, 1, int(1)));
                Ok(holds(name, "V_n = a†a", v.coeffs[6].to_string(), ok))
            })
        },
        || {
            let name = "normal-order: vertices of (a†)^2 a";
            guard(name, || {
                let v = extract_vertices(&"AAa".parse()?, 6)?;
                let ok = (1..=6).all(|n| v.coeffs[n] == NormalForm::monomial(n as u32 + 1, 1, from_bigint(factorial(n))));
                Ok(holds(name, "V_n = n! a†^(n+1) a", v.coeffs[6].to_string(), ok))
            })
        },
        || {
            let name = "normal-order: vertices of a + a†";
            guard(name, || {
                let v = extract_vertices_of(&parse_operator("a+A")?, 6)?;
                let ok = v.coeffs[1] == parse_operator("a+A")?
                    && v.coeffs[2] == NormalForm::identity()
                    && v.coeffs[3..].iter().all(NormalForm::is_zero);
                let got: Vec<String> = v.coeffs[1..].iter().map(ToString::to_string).collect();
                Ok(holds(name, "V_1 = a + a†, V_2 = 1, then 0", got.join("; "), ok))
            })
        },
    ]
}

fn counting_checks() -> Vec<CheckFn> {
    vec![
        || {
            let name = "counting: Kerr M=2, A_1..A_6";
            guard(name, || {
                let got = kerr_sequence(2, 6)?;
                Ok(compare(name, list(&ints(&[1, 4, 20, 150, 1352, 15428])), list(&got[1..])))
            })
        },
        || {
            let name = "counting: Kerr M=3, A_n for n in {1,2,3,4,6}";
            guard(name, || {
                let a = kerr_sequence(3, 6)?;
                let got = [1, 2, 3, 4, 6].map(|n| a[n].clone());
                Ok(compare(name, list(&ints(&[1, 2, 10, 75, 6293])), list(&got)))
            })
        },
        || {
            let name = "counting: paper-discrepancy (572 vs printed 527)";
            guard(name, || {
                let a5 = kerr_sequence(3, 5)?[5].clone();
                Ok(holds(name, "572", a5.to_string(), a5 == int(572)))
            })
        },
        || {
            let name = "counting: Kerr agrees with Y_n[L] Y_n[V], M in {2,3,4}";
            guard(name, || {
                let mut ok = true;
                for m in 2..=4 {
                    ok &= kerr_sequence(m, 8)? == count(&ModelSpec::kerr(m, 8), 8)?.a;
                }
                Ok(holds(name, "equal through n = 8", ok.to_string(), ok))
            })
        },
        || {
            let name = "counting: superfluidity A_2n";
            guard(name, || {
                let a = count(&ModelSpec::superfluidity(10), 10)?.a;
                let got: Vec<ExactScalar> = a.iter().step_by(2).cloned().collect();
                Ok(compare(name, list(&ints(&[1, 5, 129, 7485, 755265, 116338005])), list(&got)))
            })
        },
        || {
            let name = "counting: Doetsch closed form through lambda^12";
            compare(name, list(z2_series(12).coeffs()), list(z2_closed(12).coeffs()))
        },
        || {
            let name = "counting: Z_3 closed form through lambda^12";
            compare(name, list(z3_series(12).coeffs()), list(z3_closed(12).coeffs()))
        },
        || {
            let name = "counting: Z_1 coefficients are h_n(2)";
            compare(name, list(&modified_hermite_list(7, &int(2))), list(z1_series(7).coeffs()))
        },
        || {
            let name = "counting: integrand coefficient identity, n <= 6";
            guard(name, || {
                let mut ok = true;
                for (m, beta, zsq) in [(2, ratio(3, 7), ratio(5, 2)), (3, ratio(1, 2), ratio(2, 9)), (4, int(2), int(1))] {
                    for n in 0..=6 {
                        let (lhs, rhs) = integrand_coefficient_identity(m, &beta, n, &zsq)?;
                        ok &= lhs == rhs;
                    }
                }
                Ok(holds(name, "lhs = rhs", ok.to_string(), ok))
            })
        },
        || {
            let name = "counting: x^4 vacuum coefficients, Gamma vs product formula";
            compare(name, list(&x4_gamma_coefficients(10)), list(&x4_vacuum_coefficients(10)))
        },
    ]
}

fn diagrams_checks() -> Vec<CheckFn> {
    vec![
        || {
            let name = "diagrams: Bell(n)^2 diagrams, n <= 4";
            guard(name, || {
                let got: Vec<ExactScalar> = (0..=4).map(|n| enumerate(n).map(|it| int(it.count() as i64))).collect::<Result<_>>()?;
                Ok(compare(name, list(&ints(&[1, 1, 4, 25, 225])), list(&got)))
            })
        },
        || {
            let name = "diagrams: weighted totals match A_n, n <= 6";
            guard(name, || {
                let mut ok = true;
                for model in [ModelSpec::kerr(2, 6), ModelSpec::kerr(3, 6), ModelSpec::superfluidity(6)] {
                    let a = count(&model, 6)?.a;
                    for n in 1..=6 {
                        ok &= weighted_total(n, &model)? == a[n];
                    }
                }
                Ok(holds(name, "equal for Kerr M=2,3 and superfluidity", ok.to_string(), ok))
            })
        },
    ]
}

fn numerics_checks() -> Vec<CheckFn> {
    vec![
        || {
            let name = "numerics: integral vs Macdonald closed form on the 3x3 grid";
            guard(name, || {
                let mut worst: f64 = 0.0;
                for a in [0.5, 1.0, 2.0] {
                    for g in [0.1, 0.5, 1.0] {
                        worst = worst.max((phi4_integral(a, g)? - macdonald_closed(a, g)?).abs());
                    }
                }
                Ok(holds(name, "<= 1e-8", format!("{worst:.3e}"), worst <= 1e-8))
            })
        },
        || {
            let name = "numerics: optimal truncation of the weak-coupling series";
            guard(name, || {
                let mut ok = true;
                for g in [0.02, 0.05, 0.1] {
                    let r = phi4_series(1.0, g, 400)?;
                    let reference = r.reference.unwrap_or(f64::NAN);
                    ok &= r.abs_error_at_optimal.unwrap_or(f64::INFINITY) <= r.first_omitted.abs() + 1e-10 * reference;
                }
                Ok(holds(name, "error <= first omitted term", ok.to_string(), ok))
            })
        },
        || {
            let name = "numerics: Bell asymptotic at n = 10";
            guard(name, || {
                let ratio = bell_asymptotic(10)? / 115975.0;
                Ok(holds(name, "ratio in [0.1, 10]", format!("{ratio:.4}"), (0.1..=10.0).contains(&ratio)))
            })
        },
        || {
            let name = "numerics: Dobinski sums, n <= 10";
            let bell = bell_numbers(10);
            let mut worst: f64 = 0.0;
            for (n, b) in bell.iter().enumerate() {
                let mut sum = 0.0;
                let mut k_fact = 1.0;
                for k in 0..=60 {
                    if k > 0 {
                        k_fact *= k as f64;
                    }
                    sum += (k as f64).powi(n as i32) / k_fact;
                }
                let exact = to_f64(&from_bigint(b.clone()));
                worst = worst.max((sum / std::f64::consts::E - exact).abs());
            }
            holds(name, "<= 1e-9", format!("{worst:.3e}"), worst <= 1e-9)
        },
        || {
            let name = "numerics: Kerr series diverges by the ratio test";
            guard(name, || {
                let r = divergence_ratio_exact(&kerr_sequence(2, 26)?)?;
                let growing = r[6..].windows(2).all(|w| w[1] > w[0]);
                Ok(holds(name, "ratios increase from n = 6", to_f64(&r[25]).to_string(), growing))
            })
        },
        || {
            let name = "numerics: exponential series converges by the ratio test";
            guard(name, || {
                let r = divergence_ratio(&[1.0; 40])?;
                let ok = r.windows(2).all(|w| w[1] < w[0]) && r[38] < 0.03;
                Ok(holds(name, "ratios fall to 0", r[38].to_string(), ok))
            })
        },
    ]
}

fn checks_for(scope: Scope) -> Vec<CheckFn> {
    match scope {
        Scope::All => [
            series_checks(),
            combinatorics_checks(),
            normal_order_checks(),
            counting_checks(),
            diagrams_checks(),
            numerics_checks(),
        ]
        .concat(),
        Scope::Series => series_checks(),
        Scope::Combinatorics => combinatorics_checks(),
        Scope::NormalOrder => normal_order_checks(),
        Scope::Counting => counting_checks(),
        Scope::Diagrams => diagrams_checks(),
        Scope::Numerics => numerics_checks(),
    }
}

pub fn run(scope: Scope, with_timings: bool) -> RunReport {
    let mut results: Vec<(Check, f64)> = checks_for(scope)
        .into_par_iter()
        .map(|check| {
            let start = Instant::now();
            let c = check();
            (c, start.elapsed().as_secs_f64() * 1e3)
        })
        .collect();
    results.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    let overall = if results.iter().all(|(c, _)| c.status == Status::Pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    let timings = if with_timings { results.iter().map(|(_, t)| *t).collect() } else { Vec::new() };
    RunReport {
        scope,
        checks: results.into_iter().map(|(c, _)| c).collect(),
        overall,
        timings,
    }
}
