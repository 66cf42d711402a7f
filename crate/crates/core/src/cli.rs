//! Command line front end. Every subcommand prints JSON (or CSV where
//! `--emit csv` is offered) to stdout; exact values are `"p/q"` strings.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failing check, 2 on
//! usage or argument errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde::Serialize;
use serde_json::json;

use crate::combinatorics::{
    bell_numbers, bell_polynomial, hermite_kdf, involution, modified_hermite_list, multivariate_bell,
    stirling2,
};
use crate::counting::{
    count, integrand_coefficient_identity, kerr_sequence, partition_integrand, z2_closed, z2_series,
    z3_closed, z3_series, ModelSpec,
};
use crate::diagrams::{classes, weighted_total};
use crate::error::{Error, Result};
use crate::normal_order::{extract_vertices_of, parse_operator, power_series};
use crate::numerics::{
    bell_asymptotic_ln, divergence_ratio_exact, even_series_ratio, phi4_series,
};
use crate::scalar::{from_bigint, int, parse_scalar, parse_scalar_list, to_f64, to_strings, ExactScalar};
use crate::verify::{self, Scope, Status};

#[derive(Debug, Parser)]
#[command(name = "combfield", version, about = "Exact combinatorics of boson normal ordering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Stirling2,
    Bell,
    BellPoly,
    Mbell,
    Hkdf,
    HermiteMod,
    Involution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphEmit {
    Classes,
    Total,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphModel {
    Kerr2,
    Sf2,
    Custom,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DivergeModel {
    Kerr2,
    Kerr3,
    Sf2,
    Exp,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Values of a number or polynomial family for indices 0..=n.
    Sequence {
        family: Family,
        #[arg(long)]
        n: usize,
        /// Block count for stirling2 (column S(j,k)) and mbell.
        #[arg(long)]
        k: Option<usize>,
        /// Argument of bell-poly.
        #[arg(long, default_value = "1")]
        u: String,
        /// Argument of hermite-mod.
        #[arg(long, default_value = "2")]
        x: String,
        /// Comma separated g_1, g_2, ... for mbell.
        #[arg(long, default_value = "")]
        g: String,
        #[arg(long = "M", default_value_t = 2)]
        m: usize,
        #[arg(long, default_value = "1")]
        g1: String,
        #[arg(long = "gM", default_value = "1")]
        gm: String,
    },
    /// Normal form of a word in a, A (A = a†) or a sum like `a+A`.
    NormalOrder {
        expr: String,
        /// Also print the normally ordered exponential and its vertices.
        #[arg(long)]
        exp: bool,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// A_n = Y_n[L] Y_n[V] for a model given by its L and V lists.
    Count {
        /// Comma separated L_1, L_2, ... or `ones`.
        #[arg(long = "L")]
        l: String,
        #[arg(long = "V")]
        v: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Kerr-type sequence A_n = H_n^(M)(1,1) B_n.
    Kerr {
        #[arg(long = "M")]
        m: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Closed form of Z_2 or Z_3 next to its Hermite series.
    Zclosed {
        #[arg(long)]
        which: u8,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// The coherent-state Boltzmann factor as a truncated Dobiński sum.
    Integrand {
        #[arg(long = "M")]
        m: usize,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        zsq: String,
        #[arg(long, default_value_t = 60)]
        terms: usize,
        /// Also print both sides of the exact lambda^n coefficient identity.
        #[arg(long)]
        coefficient: Option<usize>,
    },
    /// Line-labelled graphs on n lines.
    Graphs {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        model: GraphModel,
        #[arg(long = "L")]
        l: Option<String>,
        #[arg(long = "V")]
        v: Option<String>,
        #[arg(long, value_enum, default_value_t = GraphEmit::Classes)]
        emit: GraphEmit,
    },
    /// Partial sums of the weak-coupling series against the integral.
    Phi4 {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        g: f64,
        #[arg(long, default_value_t = 40)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Asymptotic estimate of B_n next to the exact value.
    BellAsym {
        #[arg(long)]
        n: usize,
    },
    /// d'Alembert ratios of a generating function's coefficients.
    Diverge {
        #[arg(long, value_enum)]
        model: DivergeModel,
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Runs the fixture checks and prints the report.
    Verify {
        #[arg(default_value = "all")]
        scope: String,
        /// Include per-check timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

/// Parses `args` (including the program name), writes the result to
/// `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = writeln!(out, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut lines = vec![header.join(",")];
    lines.extend(rows.into_iter().map(|r| r.join(",")));
    lines.join("\n")
}

fn parse_f64(text: &str) -> Result<f64> {
    Ok(to_f64(&parse_scalar(text)?))
}

/// A comma separated list, or `ones` for `1, 1, ...` up to `order`.
fn weight_list(text: &str, order: usize) -> Result<Vec<ExactScalar>> {
    if text.trim() == "ones" {
        Ok(vec![int(1); order])
    } else {
        parse_scalar_list(text)
    }
}

fn model_from_lists(l: &str, v: &str, order: usize) -> Result<ModelSpec> {
    ModelSpec::from_finite(&weight_list(l, order)?, &weight_list(v, order)?, order)
}

fn sequence(family: Family, n: usize, args: SequenceArgs) -> Result<Vec<ExactScalar>> {
    Ok(match family {
        Family::Stirling2 => match args.k {
            Some(k) => (0..=n).map(|j| if k > j { Ok(int(0)) } else { stirling2(j, k) }).collect::<Result<_>>()?,
            None => (0..=n).map(|k| stirling2(n, k)).collect::<Result<_>>()?,
        },
        Family::Bell => bell_numbers(n).into_iter().map(from_bigint).collect(),
        Family::BellPoly => {
            let u = parse_scalar(&args.u)?;
            (0..=n).map(|j| bell_polynomial(j, &u)).collect()
        }
        Family::Mbell => {
            let k = args
                .k
                .ok_or_else(|| Error::InvalidArgument("mbell needs --k".into()))?;
            let g = parse_scalar_list(&args.g)?;
            (0..=n).map(|j| multivariate_bell(j, k, &g)).collect::<Result<_>>()?
        }
        Family::Hkdf => {
            let (g1, gm) = (parse_scalar(&args.g1)?, parse_scalar(&args.gm)?);
            (0..=n).map(|j| hermite_kdf(j, args.m, &g1, &gm)).collect::<Result<_>>()?
        }
        Family::HermiteMod => modified_hermite_list(n, &parse_scalar(&args.x)?),
        Family::Involution => (0..=n).map(|j| from_bigint(involution(j))).collect(),
    })
}

struct SequenceArgs {
    k: Option<usize>,
    u: String,
    x: String,
    g: String,
    m: usize,
    g1: String,
    gm: String,
}

fn indexed_csv(header: &[&str], columns: &[&[ExactScalar]]) -> String {
    let len = columns.iter().map(|c| c.len()).min().unwrap_or(0);
    csv(
        header,
        (0..len).map(|n| {
            let mut row = vec![n.to_string()];
            row.extend(columns.iter().map(|c| c[n].to_string()));
            row
        }),
    )
}

fn execute(command: Command) -> Result<(String, i32)> {
    let text = match command {
        Command::Sequence { family, n, k, u, x, g, m, g1, gm } => {
            let values = sequence(family, n, SequenceArgs { k, u, x, g, m, g1, gm })?;
            to_json(&to_strings(&values))?
        }
        Command::NormalOrder { expr, exp, order } => {
            let nf = parse_operator(&expr)?;
            if exp {
                let series = power_series(&nf, order);
                let vertices = extract_vertices_of(&nf, order)?;
                to_json(&json!({
                    "normal_form": nf,
                    "exp": series,
                    "vertices": vertices.coeffs[1..],
                }))?
            } else {
                to_json(&nf)?
            }
        }
        Command::Count { l, v, order, emit } => {
            let result = count(&model_from_lists(&l, &v, order)?, order)?;
            match emit {
                Emit::Json => to_json(&result)?,
                Emit::Csv => indexed_csv(&["n", "A", "yL", "yV"], &[&result.a, &result.y_l, &result.y_v]),
            }
        }
        Command::Kerr { m, order, emit } => {
            let a = kerr_sequence(m, order)?;
            match emit {
                Emit::Json => to_json(&to_strings(&a))?,
                Emit::Csv => indexed_csv(&["n", "A"], &[&a]),
            }
        }
        Command::Zclosed { which, order } => {
            let (closed, series) = match which {
                2 => (z2_closed(order), z2_series(order)),
                3 => (z3_closed(order), z3_series(order)),
                _ => return Err(Error::InvalidArgument(format!("--which must be 2 or 3, got {which}"))),
            };
            to_json(&json!({
                "closed": closed,
                "series": series,
                "agree": closed == series,
            }))?
        }
        Command::Integrand { m, beta, lambda, zsq, terms, coefficient } => {
            let (beta_q, zsq_q) = (parse_scalar(&beta)?, parse_scalar(&zsq)?);
            let value = partition_integrand(m, to_f64(&beta_q), parse_f64(&lambda)?, to_f64(&zsq_q), terms)?;
            match coefficient {
                None => to_json(&value)?,
                Some(n) => {
                    let (lhs, rhs) = integrand_coefficient_identity(m, &beta_q, n, &zsq_q)?;
                    to_json(&json!({
                        "integrand": value,
                        "coefficient": { "n": n, "lhs": lhs.to_string(), "rhs": rhs.to_string() },
                    }))?
                }
            }
        }
        Command::Graphs { n, model, l, v, emit } => {
            let order = n.max(1);
            let model = match model {
                GraphModel::Kerr2 => ModelSpec::kerr(2, order),
                GraphModel::Sf2 => ModelSpec::superfluidity(order),
                GraphModel::Custom => {
                    let missing = || Error::InvalidArgument("custom model needs --L and --V".into());
                    model_from_lists(&l.ok_or_else(missing)?, &v.ok_or_else(missing)?, order)?
                }
            };
            match emit {
                GraphEmit::Total => to_json(&json!({ "n": n, "total": weighted_total(n, &model)?.to_string() }))?,
                GraphEmit::Classes => to_pretty(&classes(n, &model)?)?,
                GraphEmit::Text => classes(n, &model)?
                    .iter()
                    .map(|c| format!("x{} weight {}: {}", c.multiplicity, c.weight, c.signature))
                    .collect::<Vec<_>>()
                    .join("\n"),
            }
        }
        Command::Phi4 { a, g, nmax, emit } => {
            let report = phi4_series(a, g, nmax)?;
            match emit {
                Emit::Json => to_json(&report)?,
                Emit::Csv => csv(
                    &["n", "term", "partial_sum"],
                    report
                        .terms
                        .iter()
                        .zip(&report.partial_sums)
                        .enumerate()
                        .map(|(n, (t, s))| vec![n.to_string(), format!("{t:e}"), format!("{s:e}")]),
                ),
            }
        }
        Command::BellAsym { n } => {
            let ln_estimate = bell_asymptotic_ln(n)?;
            let exact = from_bigint(bell_numbers(n).pop().unwrap_or_default());
            let ln_exact = to_f64(&exact).ln();
            to_json(&json!({
                "n": n,
                "estimate": ln_estimate.exp(),
                "exact": exact.to_string(),
                "ratio": (ln_estimate - ln_exact).exp(),
                "log_ratio": ln_estimate / ln_exact,
            }))?
        }
        Command::Diverge { model, order, emit } => {
            let ratios = match model {
                DivergeModel::Kerr2 => divergence_ratio_exact(&kerr_sequence(2, order)?)?,
                DivergeModel::Kerr3 => divergence_ratio_exact(&kerr_sequence(3, order)?)?,
                DivergeModel::Exp => divergence_ratio_exact(&vec![ExactScalar::one(); order + 1])?,
                DivergeModel::Sf2 => {
                    let a = z2_closed(2 * order).into_coeffs();
                    even_series_ratio(&a.into_iter().step_by(2).collect::<Vec<_>>())?
                }
            };
            let floats: Vec<f64> = ratios.iter().map(to_f64).collect();
            match emit {
                Emit::Json => to_json(&floats)?,
                Emit::Csv => csv(
                    &["n", "ratio"],
                    floats.iter().enumerate().map(|(n, r)| vec![n.to_string(), format!("{r:e}")]),
                ),
            }
        }
        Command::Verify { scope, timings } => {
            let report = verify::run(scope.parse::<Scope>()?, timings);
            let code = if report.overall == Status::Pass { 0 } else { 1 };
            return Ok((to_pretty(&report)?, code));
        }
    };
    Ok((text, 0))
}
