//! Exponential generating functions over exact rationals.

use combfield::scalar::{int, ratio};
use combfield::{EgfSeries, Result};

fn main() -> Result<()> {
    let order = 8;
    // e^x - 1: all coefficients 1 except the constant
    let inner = EgfSeries::from_fn(order, |n| if n == 0 { int(0) } else { int(1) });
    println!("exp(e^x - 1)       -> Bell numbers {}", show(&inner.exp()?));
    println!("log(exp(e^x - 1))  -> {}", show(&inner.exp()?.log()?));

    // compose exp(y) with y = e^x - 1 instead of exponentiating
    let outer = EgfSeries::from_fn(order, |_| int(1));
    println!("exp composed       -> {}", show(&outer.compose(&inner)?));

    // Hadamard product: termwise product of EGF coefficients
    let two_pow = EgfSeries::from_fn(order, |n| int(1 << n));
    println!("hadamard with 2^n  -> {}", show(&inner.hadamard(&two_pow)));

    let sqrt = EgfSeries::one(order).sub(&EgfSeries::identity(order)).pow(&ratio(-1, 2))?;
    println!("(1 - x)^(-1/2)     -> {}", show(&sqrt));
    Ok(())
}

fn show(s: &EgfSeries) -> String {
    s.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
