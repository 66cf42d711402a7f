//! The counting formula A_n = Y_n[L] Y_n[V] and the closed forms of the
//! superfluidity-type generating functions.

use combfield::counting::{count, integrand_coefficient_identity, kerr_sequence, partition_integrand, z2_closed, z2_series, z3_closed, z3_series, ModelSpec};
use combfield::scalar::ratio;
use combfield::Result;

fn main() -> Result<()> {
    for m in 2..=4 {
        let a: Vec<String> = kerr_sequence(m, 8)?.iter().map(ToString::to_string).collect();
        println!("Kerr M={m}: {}", a.join(", "));
    }

    let sf = count(&ModelSpec::superfluidity(12), 12)?;
    let even: Vec<String> = sf.a.iter().step_by(2).map(ToString::to_string).collect();
    println!("superfluidity A_2n: {}", even.join(", "));

    println!("Doetsch closed form matches: {}", z2_closed(14) == z2_series(14));
    println!("Z_3 closed form matches:     {}", z3_closed(15) == z3_series(15));

    let value = partition_integrand(2, 1.0, 0.1, 1.0, 60)?;
    println!("integrand at beta=1, lambda=0.1, |z|^2=1: {:.12} (tail < {:.1e})", value.value, value.tail_bound);
    for n in 0..=4 {
        let (lhs, rhs) = integrand_coefficient_identity(3, &ratio(1, 2), n, &ratio(3, 2))?;
        println!("  lambda^{n}/{n}! coefficient: {lhs} = {rhs}");
    }
    Ok(())
}
