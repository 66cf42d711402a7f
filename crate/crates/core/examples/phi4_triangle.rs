//! The zero-dimensional phi^4 integral three ways: quadrature, the Bessel
//! closed form and the divergent weak-coupling series.

use combfield::numerics::{bell_asymptotic, divergence_ratio_exact, macdonald_closed, phi4_integral, phi4_series};
use combfield::counting::kerr_sequence;
use combfield::scalar::to_f64;
use combfield::Result;

fn main() -> Result<()> {
    for g in [0.1, 0.5, 1.0] {
        let quad = phi4_integral(1.0, g)?;
        let closed = macdonald_closed(1.0, g)?;
        println!("g={g}: integral {quad:.12}  closed form {closed:.12}");
    }

    let report = phi4_series(1.0, 0.1, 100)?;
    println!(
        "series at g=0.1: smallest term at n={} ({:.2e}), truncated sum {:.15}",
        report.optimal_index, report.first_omitted, report.optimal_sum
    );
    for n in [0, 1, 2, 5, 10, 40, 60, 80, 100] {
        println!("  partial sum to n={n:<3} {:.15}", report.partial_sums[n]);
    }

    for n in [10, 20, 50] {
        println!("B_{n} estimate {:.6e}", bell_asymptotic(n)?);
    }
    let ratios = divergence_ratio_exact(&kerr_sequence(2, 20)?)?;
    let shown: Vec<String> = ratios.iter().map(|r| format!("{:.3}", to_f64(r))).collect();
    println!("Kerr d'Alembert ratios: {}", shown.join(" "));
    Ok(())
}
