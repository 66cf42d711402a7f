//! Line-labelled graphs as pairs of set partitions: enumeration, weighted
//! totals and the isomorphism classes with their multiplicities.

use combfield::counting::{count, ModelSpec};
use combfield::diagrams::{classes, enumerate, weighted_total};
use combfield::Result;
use num_traits::Zero;

fn main() -> Result<()> {
    for n in 1..=4 {
        println!("{n} lines: {} labelled graphs", enumerate(n)?.count());
    }

    let kerr = ModelSpec::kerr(2, 6);
    let a = count(&kerr, 6)?.a;
    for n in 1..=6 {
        println!("Kerr n={n}: weighted total {} vs formula {}", weighted_total(n, &kerr)?, a[n]);
    }

    let sf = ModelSpec::superfluidity(4);
    println!("superfluidity graphs with 4 lines:");
    for class in classes(4, &sf)?.iter().filter(|c| !c.weight.is_zero()) {
        println!("  x{:<3} weight {:<2} {}", class.multiplicity, class.weight, class.signature);
    }
    Ok(())
}
