//! Stirling and Bell numbers, partial Bell polynomials and their inverse,
//! and the Hermite-type polynomials built from them.

use combfield::combinatorics::{
    bell_inverse, complete_bell, hermite_kdf, involution, modified_hermite_list, multivariate_bell, stirling2_table,
};
use combfield::scalar::{int, ratio};
use combfield::Result;

fn main() -> Result<()> {
    for (n, row) in stirling2_table(6).iter().enumerate() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("S({n}, .) = {}", cells.join(" "));
    }

    let g = vec![int(1), ratio(1, 2), int(-2), ratio(3, 4), int(5)];
    println!("B_(5,2)(g) = {}", multivariate_bell(5, 2, &g)?);
    let y: Vec<_> = (1..=5).map(|n| complete_bell(n, &g)).collect::<Result<_>>()?;
    let back = bell_inverse(&y);
    println!("Y_n(g) = {:?}", y.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("inverse recovers g: {}", back == g);

    let hkdf: Vec<String> = (0..=8).map(|n| hermite_kdf(n, 2, &int(1), &int(1)).map(|v| v.to_string())).collect::<Result<_>>()?;
    let inv: Vec<String> = (0..=8).map(|n| involution(n).to_string()).collect();
    println!("H_n^(2)(1,1) = {}", hkdf.join(" "));
    println!("involutions  = {}", inv.join(" "));
    let h: Vec<String> = modified_hermite_list(8, &int(2)).iter().map(ToString::to_string).collect();
    println!("h_n(2)       = {}", h.join(" "));
    Ok(())
}
