//! Normal ordering of boson words, the exponential of an operator and its
//! vertex functions. `A` stands for the creation operator a†.

use combfield::normal_order::{apply_word_to_fock, extract_vertices, extract_vertices_of, normal_order_word, parse_operator, BosonWord};
use combfield::Result;
use num_traits::Zero;

fn main() -> Result<()> {
    let number: BosonWord = "Aa".parse()?;
    for n in 1..=4 {
        println!("N[(a†a)^{n}] = {}", normal_order_word(&number.pow(n)));
    }

    let word: BosonWord = "aaAAa".parse()?;
    println!("N[{word}] = {}", normal_order_word(&word));
    let image = apply_word_to_fock(&word, 2, 6)?;
    for (k, amp) in image.normalized_amplitudes().iter().enumerate() {
        if !amp.coeff.is_zero() {
            println!("  {word} |2> has {} sqrt({}) |{k}>", amp.coeff, amp.radicand);
        }
    }

    let vertices = extract_vertices(&"AAa".parse()?, 4)?;
    for (n, v) in vertices.coeffs.iter().enumerate().skip(1) {
        println!("V_{n} of a†a†a = {v}");
    }
    let field = parse_operator("a + A")?;
    let vertices = extract_vertices_of(&field, 4)?;
    for (n, v) in vertices.coeffs.iter().enumerate().skip(1) {
        println!("V_{n} of a + a† = {v}");
    }
    Ok(())
}
