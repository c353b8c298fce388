// Exhaustive check of the alternating subset-parity identity and the
// integer XOR extension it rests on.

use std::error::Error;

use mcu_synth::z2identity::{
    closed_form, f_direct, f_recurrent, tilde_oplus, verify_lemma1, verify_prop_a, verify_prop_b,
    BitVector, DEFAULT_EXHAUSTIVE_LIMIT,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let xs = BitVector::from_values(&[1, 1, 0, 1])?;
    println!(
        "F({xs}) direct={} recurrent={} closed={}",
        f_direct(&xs)?,
        f_recurrent(&xs)?,
        closed_form(&xs)?
    );
    let ones = BitVector::from_values(&[1, 1, 1, 1])?;
    println!("F({ones}) = {}", f_direct(&ones)?);
    println!("3 ⊕̃ 5 = {}", tilde_oplus(3, 5)?);

    for n in 1..=8 {
        println!("{}", verify_prop_a(n, DEFAULT_EXHAUSTIVE_LIMIT)?);
        println!("{}", verify_prop_b(n, DEFAULT_EXHAUSTIVE_LIMIT)?);
    }
    println!("{}", verify_lemma1(-4..=4)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
