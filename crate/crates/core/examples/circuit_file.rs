// Writes a circuit in the line-oriented text format, parses it back and
// simulates a basis input.

use std::error::Error;

use mcu_synth::format::{parse_circuit, write_circuit};
use mcu_synth::sim::{run, StateVector};
use mcu_synth::synth::synth_general;
use mcu_synth::Unitary2;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let c = synth_general(2, &Unitary2::hadamard())?;
    let text = write_circuit(&c);
    print!("{text}");
    let parsed = parse_circuit(&text)?;
    assert_eq!(parsed, c);

    let mut s = StateVector::from_bits("110")?;
    run(&parsed, &mut s)?;
    for (i, a) in s.amplitudes().iter().enumerate() {
        if a.norm() > 1e-12 {
            println!("{}: {a:.6}", s.basis_label(i));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
