// Counts how many times the root gate reaches the target on each classical
// control setting, and compares with the subset-parity sum.

use std::error::Error;

use mcu_synth::synth::{exponent_trace, synth_general};
use mcu_synth::z2identity::f_direct;
use mcu_synth::{BitVector, Unitary2};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let n = 3;
    let c = synth_general(n, &Unitary2::pauli_x())?;
    for a in 0..1u64 << n {
        let xs = BitVector::from_index(n, a)?;
        let e = exponent_trace(&c, &xs, n)?;
        println!("{xs}: V^{e} (F = {})", f_direct(&xs)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
