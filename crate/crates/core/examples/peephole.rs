// Adjacent inverse-pair cancellation on synthesized circuits.

use std::error::Error;

use mcu_synth::sim::{circuit_unitary, operator_distance};
use mcu_synth::synth::{peephole_cancel, synth_general};
use mcu_synth::Unitary2;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let h = Unitary2::hadamard();
    for n in 2..=6 {
        let c = synth_general(n, &h)?;
        let p = peephole_cancel(&c);
        let d = operator_distance(&circuit_unitary(&c)?, &circuit_unitary(&p)?)?;
        println!(
            "n={n}: {} -> {} gates, operator change {d:.1e}",
            c.len(),
            p.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
