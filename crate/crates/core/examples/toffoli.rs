// Five-gate Toffoli from controlled square roots of X.

use std::error::Error;

use mcu_synth::sim::{circuit_unitary, operator_distance, reference_mcu};
use mcu_synth::synth::synth_ccu;
use mcu_synth::Unitary2;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let x = Unitary2::pauli_x();
    let c = synth_ccu(&x);
    for g in c.gates() {
        println!("{g}");
    }
    println!("{}", c.gate_count());

    let m = circuit_unitary(&c)?;
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim())
            .map(|j| format!("{:.0}", m.get(i, j).re))
            .collect();
        println!("{}", row.join(" "));
    }
    println!(
        "distance to CCX: {:.1e}",
        operator_distance(&m, &reference_mcu(2, &x))?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
