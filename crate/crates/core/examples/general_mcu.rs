// Gate-count growth of the parity-block construction, with a numerical
// check against the direct definition for small widths.

use std::error::Error;

use mcu_synth::sim::{circuit_unitary, operator_distance, reference_mcu, run, StateVector};
use mcu_synth::synth::{expected_counts, synth_general};
use mcu_synth::Unitary2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let u = Unitary2::random(&mut rng);
    println!(" n  cv-kind  cnot  total  check");
    for n in 1..=8 {
        let c = synth_general(n, &u)?;
        let counts = c.gate_count();
        let (v_kind, cnot) = expected_counts(n);
        assert_eq!((counts.v_kind() as u64, counts.cnot as u64), (v_kind, cnot));
        let check = if n <= 5 {
            let d = operator_distance(&circuit_unitary(&c)?, &reference_mcu(n, &u))?;
            format!("operator {d:.1e}")
        } else {
            let s = StateVector::random(n + 1, &mut rng)?;
            let mut got = s.clone();
            run(&c, &mut got)?;
            let d = got.distance(&reference_mcu(n, &u).apply(&s)?)?;
            format!("state {d:.1e}")
        };
        println!(
            "{n:>2}  {:>7}  {:>4}  {:>5}  {check}",
            counts.v_kind(),
            counts.cnot,
            counts.total
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
