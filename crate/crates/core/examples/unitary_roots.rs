// Principal 2^k-th roots of single-qubit gates.

use std::error::Error;

use mcu_synth::Unitary2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let sqrt_x = Unitary2::pauli_x().unitary_root(1);
    for row in sqrt_x.entries() {
        println!("sqrt(X) row: {:.6}  {:.6}", row[0], row[1]);
    }
    println!(
        "sqrt(Z) vs S: {:.1e}",
        Unitary2::pauli_z()
            .unitary_root(1)
            .distance(&Unitary2::phase_s())
    );

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let u = Unitary2::random(&mut rng);
    let (t1, t2) = u.eigenphases();
    println!("random U eigenphases: {t1:.6} {t2:.6}");
    for k in 1..=6 {
        let v = u.unitary_root(k);
        println!(
            "k={k}: |V^(2^k) - U| = {:.1e}, |VV† - I| = {:.1e}",
            v.power(1 << k).distance(&u),
            v.unitarity_deviation()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
