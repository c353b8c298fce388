use mcu_synth::Unitary2;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sample(seed: u64) -> Unitary2 {
    Unitary2::random(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// `u^(2^k)` by `k` explicit squarings, independent of `power`.
fn square_k_times(u: &Unitary2, k: u32) -> Unitary2 {
    (0..k).fold(*u, |acc, _| acc.multiply(&acc))
}

#[test]
fn random_samples_are_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let u = Unitary2::random(&mut rng);
        assert!(u.unitarity_deviation() < 1e-13);
        assert!((u.det().norm() - 1.0).abs() < 1e-13);
    }
}

#[test]
fn roots_of_named_gates() {
    for u in [
        Unitary2::pauli_x(),
        Unitary2::pauli_y(),
        Unitary2::pauli_z(),
        Unitary2::hadamard(),
        Unitary2::phase_s(),
        Unitary2::phase_t(),
        Unitary2::global_phase(2.0),
    ] {
        for k in 0..=8 {
            let v = u.unitary_root(k);
            assert!(v.unitarity_deviation() < 1e-12, "{u:?} k={k}");
            assert!(square_k_times(&v, k).distance(&u) < 1e-11, "{u:?} k={k}");
        }
    }
}

#[test]
fn root_eigenphases_are_scaled_principal_phases() {
    let u = sample(17);
    let (t1, t2) = u.eigenphases();
    for k in 1..=6 {
        let (r1, r2) = u.unitary_root(k).eigenphases();
        let s = 0.5f64.powi(k as i32);
        assert!((r1 - t1 * s).abs() < 1e-12);
        assert!((r2 - t2 * s).abs() < 1e-12);
    }
}

#[test]
fn rejects_scaled_unitary() {
    let two = Complex64::new(2.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    assert!(Unitary2::new([[two, zero], [zero, two]]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn root_power_round_trip(seed in any::<u64>(), k in 1u32..=6) {
        let u = sample(seed);
        let v = u.unitary_root(k);
        prop_assert!(v.unitarity_deviation() < 1e-12);
        prop_assert!(v.power(1 << k).distance(&u) < 1e-11);
    }

    #[test]
    fn dagger_is_involution(seed in any::<u64>()) {
        let u = sample(seed);
        prop_assert_eq!(u.dagger().dagger(), u);
        prop_assert!(u.multiply(&u.dagger()).distance(&Unitary2::identity()) < 1e-12);
    }

    #[test]
    fn multiply_associative(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (sample(a), sample(b), sample(c));
        prop_assert!((a * b * c).distance(&(a * (b * c))) < 1e-12);
    }

    #[test]
    fn power_matches_repeated_multiply(seed in any::<u64>(), e in -20i64..=20) {
        let u = sample(seed);
        let step = if e < 0 { u.dagger() } else { u };
        let naive = (0..e.unsigned_abs()).fold(Unitary2::identity(), |acc, _| acc * step);
        prop_assert!(u.power(e).distance(&naive) < 1e-12);
    }
}
