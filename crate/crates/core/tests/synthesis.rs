use mcu_synth::sim::{
    circuit_unitary, operator_distance, reference_mcu, run, DenseOperator, StateVector,
};
use mcu_synth::synth::{
    exponent_trace, peephole_cancel, synth_cccu, synth_ccu, synth_cu, synth_general,
};
use mcu_synth::z2identity::f_direct;
use mcu_synth::{BitVector, Circuit, Gate, Unitary2};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Entry `(i, j)` of the `n`-controlled `u`, evaluated pointwise.
fn mcu_entry(n: usize, u: &Unitary2, i: usize, j: usize) -> Complex64 {
    let controls_on = |b: usize| b >> 1 == (1 << n) - 1;
    if controls_on(i) && controls_on(j) {
        u.get(i & 1, j & 1)
    } else if i == j {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

fn arbitrary_circuit(width: usize, gates: &[(u8, usize, usize)]) -> Circuit {
    let mut c = Circuit::new(width).unwrap();
    for &(k, a, b) in gates {
        let (a, b) = (a % width, b % width);
        if a == b {
            continue;
        }
        let g = match k % 3 {
            0 => Gate::cnot(a, b),
            1 => Gate::cv(a, b),
            _ => Gate::cvdg(a, b),
        };
        c.append(g).unwrap();
    }
    c
}

#[test]
fn reference_matches_pointwise_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=5 {
        let u = Unitary2::random(&mut rng);
        let r = reference_mcu(n, &u);
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                assert_eq!(r.get(i, j), mcu_entry(n, &u, i, j));
            }
        }
        assert!(r.unitarity_deviation() < 1e-12);
        assert!(r.off_identity_entries(0.0) <= 4);
    }
}

#[test]
fn cu_with_x_is_cnot() {
    let got = circuit_unitary(&synth_cu(&Unitary2::pauli_x())).unwrap();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let cnot = DenseOperator::from_rows(&[
        vec![one, zero, zero, zero],
        vec![zero, one, zero, zero],
        vec![zero, zero, zero, one],
        vec![zero, zero, one, zero],
    ])
    .unwrap();
    assert_eq!(got, cnot);
    assert_eq!(
        circuit_unitary(&synth_cu(&Unitary2::identity())).unwrap(),
        DenseOperator::identity(2)
    );
}

#[test]
fn named_small_cases() {
    let x = Unitary2::pauli_x();
    let ccx = circuit_unitary(&synth_ccu(&x)).unwrap();
    assert!(operator_distance(&ccx, &reference_mcu(2, &x)).unwrap() < 1e-12);
    let id3 = circuit_unitary(&synth_ccu(&Unitary2::identity())).unwrap();
    assert!(operator_distance(&id3, &DenseOperator::identity(3)).unwrap() < 1e-12);

    let cccx = circuit_unitary(&synth_cccu(&x)).unwrap();
    assert!(operator_distance(&cccx, &reference_mcu(3, &x)).unwrap() < 1e-12);
    // |1110⟩ ↔ |1111⟩
    assert!((cccx.get(14, 15) - 1.0).norm() < 1e-12);
    assert!((cccx.get(15, 14) - 1.0).norm() < 1e-12);
    let id4 = circuit_unitary(&synth_cccu(&Unitary2::identity())).unwrap();
    assert!(operator_distance(&id4, &DenseOperator::identity(4)).unwrap() < 1e-12);
    assert_eq!(synth_cccu(&x).gate_count().total, 17);
}

#[test]
fn random_unitaries_up_to_five_controls() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=5 {
        for _ in 0..5 {
            let u = Unitary2::random(&mut rng);
            let c = synth_general(n, &u).unwrap();
            let d =
                operator_distance(&circuit_unitary(&c).unwrap(), &reference_mcu(n, &u)).unwrap();
            assert!(d < 1e-9, "n={n} d={d:e}");
        }
    }
}

#[test]
fn ccu_equals_general_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let u = Unitary2::random(&mut rng);
        let a = synth_ccu(&u);
        let b = synth_general(2, &u).unwrap();
        assert_eq!(a.gates(), b.gates());
        let d = operator_distance(&circuit_unitary(&a).unwrap(), &circuit_unitary(&b).unwrap())
            .unwrap();
        assert!(d < 1e-12);
    }
}

#[test]
fn trace_equals_f_direct_up_to_six() {
    for n in 1..=6 {
        let c = synth_general(n, &Unitary2::pauli_x()).unwrap();
        for a in 0..1u64 << n {
            let xs = BitVector::from_index(n, a).unwrap();
            assert_eq!(exponent_trace(&c, &xs, n).unwrap(), f_direct(&xs).unwrap());
        }
    }
}

#[test]
fn apply_gate_agrees_with_matrix_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let v = Unitary2::random(&mut rng);
    for g in [
        Gate::cnot(0, 2),
        Gate::cnot(2, 1),
        Gate::cv(1, 0),
        Gate::cvdg(0, 2),
    ] {
        let mut c = Circuit::new(3).unwrap().with_binding(v);
        c.append(g).unwrap();
        let m = circuit_unitary(&c).unwrap();
        for j in 0..8 {
            let basis = StateVector::basis(3, j).unwrap();
            let by_matrix = m.apply(&basis).unwrap();
            let mut by_gate = basis.clone();
            by_gate.apply_gate(&g, Some(&v)).unwrap();
            if g.kind == mcu_synth::GateKind::Cnot {
                assert_eq!(by_matrix, by_gate);
            } else {
                assert!(by_matrix.distance(&by_gate).unwrap() < 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_preserved(seed in any::<u64>(), kind in 0u8..3, a in 0usize..4, b in 0usize..4) {
        prop_assume!(a != b);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = Unitary2::random(&mut rng);
        let mut s = StateVector::random(4, &mut rng).unwrap();
        let g = match kind { 0 => Gate::cnot(a, b), 1 => Gate::cv(a, b), _ => Gate::cvdg(a, b) };
        s.apply_gate(&g, Some(&v)).unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circuit_then_inverse_is_identity(
        seed in any::<u64>(),
        gates in prop::collection::vec((0u8..3, 0usize..4, 0usize..4), 0..30),
    ) {
        let v = Unitary2::random(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = arbitrary_circuit(4, &gates).with_binding(v);
        let inv = c.invert();
        prop_assert_eq!(inv.invert(), c.clone());
        let counts = (c.gate_count(), inv.gate_count());
        prop_assert_eq!(counts.0.total, counts.1.total);
        prop_assert_eq!((counts.0.cv, counts.0.cvdg), (counts.1.cvdg, counts.1.cv));
        let p = circuit_unitary(&c).unwrap().multiply(&circuit_unitary(&inv).unwrap()).unwrap();
        prop_assert!(operator_distance(&p, &DenseOperator::identity(4)).unwrap() < 1e-10);
        prop_assert!(circuit_unitary(&c).unwrap().unitarity_deviation() < 1e-10);
    }

    #[test]
    fn peephole_idempotent_and_safe(
        seed in any::<u64>(),
        gates in prop::collection::vec((0u8..3, 0usize..3, 0usize..3), 0..40),
    ) {
        let v = Unitary2::random(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = arbitrary_circuit(3, &gates).with_binding(v);
        let once = peephole_cancel(&c);
        prop_assert_eq!(peephole_cancel(&once), once.clone());
        prop_assert!(once.len() <= c.len());
        let d = operator_distance(&circuit_unitary(&c).unwrap(), &circuit_unitary(&once).unwrap()).unwrap();
        prop_assert!(d < 1e-12);
        // no adjacent inverse pair survives
        prop_assert!(once.gates().windows(2).all(|w| !w[0].is_inverse_of(&w[1])));
    }

    #[test]
    fn state_route_matches_reference(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = Unitary2::random(&mut rng);
        let c = synth_general(n, &u).unwrap();
        let s = StateVector::random(n + 1, &mut rng).unwrap();
        let mut got = s.clone();
        run(&c, &mut got).unwrap();
        let want = reference_mcu(n, &u).apply(&s).unwrap();
        prop_assert!(got.distance(&want).unwrap() < 1e-9);
    }
}
