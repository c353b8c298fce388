//! Multi-controlled `U` from CNOT and controlled-`V` gates.
//!
//! With `V^(2^(n−1)) = U`, applying `V^(±1)` controlled on the parity of
//! every nonempty subset of the controls (sign `+` for odd subsets, `−` for
//! even) raises `V` to `F_n(x) = 2^(n−1)·x_1⋯x_n` on the target, which is
//! `U^(x_1⋯x_n)`. Each subset's parity is folded onto its last wire by a CNOT
//! chain, used as the control of one `C-V^(±1)`, and uncomputed.

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, GateKind};
use crate::sim::{self, SimError};
use crate::unitary2::Unitary2;
use crate::z2identity::{canonical_subsets, BitVector, SignedParityTerm};

/// Largest control count [`synth_general`] accepts. Beyond this the gate
/// count (`≈ n·2^n`) is no longer a desk-scale object.
pub const MAX_CONTROLS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("at least one control is required")]
    NoControls,
    #[error("{n} controls exceeds the synthesis bound {max}")]
    TooManyControls { n: usize, max: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("gate {0} cannot be traced classically")]
    NotClassical(Gate),
    #[error("assignment has {got} bits, circuit has {expected} controls")]
    AssignmentWidth { got: usize, expected: usize },
    #[error("{n} controls is beyond the dense verification bound of {max}")]
    VerifyBound { n: usize, max: usize },
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Everything the general construction needs before gates are emitted.
#[derive(Debug, Clone)]
pub struct SynthesisPlan {
    pub n_controls: usize,
    pub target_u: Unitary2,
    pub v: Unitary2,
    pub blocks: Vec<SignedParityTerm>,
}

impl SynthesisPlan {
    pub fn new(n: usize, u: &Unitary2) -> Result<SynthesisPlan, SynthError> {
        if n == 0 {
            return Err(SynthError::NoControls);
        }
        if n > MAX_CONTROLS {
            return Err(SynthError::TooManyControls {
                n,
                max: MAX_CONTROLS,
            });
        }
        Ok(SynthesisPlan {
            n_controls: n,
            target_u: *u,
            v: u.unitary_root((n - 1) as u32),
            blocks: canonical_subsets(n),
        })
    }

    pub fn target_wire(&self) -> usize {
        self.n_controls
    }

    /// Gates for one parity block.
    pub fn block_gates(&self, term: &SignedParityTerm) -> Vec<Gate> {
        let target = self.target_wire();
        let s = term.subset();
        let last = *s.last().expect("nonempty subset");
        let chain: Vec<Gate> = s.windows(2).map(|w| Gate::cnot(w[0], w[1])).collect();
        let apply = if term.sign() > 0 {
            Gate::cv(last, target)
        } else {
            Gate::cvdg(last, target)
        };
        let mut gates = chain.clone();
        gates.push(apply);
        gates.extend(chain.into_iter().rev());
        gates
    }

    pub fn build(&self) -> Result<Circuit, SynthError> {
        let mut c = Circuit::new(self.n_controls + 1)?.with_binding(self.v);
        for term in &self.blocks {
            c.extend(self.block_gates(term))?;
        }
        Ok(c)
    }
}

/// Controlled-`U`: one `C-V` with `V = U`.
pub fn synth_cu(u: &Unitary2) -> Circuit {
    let mut c = Circuit::new(2).expect("width 2").with_binding(*u);
    c.append(Gate::cv(0, 1)).expect("valid gate");
    c
}

/// Controlled-controlled-`U` with `V² = U`, in the textbook five-gate order.
pub fn synth_ccu(u: &Unitary2) -> Circuit {
    let mut c = Circuit::new(3)
        .expect("width 3")
        .with_binding(u.unitary_root(1));
    c.extend([
        Gate::cv(0, 2),
        Gate::cv(1, 2),
        Gate::cnot(0, 1),
        Gate::cvdg(1, 2),
        Gate::cnot(0, 1),
    ])
    .expect("valid gates");
    c
}

/// Three-controlled `U` with `V⁴ = U`; the general construction at `n = 3`.
pub fn synth_cccu(u: &Unitary2) -> Circuit {
    synth_general(3, u).expect("n = 3 is in range")
}

/// `n`-controlled `U` on `n + 1` wires: controls `0..n`, target `n`.
pub fn synth_general(n: usize, u: &Unitary2) -> Result<Circuit, SynthError> {
    SynthesisPlan::new(n, u)?.build()
}

/// [`synth_general`] followed by a dense comparison against
/// [`sim::reference_mcu`]. Returns the circuit and the max-entry distance.
pub fn synth_verified(n: usize, u: &Unitary2) -> Result<(Circuit, f64), SynthError> {
    let max = sim::DEFAULT_MAX_WIDTH - 1;
    if n > max {
        return Err(SynthError::VerifyBound { n, max });
    }
    let c = synth_general(n, u)?;
    let d = sim::operator_distance(&sim::circuit_unitary(&c)?, &sim::reference_mcu(n, u))?;
    Ok((c, d))
}

/// Exact gate counts of [`synth_general`]: `(cv-kind, cnot)`.
pub fn expected_counts(n: usize) -> (u64, u64) {
    let n = n as u64;
    let v_kind = (1u64 << n) - 1;
    let cnot = 2 * (n * (1u64 << (n - 1)) - v_kind);
    (v_kind, cnot)
}

/// Removes adjacent mutually inverse gate pairs until none remain.
///
/// A single stack pass reaches the fixpoint: a gate either cancels the
/// current top or is pushed.
pub fn peephole_cancel(circuit: &Circuit) -> Circuit {
    let mut kept: Vec<Gate> = Vec::with_capacity(circuit.len());
    for &g in circuit.gates() {
        match kept.last() {
            Some(top) if top.is_inverse_of(&g) => {
                kept.pop();
            }
            _ => kept.push(g),
        }
    }
    circuit.with_gates(kept)
}

/// Net power of `V` applied to `target` when the circuit runs on the
/// classical input `controls` (target wire excluded).
///
/// Tracks wire values as bits: CNOTs must not touch `target`, and every
/// controlled-`V` must act on `target`.
pub fn exponent_trace(
    circuit: &Circuit,
    controls: &BitVector,
    target: usize,
) -> Result<i64, SynthError> {
    let expected = circuit.width() - 1;
    if controls.len() != expected || target >= circuit.width() {
        return Err(SynthError::AssignmentWidth {
            got: controls.len(),
            expected,
        });
    }
    let mut wires: Vec<bool> = Vec::with_capacity(circuit.width());
    let mut it = controls.bits().iter();
    for w in 0..circuit.width() {
        wires.push(w != target && it.next().is_some_and(|b| b.is_one()));
    }
    let mut exponent = 0i64;
    for &g in circuit.gates() {
        match g.kind {
            GateKind::Cnot => {
                if g.target == target || g.control == target {
                    return Err(SynthError::NotClassical(g));
                }
                wires[g.target] ^= wires[g.control];
            }
            GateKind::Cv | GateKind::Cvdg => {
                if g.target != target || g.control == target {
                    return Err(SynthError::NotClassical(g));
                }
                if wires[g.control] {
                    exponent += if g.kind == GateKind::Cv { 1 } else { -1 };
                }
            }
        }
    }
    Ok(exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{circuit_unitary, operator_distance, reference_mcu};
    use crate::z2identity::f_direct;

    #[test]
    fn cu_is_single_gate() {
        let c = synth_cu(&Unitary2::pauli_x());
        assert_eq!(c.gates(), &[Gate::cv(0, 1)]);
        assert_eq!(c.v_binding(), Some(&Unitary2::pauli_x()));
    }

    #[test]
    fn ccu_matches_general_n2() {
        let u = Unitary2::hadamard();
        let a = synth_ccu(&u);
        let b = synth_general(2, &u).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.gate_count().total, 5);
    }

    #[test]
    fn n1_uses_u_directly() {
        let u = Unitary2::phase_t();
        let c = synth_general(1, &u).unwrap();
        assert_eq!(c, synth_cu(&u));
    }

    #[test]
    fn general_rejects_bad_n() {
        assert_eq!(
            synth_general(0, &Unitary2::pauli_x()),
            Err(SynthError::NoControls)
        );
        assert!(matches!(
            synth_general(21, &Unitary2::pauli_x()),
            Err(SynthError::TooManyControls { .. })
        ));
    }

    #[test]
    fn block_shape() {
        let plan = SynthesisPlan::new(4, &Unitary2::pauli_x()).unwrap();
        let t = SignedParityTerm::new(vec![0, 2, 3], 4).unwrap();
        assert_eq!(
            plan.block_gates(&t),
            vec![
                Gate::cnot(0, 2),
                Gate::cnot(2, 3),
                Gate::cv(3, 4),
                Gate::cnot(2, 3),
                Gate::cnot(0, 2),
            ]
        );
        let t = SignedParityTerm::new(vec![1, 2], 4).unwrap();
        assert_eq!(
            plan.block_gates(&t),
            vec![Gate::cnot(1, 2), Gate::cvdg(2, 4), Gate::cnot(1, 2)]
        );
    }

    #[test]
    fn counts_small() {
        for (n, total) in [(1, 1), (2, 5), (3, 17), (4, 49)] {
            let c = synth_general(n, &Unitary2::pauli_x()).unwrap();
            let counts = c.gate_count();
            assert_eq!(counts.total, total, "n={n}");
            let (v_kind, cnot) = expected_counts(n);
            assert_eq!(counts.v_kind() as u64, v_kind);
            assert_eq!(counts.cnot as u64, cnot);
        }
    }

    #[test]
    fn peephole_examples() {
        let mut c = Circuit::new(3).unwrap();
        c.extend([Gate::cnot(0, 1), Gate::cnot(0, 1)]).unwrap();
        assert!(peephole_cancel(&c).is_empty());

        let mut c = Circuit::new(3).unwrap();
        c.extend([Gate::cv(0, 2), Gate::cvdg(0, 2)]).unwrap();
        assert!(peephole_cancel(&c).is_empty());

        // nested pairs collapse in one pass
        let mut c = Circuit::new(3).unwrap();
        c.extend([
            Gate::cnot(0, 1),
            Gate::cv(1, 2),
            Gate::cvdg(1, 2),
            Gate::cnot(0, 1),
            Gate::cnot(1, 0),
        ])
        .unwrap();
        assert_eq!(peephole_cancel(&c).gates(), &[Gate::cnot(1, 0)]);
    }

    #[test]
    fn peephole_on_n3_preserves_matrix() {
        let u = Unitary2::pauli_y();
        let c = synth_cccu(&u);
        let p = peephole_cancel(&c);
        assert!(p.gate_count().total <= 17);
        let d = operator_distance(&circuit_unitary(&c).unwrap(), &circuit_unitary(&p).unwrap())
            .unwrap();
        assert!(d < 1e-11);
    }

    #[test]
    fn peephole_shrinks_n4() {
        let c = synth_general(4, &Unitary2::pauli_x()).unwrap();
        assert!(peephole_cancel(&c).len() < c.len());
    }

    #[test]
    fn trace_matches_f_direct_n3() {
        let c = synth_general(3, &Unitary2::pauli_x()).unwrap();
        for idx in 0..8 {
            let xs = BitVector::from_index(3, idx).unwrap();
            assert_eq!(exponent_trace(&c, &xs, 3).unwrap(), f_direct(&xs).unwrap());
        }
    }

    #[test]
    fn trace_rejects_nonclassical() {
        let mut c = Circuit::new(2).unwrap();
        c.append(Gate::cnot(0, 1)).unwrap();
        let xs = BitVector::from_index(1, 1).unwrap();
        assert!(matches!(
            exponent_trace(&c, &xs, 1),
            Err(SynthError::NotClassical(_))
        ));
        let xs2 = BitVector::from_index(2, 1).unwrap();
        assert!(matches!(
            exponent_trace(&c, &xs2, 1),
            Err(SynthError::AssignmentWidth { .. })
        ));
    }

    #[test]
    fn verified_guard() {
        let (_, d) = synth_verified(3, &Unitary2::hadamard()).unwrap();
        assert!(d < 1e-10);
        assert_eq!(
            synth_verified(12, &Unitary2::pauli_x()).unwrap_err(),
            SynthError::VerifyBound { n: 12, max: 11 }
        );
    }

    #[test]
    fn toffoli() {
        let c = synth_general(2, &Unitary2::pauli_x()).unwrap();
        let d = operator_distance(
            &circuit_unitary(&c).unwrap(),
            &reference_mcu(2, &Unitary2::pauli_x()),
        )
        .unwrap();
        assert!(d < 1e-12);
    }
}
