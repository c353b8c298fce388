//! Synthesis of `n`-controlled single-qubit unitaries from CNOT and
//! controlled-`V` gates, where `V^(2^(n−1)) = U`.
//!
//! The construction rests on the parity identity
//! `Σ_{∅≠S} (−1)^(|S|−1) ⊕_{i∈S} x_i = 2^(n−1)·x_1⋯x_n`, which [`z2identity`]
//! evaluates and checks exhaustively. [`synth`] turns each signed subset into
//! a parity block, and [`sim`] verifies the result against a dense
//! reference operator.
//!
//! ```
//! use mcu_synth::{sim, synth, Unitary2};
//!
//! let x = Unitary2::pauli_x();
//! let toffoli = synth::synth_general(2, &x).unwrap();
//! assert_eq!(toffoli.gate_count().total, 5);
//!
//! let got = sim::circuit_unitary(&toffoli).unwrap();
//! let want = sim::reference_mcu(2, &x);
//! assert!(sim::operator_distance(&got, &want).unwrap() < 1e-12);
//! ```

pub mod circuit;
pub mod cli;
pub mod format;
pub mod sim;
pub mod synth;
pub mod unitary2;
pub mod z2identity;

pub use circuit::{Circuit, Gate, GateCounts, GateKind};
pub use unitary2::Unitary2;
pub use z2identity::{Bit, BitVector};
