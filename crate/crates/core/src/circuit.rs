//! Circuits over {CNOT, C-V, C-V†} with a single circuit-level binding for `V`.
//!
//! Qubit 0 is the leftmost tensor factor.

use std::fmt;

use thiserror::Error;

use crate::unitary2::Unitary2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("circuit width must be at least 1")]
    ZeroWidth,
    #[error("qubit index {index} out of range for width {width}")]
    IndexOutOfRange { index: usize, width: usize },
    #[error("control and target are both qubit {0}")]
    SelfControl(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Cnot,
    /// Controlled-`V`.
    Cv,
    /// Controlled-`V†`.
    Cvdg,
}

impl GateKind {
    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::Cnot => GateKind::Cnot,
            GateKind::Cv => GateKind::Cvdg,
            GateKind::Cvdg => GateKind::Cv,
        }
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::Cnot => "cnot",
            GateKind::Cv => "cv",
            GateKind::Cvdg => "cvdg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub control: usize,
    pub target: usize,
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate {
            kind: GateKind::Cnot,
            control,
            target,
        }
    }

    pub fn cv(control: usize, target: usize) -> Gate {
        Gate {
            kind: GateKind::Cv,
            control,
            target,
        }
    }

    pub fn cvdg(control: usize, target: usize) -> Gate {
        Gate {
            kind: GateKind::Cvdg,
            control,
            target,
        }
    }

    pub fn inverse(self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            ..self
        }
    }

    pub fn is_inverse_of(&self, other: &Gate) -> bool {
        self.inverse() == *other
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.kind.mnemonic(),
            self.control,
            self.target
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub cnot: usize,
    pub cv: usize,
    pub cvdg: usize,
    pub total: usize,
}

impl GateCounts {
    /// `cv + cvdg`.
    pub fn v_kind(&self) -> usize {
        self.cv + self.cvdg
    }
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cnot={} cv={} cvdg={} total={}",
            self.cnot, self.cv, self.cvdg, self.total
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    v_binding: Option<Unitary2>,
}

impl Circuit {
    pub fn new(width: usize) -> Result<Circuit, CircuitError> {
        if width == 0 {
            return Err(CircuitError::ZeroWidth);
        }
        Ok(Circuit {
            width,
            gates: Vec::new(),
            v_binding: None,
        })
    }

    pub fn with_binding(mut self, v: Unitary2) -> Circuit {
        self.v_binding = Some(v);
        self
    }

    pub fn set_binding(&mut self, v: Option<Unitary2>) {
        self.v_binding = v;
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn v_binding(&self) -> Option<&Unitary2> {
        self.v_binding.as_ref()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn needs_binding(&self) -> bool {
        self.gates.iter().any(|g| g.kind != GateKind::Cnot)
    }

    pub fn check_gate(&self, gate: &Gate) -> Result<(), CircuitError> {
        for index in [gate.control, gate.target] {
            if index >= self.width {
                return Err(CircuitError::IndexOutOfRange {
                    index,
                    width: self.width,
                });
            }
        }
        if gate.control == gate.target {
            return Err(CircuitError::SelfControl(gate.control));
        }
        Ok(())
    }

    pub fn append(&mut self, gate: Gate) -> Result<(), CircuitError> {
        self.check_gate(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<(), CircuitError> {
        for g in gates {
            self.append(g)?;
        }
        Ok(())
    }

    /// Same width and binding, with the gate list replaced. Gates are not
    /// revalidated, so callers must only pass gates taken from `self`.
    pub(crate) fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        Circuit {
            width: self.width,
            gates,
            v_binding: self.v_binding,
        }
    }

    /// Gate order reversed and `V ↔ V†`; the binding is kept.
    pub fn invert(&self) -> Circuit {
        self.with_gates(self.gates.iter().rev().map(|g| g.inverse()).collect())
    }

    /// Drops the gate at `index`.
    pub fn without_gate(&self, index: usize) -> Circuit {
        let mut gates = self.gates.clone();
        gates.remove(index);
        self.with_gates(gates)
    }

    pub fn gate_count(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            match g.kind {
                GateKind::Cnot => counts.cnot += 1,
                GateKind::Cv => counts.cv += 1,
                GateKind::Cvdg => counts.cvdg += 1,
            }
        }
        counts.total = self.gates.len();
        counts
    }
}
