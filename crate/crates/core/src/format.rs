//! Line-oriented circuit files and gate specifications.
//!
//! ```text
//! # comment
//! qubits 3
//! vmatrix <re> <im> <re> <im> <re> <im> <re> <im>
//! cv 0 2
//! cnot 0 1
//! cvdg 1 2
//! ```
//!
//! `vmatrix` is the row-major binding for `V` and is optional. Floats are
//! written in shortest round-trip form, so a written circuit parses back to
//! an identical value.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, GateKind};
use crate::unitary2::{Unitary2, UnitaryError};

/// Unitarity tolerance for user-supplied matrices.
pub const INGEST_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Circuit {
        line: usize,
        #[source]
        source: CircuitError,
    },
    #[error("missing `qubits` header")]
    MissingHeader,
    #[error("unknown gate name {0:?} (expected I, X, Y, Z, H, S or T)")]
    UnknownGate(String),
    #[error("invalid matrix: {0}")]
    Matrix(#[from] UnitaryError),
    #[error("invalid JSON gate file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn write_circuit(circuit: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", circuit.width()).unwrap();
    if let Some(v) = circuit.v_binding() {
        out.push_str("vmatrix");
        for z in v.entries().iter().flatten() {
            write!(out, " {:?} {:?}", z.re, z.im).unwrap();
        }
        out.push('\n');
    }
    for g in circuit.gates() {
        writeln!(out, "{g}").unwrap();
    }
    out
}

pub fn parse_circuit(text: &str) -> Result<Circuit, FormatError> {
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let keyword = words.next().expect("nonempty line");
        let args: Vec<&str> = words.collect();
        match (keyword, circuit.as_mut()) {
            ("qubits", None) => {
                let [w] = args[..] else {
                    return Err(syntax(line, "expected `qubits <m>`"));
                };
                let width = w
                    .parse()
                    .map_err(|_| syntax(line, format!("bad qubit count {w:?}")))?;
                circuit = Some(
                    Circuit::new(width).map_err(|source| FormatError::Circuit { line, source })?,
                );
            }
            ("qubits", Some(_)) => return Err(syntax(line, "duplicate `qubits` header")),
            (_, None) => return Err(FormatError::MissingHeader),
            ("vmatrix", Some(c)) => {
                if c.v_binding().is_some() {
                    return Err(syntax(line, "duplicate `vmatrix`"));
                }
                if args.len() != 8 {
                    return Err(syntax(line, "`vmatrix` takes 8 numbers"));
                }
                let nums = args
                    .iter()
                    .map(|a| {
                        a.parse::<f64>()
                            .map_err(|_| syntax(line, format!("bad number {a:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let z = |k: usize| Complex64::new(nums[2 * k], nums[2 * k + 1]);
                let v = Unitary2::with_tolerance([[z(0), z(1)], [z(2), z(3)]], INGEST_TOL)?;
                c.set_binding(Some(v));
            }
            (name, Some(c)) => {
                let kind = match name {
                    "cnot" => GateKind::Cnot,
                    "cv" => GateKind::Cv,
                    "cvdg" => GateKind::Cvdg,
                    other => return Err(syntax(line, format!("unknown keyword {other:?}"))),
                };
                let [control, target] = args[..] else {
                    return Err(syntax(
                        line,
                        format!("expected `{name} <control> <target>`"),
                    ));
                };
                let idx = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| syntax(line, format!("bad qubit index {s:?}")))
                };
                let gate = Gate {
                    kind,
                    control: idx(control)?,
                    target: idx(target)?,
                };
                c.append(gate)
                    .map_err(|source| FormatError::Circuit { line, source })?;
            }
        }
    }
    circuit.ok_or(FormatError::MissingHeader)
}

pub fn read_circuit(path: &Path) -> Result<Circuit, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_circuit(&text)
}

pub fn write_circuit_file(circuit: &Circuit, path: &Path) -> Result<(), FormatError> {
    std::fs::write(path, write_circuit(circuit)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGate {
    I,
    X,
    Y,
    Z,
    H,
    S,
    T,
}

impl NamedGate {
    pub const ALL: [NamedGate; 7] = [
        NamedGate::I,
        NamedGate::X,
        NamedGate::Y,
        NamedGate::Z,
        NamedGate::H,
        NamedGate::S,
        NamedGate::T,
    ];

    pub fn from_name(name: &str) -> Option<NamedGate> {
        Self::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(name))
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedGate::I => "I",
            NamedGate::X => "X",
            NamedGate::Y => "Y",
            NamedGate::Z => "Z",
            NamedGate::H => "H",
            NamedGate::S => "S",
            NamedGate::T => "T",
        }
    }

    pub fn unitary(self) -> Unitary2 {
        match self {
            NamedGate::I => Unitary2::identity(),
            NamedGate::X => Unitary2::pauli_x(),
            NamedGate::Y => Unitary2::pauli_y(),
            NamedGate::Z => Unitary2::pauli_z(),
            NamedGate::H => Unitary2::hadamard(),
            NamedGate::S => Unitary2::phase_s(),
            NamedGate::T => Unitary2::phase_t(),
        }
    }
}

/// The target gate of a synthesis request.
#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    Named(NamedGate),
    Matrix(Unitary2),
}

#[derive(Deserialize)]
struct MatrixFile {
    matrix: [[[f64; 2]; 2]; 2],
}

impl GateSpec {
    /// `I`, `X`, `Y`, `Z`, `H`, `S`, `T` (case-insensitive), or `@path` to a
    /// JSON file `{"matrix": [[[re,im],[re,im]],[[re,im],[re,im]]]}`.
    pub fn parse(spec: &str) -> Result<GateSpec, FormatError> {
        if let Some(path) = spec.strip_prefix('@') {
            let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
                path: path.to_string(),
                source,
            })?;
            return Self::from_json(&text);
        }
        NamedGate::from_name(spec)
            .map(GateSpec::Named)
            .ok_or_else(|| FormatError::UnknownGate(spec.to_string()))
    }

    pub fn from_json(text: &str) -> Result<GateSpec, FormatError> {
        let file: MatrixFile = serde_json::from_str(text)?;
        let z = |r: usize, c: usize| Complex64::new(file.matrix[r][c][0], file.matrix[r][c][1]);
        let u = Unitary2::with_tolerance([[z(0, 0), z(0, 1)], [z(1, 0), z(1, 1)]], INGEST_TOL)?;
        Ok(GateSpec::Matrix(u))
    }

    pub fn unitary(&self) -> Unitary2 {
        match self {
            GateSpec::Named(g) => g.unitary(),
            GateSpec::Matrix(u) => *u,
        }
    }
}
