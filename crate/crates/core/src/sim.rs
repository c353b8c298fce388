//! Dense state-vector and operator simulation, used as the brute-force
//! oracle for synthesized circuits.
//!
//! Basis index `b = Σ_i x_i·2^(m−1−i)`: qubit 0 is the most significant bit.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::unitary2::Unitary2;

/// Widest circuit [`circuit_unitary`] will expand by default.
pub const DEFAULT_MAX_WIDTH: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("circuit contains controlled-V gates but no V binding")]
    MissingBinding,
    #[error("width {width} exceeds the dense simulation bound {max}")]
    TooWide { width: usize, max: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("gate {gate} does not fit width {width}")]
    GateOutOfRange { gate: Gate, width: usize },
    #[error("invalid basis label {0:?}")]
    BadBasisLabel(String),
    #[error("state must have width at least 1")]
    ZeroWidth,
}

#[inline]
fn bit_mask(width: usize, qubit: usize) -> usize {
    1 << (width - 1 - qubit)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|index⟩` on `width` qubits.
    pub fn basis(width: usize, index: usize) -> Result<StateVector, SimError> {
        if width == 0 {
            return Err(SimError::ZeroWidth);
        }
        let dim = 1usize << width;
        if index >= dim {
            return Err(SimError::DimensionMismatch(index, dim));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(StateVector { width, amps })
    }

    /// Parses a label such as `"0110"` (qubit 0 first).
    pub fn from_bits(bits: &str) -> Result<StateVector, SimError> {
        let index = bits.chars().try_fold(0usize, |acc, ch| match ch {
            '0' => Ok(acc << 1),
            '1' => Ok((acc << 1) | 1),
            _ => Err(SimError::BadBasisLabel(bits.to_string())),
        })?;
        if bits.is_empty() || bits.len() > usize::BITS as usize - 1 {
            return Err(SimError::BadBasisLabel(bits.to_string()));
        }
        Self::basis(bits.len(), index)
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<StateVector, SimError> {
        if amps.len() < 2 || !amps.len().is_power_of_two() {
            return Err(SimError::DimensionMismatch(
                amps.len(),
                amps.len().next_power_of_two(),
            ));
        }
        let width = amps.len().trailing_zeros() as usize;
        Ok(StateVector { width, amps })
    }

    /// Normalized state with i.i.d. complex Gaussian amplitudes.
    pub fn random<R: Rng + ?Sized>(width: usize, rng: &mut R) -> Result<StateVector, SimError> {
        if width == 0 {
            return Err(SimError::ZeroWidth);
        }
        let mut amps: Vec<Complex64> = (0..1usize << width)
            .map(|_| {
                Complex64::new(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                )
            })
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector { width, amps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|x_0 x_1 … x_{m−1}⟩` for a basis index.
    pub fn basis_label(&self, index: usize) -> String {
        let bits: String = (0..self.width)
            .map(|q| {
                if index & bit_mask(self.width, q) != 0 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect();
        format!("|{bits}⟩")
    }

    /// Applies `gate`; `v` is the matrix bound to `V` (`V†` is derived).
    pub fn apply_gate(&mut self, gate: &Gate, v: Option<&Unitary2>) -> Result<(), SimError> {
        if gate.control >= self.width || gate.target >= self.width || gate.control == gate.target {
            return Err(SimError::GateOutOfRange {
                gate: *gate,
                width: self.width,
            });
        }
        let cmask = bit_mask(self.width, gate.control);
        let tmask = bit_mask(self.width, gate.target);
        let m = match gate.kind {
            GateKind::Cnot => None,
            GateKind::Cv => Some(v.ok_or(SimError::MissingBinding)?.entries()),
            GateKind::Cvdg => Some(v.ok_or(SimError::MissingBinding)?.dagger().entries()),
        };
        for i0 in 0..self.amps.len() {
            if i0 & cmask == 0 || i0 & tmask != 0 {
                continue;
            }
            let i1 = i0 | tmask;
            match m {
                None => self.amps.swap(i0, i1),
                Some(m) => {
                    let (a0, a1) = (self.amps[i0], self.amps[i1]);
                    self.amps[i0] = m[0][0] * a0 + m[0][1] * a1;
                    self.amps[i1] = m[1][0] * a0 + m[1][1] * a1;
                }
            }
        }
        Ok(())
    }

    /// Maximum entrywise amplitude difference.
    pub fn distance(&self, other: &StateVector) -> Result<f64, SimError> {
        if self.amps.len() != other.amps.len() {
            return Err(SimError::DimensionMismatch(
                self.amps.len(),
                other.amps.len(),
            ));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Runs every gate of `circuit` on `state`.
pub fn run(circuit: &Circuit, state: &mut StateVector) -> Result<(), SimError> {
    if state.width != circuit.width() {
        return Err(SimError::DimensionMismatch(state.width, circuit.width()));
    }
    if circuit.needs_binding() && circuit.v_binding().is_none() {
        return Err(SimError::MissingBinding);
    }
    for g in circuit.gates() {
        state.apply_gate(g, circuit.v_binding())?;
    }
    Ok(())
}

/// Square complex matrix on `width` qubits, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    width: usize,
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn identity(width: usize) -> DenseOperator {
        let dim = 1 << width;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        DenseOperator { width, dim, data }
    }

    /// Builds from row-major entries; `rows.len()` must be a power of two.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<DenseOperator, SimError> {
        let dim = rows.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(SimError::DimensionMismatch(dim, dim.next_power_of_two()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(SimError::DimensionMismatch(row.len(), dim));
            }
            data.extend_from_slice(row);
        }
        Ok(DenseOperator {
            width: dim.trailing_zeros() as usize,
            dim,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, z: Complex64) {
        self.data[row * self.dim + col] = z;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn multiply(&self, other: &DenseOperator) -> Result<DenseOperator, SimError> {
        if self.dim != other.dim {
            return Err(SimError::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = DenseOperator {
            width: self.width,
            dim: n,
            data: vec![ZERO; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn dagger(&self) -> DenseOperator {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector, SimError> {
        if state.amps.len() != self.dim {
            return Err(SimError::DimensionMismatch(state.amps.len(), self.dim));
        }
        let amps = (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(&state.amps)
                    .map(|(m, a)| m * a)
                    .sum()
            })
            .collect();
        Ok(StateVector {
            width: self.width,
            amps,
        })
    }

    /// `max |(A·A†)_{ij} − δ_{ij}|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.multiply(&self.dagger()).expect("square operator");
        operator_distance(&p, &DenseOperator::identity(self.width)).expect("same dimension")
    }

    /// Entries that differ from the identity by more than `tol`.
    pub fn off_identity_entries(&self, tol: f64) -> usize {
        let id = DenseOperator::identity(self.width);
        self.data
            .iter()
            .zip(&id.data)
            .filter(|(a, b)| (*a - *b).norm() > tol)
            .count()
    }
}

/// Column `j` is the circuit applied to `|j⟩`. Bounded by
/// [`DEFAULT_MAX_WIDTH`].
pub fn circuit_unitary(circuit: &Circuit) -> Result<DenseOperator, SimError> {
    circuit_unitary_bounded(circuit, DEFAULT_MAX_WIDTH)
}

pub fn circuit_unitary_bounded(
    circuit: &Circuit,
    max_width: usize,
) -> Result<DenseOperator, SimError> {
    let width = circuit.width();
    if width > max_width {
        return Err(SimError::TooWide {
            width,
            max: max_width,
        });
    }
    if circuit.needs_binding() && circuit.v_binding().is_none() {
        return Err(SimError::MissingBinding);
    }
    let dim = 1usize << width;
    let columns: Vec<StateVector> = (0..dim)
        .into_par_iter()
        .map(|j| {
            let mut s = StateVector::basis(width, j)?;
            run(circuit, &mut s)?;
            Ok(s)
        })
        .collect::<Result<_, SimError>>()?;
    let mut op = DenseOperator {
        width,
        dim,
        data: vec![ZERO; dim * dim],
    };
    for (j, col) in columns.iter().enumerate() {
        for (i, &a) in col.amps.iter().enumerate() {
            op.set(i, j, a);
        }
    }
    Ok(op)
}

/// The `n`-controlled `U` on `n + 1` qubits (controls `0..n`, target `n`),
/// written down from its definition: identity except the 2×2 block on the
/// two basis states whose control bits are all 1. `n = 0` yields `u` itself.
pub fn reference_mcu(n: usize, u: &Unitary2) -> DenseOperator {
    let mut op = DenseOperator::identity(n + 1);
    let dim = op.dim;
    let (i0, i1) = (dim - 2, dim - 1);
    for (r, row) in [i0, i1].into_iter().enumerate() {
        for (c, col) in [i0, i1].into_iter().enumerate() {
            op.set(row, col, u.get(r, c));
        }
    }
    op
}

/// Maximum absolute entrywise difference.
pub fn operator_distance(a: &DenseOperator, b: &DenseOperator) -> Result<f64, SimError> {
    if a.dim != b.dim {
        return Err(SimError::DimensionMismatch(a.dim, b.dim));
    }
    Ok(a.data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}
