//! Command-line surface: `verify-identity`, `synth`, `check`, `simulate`.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::format::{self, FormatError, GateSpec};
use crate::sim::{self, SimError, StateVector};
use crate::synth::{self, SynthError};
use crate::z2identity::{self, BitVector, VerificationReport, Z2Error};

/// Largest `n` for `verify-identity` with subset enumeration.
pub const FULL_MODE_MAX_N: usize = z2identity::DEFAULT_EXHAUSTIVE_LIMIT;
/// Largest `n` for `verify-identity --recurrent-only`.
pub const RECURRENT_MODE_MAX_N: usize = 24;
/// `check` passes iff the operator distance is below this.
pub const CHECK_TOL: f64 = 1e-9;
/// Amplitudes at or below this magnitude are not printed.
pub const PRINT_CUTOFF: f64 = 1e-12;
const LEMMA1_RANGE: std::ops::RangeInclusive<i64> = -8..=8;

#[derive(Debug, Parser)]
#[command(
    name = "mcu-synth",
    version,
    about = "Multi-controlled unitary synthesis and verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the parity identity and its supporting lemmas up to n.
    VerifyIdentity {
        #[arg(long)]
        n: usize,
        /// Skip subset enumeration and sample assignments instead.
        #[arg(long)]
        recurrent_only: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build an n-controlled gate and write it as a circuit file.
    Synth {
        #[arg(long)]
        controls: usize,
        /// I, X, Y, Z, H, S, T, or @file.json with an explicit matrix.
        #[arg(long)]
        gate: String,
        /// Apply peephole cancellation before writing.
        #[arg(long)]
        optimize: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare a circuit file against the reference n-controlled operator.
    Check {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        controls: usize,
        #[arg(long)]
        gate: String,
    },
    /// Run a circuit file on a computational basis state.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        input: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    fn from_pass(pass: bool) -> Outcome {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Identity(#[from] Z2Error),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::VerifyIdentity {
            n,
            recurrent_only,
            samples,
            seed,
        } => cmd_verify_identity(*n, *recurrent_only, *samples, *seed, out),
        Command::Synth {
            controls,
            gate,
            optimize,
            out: path,
        } => cmd_synth(*controls, &GateSpec::parse(gate)?, *optimize, path, out),
        Command::Check {
            circuit,
            controls,
            gate,
        } => cmd_check(circuit, *controls, &GateSpec::parse(gate)?, out),
        Command::Simulate { circuit, input } => cmd_simulate(circuit, input, out),
    }
}

fn report_line(report: &VerificationReport, unit: &str) -> String {
    match &report.counterexample {
        None => format!("{}: PASS ({} {unit})", report.check, report.cases),
        Some(c) => format!("{}: FAIL at {}: {}", report.check, c.case, c.detail),
    }
}

pub fn cmd_verify_identity(
    n: usize,
    recurrent_only: bool,
    samples: u64,
    seed: u64,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let max = if recurrent_only {
        RECURRENT_MODE_MAX_N
    } else {
        FULL_MODE_MAX_N
    };
    if n == 0 || n > max {
        return Err(CliError::Usage(format!(
            "--n must be in 1..={max}, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    let mut emit = |line: String, pass: bool, out: &mut dyn Write| -> io::Result<()> {
        if !pass {
            failures += 1;
        }
        writeln!(out, "{line}")
    };

    if recurrent_only {
        let report = sample_recurrent(n, samples.max(1), &mut rng)?;
        emit(report_line(&report, "samples"), report.passed(), out)?;
    } else {
        for k in 1..=n {
            let a = z2identity::verify_prop_a(k, FULL_MODE_MAX_N)?;
            emit(report_line(&a, "assignments"), a.passed(), out)?;
            let b = z2identity::verify_prop_b(k, FULL_MODE_MAX_N)?;
            emit(report_line(&b, "assignments"), b.passed(), out)?;
        }
        for k in 1..=n {
            let l2 = z2identity::verify_lemma2(k, samples.max(1), &mut rng)?;
            emit(report_line(&l2, "samples"), l2.passed(), out)?;
        }
        let l1 = z2identity::verify_lemma1(LEMMA1_RANGE)?;
        emit(report_line(&l1, "triples"), l1.passed(), out)?;
    }
    for k in 2..=n {
        let (lhs, rhs) = z2identity::verify_lemma3(k)?;
        let verdict = if lhs == rhs { "PASS" } else { "FAIL" };
        emit(
            format!("lemma3 n={k}: {verdict} (lhs={lhs} rhs={rhs})"),
            lhs == rhs,
            out,
        )?;
    }
    if failures == 0 {
        writeln!(out, "all checks passed")?;
    } else {
        writeln!(out, "{failures} check(s) failed")?;
    }
    Ok(Outcome::from_pass(failures == 0))
}

/// `F_recurrent = 2^(n−1)·Πx` on the all-ones assignment plus random samples.
fn sample_recurrent(
    n: usize,
    samples: u64,
    rng: &mut ChaCha8Rng,
) -> Result<VerificationReport, Z2Error> {
    use rand::Rng;
    let check = format!("prop-a-recurrent n={n}");
    let all_ones = (1u64 << n) - 1;
    for i in 0..samples {
        let idx = if i == 0 {
            all_ones
        } else {
            rng.random_range(0..=all_ones)
        };
        let xs = BitVector::from_index(n, idx)?;
        let (got, want) = (z2identity::f_recurrent(&xs)?, z2identity::closed_form(&xs)?);
        if got != want {
            return Ok(VerificationReport {
                check,
                cases: i + 1,
                counterexample: Some(z2identity::Counterexample {
                    case: xs.to_string(),
                    detail: format!("recurrent={got} closed-form={want}"),
                }),
            });
        }
    }
    Ok(VerificationReport {
        check,
        cases: samples,
        counterexample: None,
    })
}

pub fn cmd_synth(
    controls: usize,
    gate: &GateSpec,
    optimize: bool,
    path: &std::path::Path,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    if controls == 0 {
        return Err(CliError::Usage("--controls must be at least 1".into()));
    }
    let circuit = synth::synth_general(controls, &gate.unitary())?;
    let circuit = if optimize {
        let optimized = synth::peephole_cancel(&circuit);
        writeln!(out, "before peephole: {}", circuit.gate_count())?;
        writeln!(out, "after peephole: {}", optimized.gate_count())?;
        optimized
    } else {
        writeln!(out, "{}", circuit.gate_count())?;
        circuit
    };
    format::write_circuit_file(&circuit, path)?;
    writeln!(out, "wrote {}", path.display())?;
    Ok(Outcome::Pass)
}

pub fn cmd_check(
    path: &std::path::Path,
    controls: usize,
    gate: &GateSpec,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let circuit = format::read_circuit(path)?;
    if circuit.width() != controls + 1 {
        return Err(CliError::Usage(format!(
            "circuit has {} qubits, expected {} for {controls} controls",
            circuit.width(),
            controls + 1
        )));
    }
    let got = sim::circuit_unitary(&circuit)?;
    let want = sim::reference_mcu(controls, &gate.unitary());
    let distance = sim::operator_distance(&got, &want)?;
    let pass = distance < CHECK_TOL;
    writeln!(
        out,
        "distance = {distance:.3e}: {}",
        if pass { "PASS" } else { "FAIL" }
    )?;
    Ok(Outcome::from_pass(pass))
}

pub fn cmd_simulate(
    path: &std::path::Path,
    input: &str,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let circuit = format::read_circuit(path)?;
    if input.len() != circuit.width() {
        return Err(CliError::Usage(format!(
            "input has {} bits, circuit has {} qubits",
            input.len(),
            circuit.width()
        )));
    }
    let mut state = StateVector::from_bits(input)?;
    sim::run(&circuit, &mut state)?;
    for (i, a) in state.amplitudes().iter().enumerate() {
        if a.norm() > PRINT_CUTOFF {
            writeln!(out, "{}: {}", state.basis_label(i), format_amplitude(*a))?;
        }
    }
    Ok(Outcome::Pass)
}

/// Rounds to 12 significant digits and prints the shortest form of that.
fn format_real(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().expect("float round trip");
    if rounded == 0.0 {
        "0.0".to_string()
    } else {
        format!("{rounded:?}")
    }
}

pub fn format_amplitude(a: num_complex::Complex64) -> String {
    let re_zero = a.re.abs() <= PRINT_CUTOFF;
    let im_zero = a.im.abs() <= PRINT_CUTOFF;
    match (re_zero, im_zero) {
        (true, true) => "0.0".to_string(),
        (false, true) => format_real(a.re),
        (true, false) => format!("{}i", format_real(a.im)),
        (false, false) => {
            let sign = if a.im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", format_real(a.re), format_real(a.im.abs()))
        }
    }
}
