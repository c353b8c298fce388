//! Mod-2 parity identities and their integer extension.
//!
//! The central object is the alternating subset-parity sum
//!
//! ```text
//! F_n(x) = Σ x_i − Σ x_i⊕x_j + Σ x_i⊕x_j⊕x_k − … + (−1)^(n−1) x_1⊕…⊕x_n
//! ```
//!
//! which equals `2^(n−1)·x_1⋯x_n` for every bit assignment. This module
//! evaluates it two ways (subset enumeration and the linear recurrence built
//! on the integer XOR extension `x ⊕̃ y = x + y − 2xy`) and provides exhaustive
//! and sampled verifiers for the closed form and the supporting lemmas.

use std::fmt;
use std::ops::RangeInclusive;

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

/// Largest `n` for which subset enumeration is allowed by default.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Z2Error {
    #[error("bit vector must contain at least one bit")]
    EmptyBitVector,
    #[error("value {0} is not a bit (expected 0 or 1)")]
    NotABit(i64),
    #[error("n = {n} exceeds the exhaustive limit {limit}")]
    ExhaustiveLimit { n: usize, limit: usize },
    #[error("n = {n} is out of range (expected {min}..={max})")]
    OutOfRange { n: usize, min: usize, max: usize },
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("empty sample range")]
    EmptyRange,
}

/// An element of Z₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn value(self) -> i64 {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    pub fn is_one(self) -> bool {
        self == Bit::One
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

impl TryFrom<i64> for Bit {
    type Error = Z2Error;

    fn try_from(v: i64) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(Bit::Zero),
            1 => Ok(Bit::One),
            other => Err(Z2Error::NotABit(other)),
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Addition in Z₂.
pub fn xor_mod2(x: Bit, y: Bit) -> Bit {
    Bit::from((x.value() + y.value()) % 2 == 1)
}

/// The integer extension of XOR, `x + y − 2xy`.
///
/// Agrees with [`xor_mod2`] on {0,1}. Overflow is reported, not wrapped.
pub fn tilde_oplus(x: i64, y: i64) -> Result<i64, Z2Error> {
    let overflow = || Z2Error::Overflow("tilde_oplus");
    let two_xy = x
        .checked_mul(y)
        .and_then(|p| p.checked_mul(2))
        .ok_or_else(overflow)?;
    x.checked_add(y)
        .and_then(|s| s.checked_sub(two_xy))
        .ok_or_else(overflow)
}

/// An assignment `(x_1, …, x_n)` with `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector(Vec<Bit>);

impl BitVector {
    pub fn new(bits: Vec<Bit>) -> Result<Self, Z2Error> {
        if bits.is_empty() {
            return Err(Z2Error::EmptyBitVector);
        }
        Ok(BitVector(bits))
    }

    pub fn from_values(values: &[i64]) -> Result<Self, Z2Error> {
        let bits = values
            .iter()
            .map(|&v| Bit::try_from(v))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(bits)
    }

    /// The `n`-bit assignment whose bit `i` (0-based, leftmost first) is the
    /// `(n−1−i)`-th binary digit of `index`, so index 0 is all zeros and
    /// index `2^n − 1` is all ones.
    pub fn from_index(n: usize, index: u64) -> Result<Self, Z2Error> {
        let bits = (0..n)
            .map(|i| Bit::from((index >> (n - 1 - i)) & 1 == 1))
            .collect();
        Self::new(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[Bit] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Bit {
        self.0[i]
    }

    /// `x_1 ⋯ x_n` as an integer.
    pub fn product(&self) -> i64 {
        i64::from(self.0.iter().all(|b| b.is_one()))
    }

    /// Appends `x_{n+1}`.
    pub fn extended(&self, bit: Bit) -> BitVector {
        let mut bits = self.0.clone();
        bits.push(bit);
        BitVector(bits)
    }

    /// The first `n−1` bits, or `None` when `n = 1`.
    pub fn prefix(&self) -> Option<BitVector> {
        (self.0.len() > 1).then(|| BitVector(self.0[..self.0.len() - 1].to_vec()))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// One term `±(x_{i_1} ⊕ ⋯ ⊕ x_{i_k})` of the alternating sum.
///
/// Indices are 0-based and strictly increasing. The sign is `(−1)^(k−1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedParityTerm {
    subset: Vec<usize>,
}

impl SignedParityTerm {
    pub fn new(mut subset: Vec<usize>, n: usize) -> Result<Self, Z2Error> {
        subset.sort_unstable();
        subset.dedup();
        if subset.is_empty() {
            return Err(Z2Error::EmptyBitVector);
        }
        if let Some(&max) = subset.last() {
            if max >= n {
                return Err(Z2Error::OutOfRange {
                    n: max,
                    min: 0,
                    max: n.saturating_sub(1),
                });
            }
        }
        Ok(SignedParityTerm { subset })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn size(&self) -> usize {
        self.subset.len()
    }

    /// `+1` for odd-sized subsets, `−1` for even.
    pub fn sign(&self) -> i64 {
        if self.subset.len() % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// The iterated XOR of the selected bits.
    pub fn parity(&self, xs: &BitVector) -> Bit {
        self.subset
            .iter()
            .fold(Bit::Zero, |acc, &i| xor_mod2(acc, xs.get(i)))
    }

    /// `sign · parity` as an integer.
    pub fn evaluate(&self, xs: &BitVector) -> i64 {
        self.sign() * self.parity(xs).value()
    }
}

/// All nonempty subsets of `{0, …, n−1}`: size ascending, lexicographic
/// within each size.
pub fn canonical_subsets(n: usize) -> Vec<SignedParityTerm> {
    let mut out = Vec::with_capacity((1usize << n.min(30)).saturating_sub(1));
    for k in 1..=n {
        // lexicographic k-combinations
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(SignedParityTerm {
                subset: idx.clone(),
            });
            let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

/// Sums an already-enumerated term list. Lets verifiers reuse one list
/// across many assignments.
fn f_direct_terms(terms: &[SignedParityTerm], xs: &BitVector) -> i64 {
    terms.iter().map(|t| t.evaluate(xs)).sum()
}

/// `F_n` by explicit enumeration of every nonempty subset, bounded by
/// [`DEFAULT_EXHAUSTIVE_LIMIT`].
pub fn f_direct(xs: &BitVector) -> Result<i64, Z2Error> {
    f_direct_with_limit(xs, DEFAULT_EXHAUSTIVE_LIMIT)
}

pub fn f_direct_with_limit(xs: &BitVector, limit: usize) -> Result<i64, Z2Error> {
    let n = xs.len();
    if n > limit {
        return Err(Z2Error::ExhaustiveLimit { n, limit });
    }
    Ok(f_direct_terms(&canonical_subsets(n), xs))
}

/// `F_n` through `F_{k+1} = F_k + x_{k+1} − F_k ⊕̃ x_{k+1}`, starting from
/// `F_1 = x_1`.
///
/// Fails only if the value leaves `i64`, which takes 64 or more ones.
pub fn f_recurrent(xs: &BitVector) -> Result<i64, Z2Error> {
    let mut bits = xs.bits().iter().map(|b| b.value());
    let mut f = bits.next().ok_or(Z2Error::EmptyBitVector)?;
    for x in bits {
        f = recurrence_step(f, x)?;
    }
    Ok(f)
}

/// One step of the recurrence: `f + x − f ⊕̃ x`.
pub fn recurrence_step(f: i64, x: i64) -> Result<i64, Z2Error> {
    let t = tilde_oplus(f, x)?;
    f.checked_add(x)
        .and_then(|s| s.checked_sub(t))
        .ok_or(Z2Error::Overflow("recurrence_step"))
}

/// `2^(n−1)·x_1⋯x_n`.
pub fn closed_form(xs: &BitVector) -> Result<i64, Z2Error> {
    let n = xs.len();
    let pow = 1i64
        .checked_shl(u32::try_from(n - 1).map_err(|_| Z2Error::Overflow("closed_form"))?)
        .filter(|p| *p > 0)
        .ok_or(Z2Error::Overflow("closed_form"))?;
    Ok(pow * xs.product())
}

/// A single failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub case: String,
    pub detail: String,
}

/// Outcome of a verifier: how many cases were checked and the first
/// failure in enumeration order, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: String,
    pub cases: u64,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{}: PASS ({} cases)", self.check, self.cases),
            Some(c) => write!(f, "{}: FAIL at {}: {}", self.check, c.case, c.detail),
        }
    }
}

fn check_n_range(n: usize, min: usize, max: usize) -> Result<(), Z2Error> {
    if n < min || n > max {
        return Err(Z2Error::OutOfRange { n, min, max });
    }
    Ok(())
}

/// Runs `check` over every `n`-bit assignment in parallel and returns the
/// first failure by assignment index.
fn exhaustive<F>(name: String, n: usize, check: F) -> VerificationReport
where
    F: Fn(&BitVector) -> Option<String> + Sync,
{
    let total = 1u64 << n;
    let counterexample = (0..total).into_par_iter().find_map_first(|idx| {
        let xs = BitVector::from_index(n, idx).expect("n >= 1");
        check(&xs).map(|detail| Counterexample {
            case: xs.to_string(),
            detail,
        })
    });
    VerificationReport {
        check: name,
        cases: total,
        counterexample,
    }
}

/// Checks `F_direct = 2^(n−1)·Πx_i = F_recurrent` on all `2^n` assignments.
pub fn verify_prop_a(n: usize, limit: usize) -> Result<VerificationReport, Z2Error> {
    check_n_range(n, 1, limit)?;
    let terms = canonical_subsets(n);
    Ok(exhaustive(format!("prop-a n={n}"), n, |xs| {
        let direct = f_direct_terms(&terms, xs);
        let expected = match closed_form(xs) {
            Ok(v) => v,
            Err(e) => return Some(e.to_string()),
        };
        let recurrent = match f_recurrent(xs) {
            Ok(v) => v,
            Err(e) => return Some(e.to_string()),
        };
        (direct != expected || direct != recurrent)
            .then(|| format!("direct={direct} recurrent={recurrent} closed-form={expected}"))
    }))
}

/// Checks, for every `n`-bit assignment with `n ≥ 2`, that
/// `F_n(xs) = F_{n−1}(xs') + x_n − F_{n−1}(xs') ⊕̃ x_n` with both sides by
/// subset enumeration. For `n = 1` checks the base case `F_1(x) = x`.
pub fn verify_prop_b(n: usize, limit: usize) -> Result<VerificationReport, Z2Error> {
    check_n_range(n, 1, limit)?;
    let full = canonical_subsets(n);
    let shorter = canonical_subsets(n - 1);
    Ok(exhaustive(format!("prop-b n={n}"), n, |xs| {
        let lhs = f_direct_terms(&full, xs);
        let rhs = match xs.prefix() {
            None => xs.get(0).value(),
            Some(prefix) => {
                let prev = f_direct_terms(&shorter, &prefix);
                match recurrence_step(prev, xs.get(n - 1).value()) {
                    Ok(v) => v,
                    Err(e) => return Some(e.to_string()),
                }
            }
        };
        (lhs != rhs).then(|| format!("F_n={lhs} recurrence={rhs}"))
    }))
}

/// The identities of the integer XOR extension, evaluated on one triple.
/// Returns the name of the first identity that fails.
pub fn lemma1_failure(x: i64, y: i64, z: i64) -> Result<Option<&'static str>, Z2Error> {
    let t = tilde_oplus;
    let checks: [(&'static str, i64, i64); 7] = [
        ("commutativity", t(x, y)?, t(y, x)?),
        ("associativity", t(t(x, y)?, z)?, t(x, t(y, z)?)?),
        ("sum shift", t(x, z)? + t(y, z)?, t(x + y, z)? + z),
        ("difference shift", t(x, z)? - t(y, z)?, t(x - y, z)? - z),
        ("zero", t(x, 0)?, x),
        ("one", t(x, 1)?, 1 - x),
        ("self", t(x, x)?, 2 * x * (1 - x)),
    ];
    Ok(checks
        .into_iter()
        .find(|(_, lhs, rhs)| lhs != rhs)
        .map(|(name, _, _)| name))
}

/// Checks every integer-XOR identity over all triples in `range³`.
pub fn verify_lemma1(range: RangeInclusive<i64>) -> Result<VerificationReport, Z2Error> {
    if range.is_empty() {
        return Err(Z2Error::EmptyRange);
    }
    let (lo, hi) = (*range.start(), *range.end());
    let mut cases = 0u64;
    for x in lo..=hi {
        for y in lo..=hi {
            for z in lo..=hi {
                cases += 1;
                if let Some(name) = lemma1_failure(x, y, z)? {
                    return Ok(VerificationReport {
                        check: format!("lemma1 range=[{lo},{hi}]"),
                        cases,
                        counterexample: Some(Counterexample {
                            case: format!("({x},{y},{z})"),
                            detail: format!("{name} fails"),
                        }),
                    });
                }
            }
        }
    }
    Ok(VerificationReport {
        check: format!("lemma1 range=[{lo},{hi}]"),
        cases,
        counterexample: None,
    })
}

/// Both sides of `Σ x_i⊕z = (Σ x_i) ⊕̃ z + (n−1)z`.
pub fn lemma2_sum_sides(xs: &BitVector, z: Bit) -> Result<(i64, i64), Z2Error> {
    let n = xs.len() as i64;
    let lhs = xs.bits().iter().map(|&x| xor_mod2(x, z).value()).sum();
    let sum: i64 = xs.bits().iter().map(|b| b.value()).sum();
    let rhs = tilde_oplus(sum, z.value())? + (n - 1) * z.value();
    Ok((lhs, rhs))
}

/// Both sides of `Σ (−1)^(i−1) x_i⊕z = (Σ (−1)^(i−1) x_i) ⊕̃ z − ((1+(−1)^n)/2)·z`.
pub fn lemma2_alternating_sides(xs: &BitVector, z: Bit) -> Result<(i64, i64), Z2Error> {
    let alt = |i: usize| if i.is_multiple_of(2) { 1 } else { -1 };
    let lhs = xs
        .bits()
        .iter()
        .enumerate()
        .map(|(i, &x)| alt(i) * xor_mod2(x, z).value())
        .sum();
    let signed: i64 = xs
        .bits()
        .iter()
        .enumerate()
        .map(|(i, x)| alt(i) * x.value())
        .sum();
    let correction = if xs.len().is_multiple_of(2) { 1 } else { 0 };
    let rhs = tilde_oplus(signed, z.value())? - correction * z.value();
    Ok((lhs, rhs))
}

/// Checks both shift-sum identities on `trials` random `(xs, z)` with
/// `xs` of length `n`.
pub fn verify_lemma2<R: Rng + ?Sized>(
    n: usize,
    trials: u64,
    rng: &mut R,
) -> Result<VerificationReport, Z2Error> {
    check_n_range(n, 1, usize::MAX)?;
    let name = format!("lemma2 n={n}");
    for trial in 0..trials.max(1) {
        let xs = BitVector::new((0..n).map(|_| Bit::from(rng.random::<bool>())).collect())?;
        let z = Bit::from(rng.random::<bool>());
        let sum = lemma2_sum_sides(&xs, z)?;
        let alternating = lemma2_alternating_sides(&xs, z)?;
        let failure = if sum.0 != sum.1 {
            Some(format!("sum identity: {} != {}", sum.0, sum.1))
        } else if alternating.0 != alternating.1 {
            Some(format!(
                "alternating identity: {} != {}",
                alternating.0, alternating.1
            ))
        } else {
            None
        };
        if let Some(detail) = failure {
            return Ok(VerificationReport {
                check: name,
                cases: trial + 1,
                counterexample: Some(Counterexample {
                    case: format!("xs={xs} z={z}"),
                    detail,
                }),
            });
        }
    }
    Ok(VerificationReport {
        check: name,
        cases: trials.max(1),
        counterexample: None,
    })
}

/// Row `n` of Pascal's triangle by the additive recurrence.
pub fn binomial_row(n: usize) -> Result<Vec<i64>, Z2Error> {
    let mut row = vec![1i64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        for w in row.windows(2) {
            next.push(
                w[0].checked_add(w[1])
                    .ok_or(Z2Error::Overflow("binomial_row"))?,
            );
        }
        next.push(1);
        row = next;
    }
    Ok(row)
}

/// `(Σ_{i=1}^{n−1} (−1)^i (C(n,i) − 1), −(1 + (−1)^n)/2)` in exact integers.
pub fn verify_lemma3(n: usize) -> Result<(i64, i64), Z2Error> {
    check_n_range(n, 2, usize::MAX)?;
    let row = binomial_row(n)?;
    let mut lhs = 0i64;
    for (i, &c) in row.iter().enumerate().take(n).skip(1) {
        let term = if i % 2 == 0 { c - 1 } else { 1 - c };
        lhs = lhs
            .checked_add(term)
            .ok_or(Z2Error::Overflow("verify_lemma3"))?;
    }
    let rhs = if n.is_multiple_of(2) { -1 } else { 0 };
    Ok((lhs, rhs))
}
