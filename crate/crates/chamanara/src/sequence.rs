//! Sparse exponent sequences: strictly increasing naturals `s_1 < s_2 < ...`
//! whose increments `s_{n+1} - s_n` tend to infinity, together with a
//! checkable divergence witness `M -> N(M)`.
//!
//! Three JSON-configurable families are supported:
//!
//! ```json
//! {"kind": "polynomial", "coefficients": [0, 0, 1]}
//! {"kind": "exponential", "base": 2, "offset": -1}
//! {"kind": "explicit", "values": [2, 5, 9], "tail": {"kind": "polynomial", "coefficients": [0, 0, 1]}}
//! ```
//!
//! Values saturate at `u64::MAX`, which is treated as "beyond every digit
//! position we will ever query".

use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scan ceiling for witness searches and gap probes.
const SCAN_CAP: u64 = 1 << 20;

/// JSON description of a sequence family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SequenceSpec {
    /// `s_n = c_0 + c_1 n + c_2 n^2 + ...`
    Polynomial { coefficients: Vec<u64> },
    /// `s_n = base^n + offset`
    Exponential { base: u64, offset: i64 },
    /// Finite prefix, then the tail family evaluated at the same index.
    Explicit {
        values: Vec<u64>,
        tail: Box<SequenceSpec>,
    },
}

impl SequenceSpec {
    fn eval(&self, n: u64) -> u64 {
        debug_assert!(n >= 1);
        match self {
            SequenceSpec::Polynomial { coefficients } => {
                let mut acc: u128 = 0;
                for &c in coefficients.iter().rev() {
                    acc = acc.saturating_mul(n as u128).saturating_add(c as u128);
                }
                acc.min(u64::MAX as u128) as u64
            }
            SequenceSpec::Exponential { base, offset } => {
                let p: u128 = (*base as u128)
                    .checked_pow(n.min(200) as u32)
                    .unwrap_or(u128::MAX);
                let v = (p as i128).saturating_add(*offset as i128);
                if v < 0 {
                    0
                } else {
                    (v as u128).min(u64::MAX as u128) as u64
                }
            }
            SequenceSpec::Explicit { values, tail } => {
                if n as usize <= values.len() {
                    values[n as usize - 1]
                } else {
                    tail.eval(n)
                }
            }
        }
    }

    /// Index past which increments are nondecreasing, for families where
    /// that holds by shape (validated elsewhere).
    fn monotone_from(&self) -> u64 {
        match self {
            SequenceSpec::Polynomial { .. } | SequenceSpec::Exponential { .. } => 1,
            SequenceSpec::Explicit { values, tail } => {
                (values.len() as u64 + 1).max(tail.monotone_from())
            }
        }
    }

    /// Structural check that a genuine divergence witness exists for this
    /// family: polynomial of degree >= 2 with positive leading coefficient,
    /// exponential with base >= 2, or an explicit prefix over such a tail.
    fn has_divergence_witness(&self) -> std::result::Result<(), String> {
        match self {
            SequenceSpec::Polynomial { coefficients } => {
                let degree = coefficients.iter().rposition(|&c| c != 0);
                match degree {
                    Some(d) if d >= 2 => Ok(()),
                    _ => Err(
                        "polynomial must have degree >= 2 (linear increments never diverge)".into(),
                    ),
                }
            }
            SequenceSpec::Exponential { base, .. } => {
                if *base >= 2 {
                    Ok(())
                } else {
                    Err("exponential base must be >= 2".into())
                }
            }
            SequenceSpec::Explicit { tail, .. } => tail.has_divergence_witness(),
        }
    }
}

struct SeqInner {
    spec: SequenceSpec,
    /// Memoized values s_1, s_2, ... (1-indexed externally).
    memo: Mutex<Vec<u64>>,
}

/// A sparse exponent sequence with memoized evaluation.
///
/// Cloning shares the memo; all methods are safe to call concurrently.
#[derive(Clone)]
pub struct SparseSequence {
    inner: Arc<SeqInner>,
}

impl std::fmt::Debug for SparseSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SparseSequence({:?})", self.inner.spec)
    }
}

impl PartialEq for SparseSequence {
    fn eq(&self, other: &Self) -> bool {
        self.inner.spec == other.inner.spec
    }
}
impl Eq for SparseSequence {}

impl SparseSequence {
    /// Builds a sequence from its family description, checking only the
    /// structural invariants (values >= 1, strictly increasing on a prefix).
    ///
    /// Sequences without a genuine divergence witness are allowed here so
    /// that [`verify_divergence`](Self::verify_divergence) can report their
    /// violations; use [`parse_sequence_spec`] for inputs that must be
    /// members of the divergent-increment class.
    pub fn new(spec: SequenceSpec) -> Result<Self> {
        if let SequenceSpec::Explicit { values, tail } = &spec {
            for w in values.windows(2) {
                if w[1] <= w[0] {
                    return Err(Error::InvalidSequence(format!(
                        "explicit values not strictly increasing: {} then {}",
                        w[0], w[1]
                    )));
                }
            }
            if let Some(&last) = values.last() {
                let next = tail.eval(values.len() as u64 + 1);
                if next <= last {
                    return Err(Error::InvalidSequence(format!(
                        "tail value {next} does not continue past explicit prefix ending at {last}"
                    )));
                }
            }
        }
        let seq = SparseSequence {
            inner: Arc::new(SeqInner {
                spec,
                memo: Mutex::new(Vec::new()),
            }),
        };
        if seq.value(1) < 1 {
            return Err(Error::InvalidSequence(
                "s_1 must be a positive integer".into(),
            ));
        }
        for n in 1..64 {
            let a = seq.value(n);
            if a == u64::MAX {
                // saturated: past every digit position we can query
                break;
            }
            let b = seq.value(n + 1);
            if b <= a {
                return Err(Error::InvalidSequence(format!(
                    "not strictly increasing at n = {n}: s_n = {a}, s_(n+1) = {b}"
                )));
            }
        }
        Ok(seq)
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.inner.spec
    }

    /// `s_n`, 1-indexed.
    pub fn value(&self, n: u64) -> u64 {
        debug_assert!(n >= 1);
        let mut memo = self.inner.memo.lock().unwrap();
        while (memo.len() as u64) < n {
            let next = self.inner.spec.eval(memo.len() as u64 + 1);
            memo.push(next);
        }
        memo[n as usize - 1]
    }

    /// True when `pos` is one of the sequence values.
    pub fn contains(&self, pos: u64) -> bool {
        let mut n = 1;
        loop {
            let v = self.value(n);
            if v == pos {
                return true;
            }
            if v > pos {
                return false;
            }
            n += 1;
        }
    }

    /// Smallest sequence value strictly greater than `pos`.
    pub fn next_value_after(&self, pos: u64) -> u64 {
        let mut n = 1;
        loop {
            let v = self.value(n);
            if v > pos {
                return v;
            }
            n += 1;
        }
    }

    /// Smallest position > `pos` that is *not* a sequence value, or `None`
    /// if no gap shows up within the scan cap.
    pub fn next_gap_after(&self, pos: u64) -> Option<u64> {
        let mut candidate = pos + 1;
        let mut n = 1;
        while candidate <= pos.saturating_add(SCAN_CAP) {
            while self.value(n) < candidate {
                n += 1;
            }
            if self.value(n) != candidate {
                return Some(candidate);
            }
            candidate += 1;
        }
        None
    }

    /// The divergence witness `N(M)`: an index past which every increment is
    /// claimed to be at least `M`. `None` when the scan cap is reached
    /// without establishing one (the family does not diverge).
    pub fn witness_index(&self, threshold: u64) -> Option<u64> {
        let monotone_from = self.inner.spec.monotone_from();
        // Last pre-monotone violation, if any.
        let mut witness = 1u64;
        for n in 1..=monotone_from {
            if self.increment(n) < threshold {
                witness = n + 1;
            }
        }
        // First index in the monotone region with a large enough increment.
        let mut n = monotone_from.max(witness);
        while n <= SCAN_CAP {
            if self.increment(n) >= threshold {
                return Some(n.max(witness));
            }
            n += 1;
        }
        None
    }

    fn increment(&self, n: u64) -> u64 {
        let next = self.value(n + 1);
        if next == u64::MAX {
            // saturated: past every digit position we can ever query
            return u64::MAX;
        }
        next - self.value(n)
    }

    /// Checks `s_{n+1} - s_n >= threshold` for every `n` in
    /// `[N(threshold), horizon]`, reporting the first violation.
    pub fn verify_divergence(&self, threshold: u64, horizon: u64) -> Result<()> {
        let start = self.witness_index(threshold).unwrap_or(1);
        if horizon < start {
            return Err(Error::HorizonBelowWitness {
                horizon,
                witness: start,
                threshold,
            });
        }
        for n in start..=horizon {
            let inc = self.increment(n);
            if inc < threshold {
                return Err(Error::DivergenceViolation {
                    index: n,
                    next: n + 1,
                    increment: inc,
                    required: threshold,
                });
            }
        }
        Ok(())
    }

    /// Spot-checks divergence at the default desk-scale checkpoints.
    pub fn check_divergence_defaults(&self) -> Result<()> {
        for threshold in [2u64, 4, 8, 16] {
            let witness = self.witness_index(threshold).ok_or_else(|| {
                Error::DivergenceCheckFailed(format!(
                    "no index past which increments reach {threshold} (scanned {SCAN_CAP})"
                ))
            })?;
            self.verify_divergence(threshold, witness + 64)
                .map_err(|e| match e {
                    Error::DivergenceViolation {
                        index,
                        increment,
                        required,
                        ..
                    } => Error::DivergenceCheckFailed(format!(
                        "increment {increment} at index {index} below required {required}"
                    )),
                    other => other,
                })?;
        }
        Ok(())
    }
}

/// Parses a JSON sequence description and requires a genuine divergence
/// witness: this is the entry point for sequences that must belong to the
/// divergent-increment class.
pub fn parse_sequence_spec(json: &str) -> Result<SparseSequence> {
    let spec: SequenceSpec = serde_json::from_str(json)?;
    sequence_with_witness(spec)
}

/// As [`parse_sequence_spec`] but from an already-parsed spec.
pub fn sequence_with_witness(spec: SequenceSpec) -> Result<SparseSequence> {
    spec.has_divergence_witness()
        .map_err(Error::InvalidSequence)?;
    SparseSequence::new(spec)
}
