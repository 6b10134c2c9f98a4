//! Deterministic seeding and randomness.
//!
//! Every random decision made by a generator is drawn from an [`RngStream`]
//! obtained by [`split_stream`] from a [`Seed64`], which in turn is a hash of
//! the student's identity. The whole bundle is therefore a pure function of
//! `(student_id, slot, variant, params)`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;

use crate::error::{Error, Exhausted};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const FIELD_SEPARATOR: char = '\u{1F}';

/// Attempt budget for exercise-level regeneration.
pub const EXERCISE_ATTEMPTS: u32 = 1000;
/// Attempt budget for sampling test cases.
pub const SAMPLING_ATTEMPTS: u32 = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed64(pub u64);

impl fmt::Display for Seed64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

fn sha256_prefix_u64(bytes: &[u8]) -> u64 {
    let digest = Sha256::digest(bytes);
    let mut head = [0u8; 8];
    head.copy_from_slice(&digest[..8]);
    u64::from_be_bytes(head)
}

/// Hashes `student_id 0x1F slot 0x1F variant` with SHA-256 and keeps the
/// leading 8 bytes, big-endian.
pub fn derive_seed(student_id: &str, exercise_slot: &str, variant: u64) -> Result<Seed64, Error> {
    if student_id.is_empty() {
        return Err(Error::InvalidInput("student id must not be empty".into()));
    }
    let text = format!("{student_id}{FIELD_SEPARATOR}{exercise_slot}{FIELD_SEPARATOR}{variant}");
    Ok(Seed64(sha256_prefix_u64(text.as_bytes())))
}

/// The splitmix64 output finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Opens the stream named `label` under `seed`. Streams with different labels
/// never share state, so adding a new label cannot perturb existing ones.
pub fn split_stream(seed: Seed64, label: &str) -> RngStream {
    let label_digest = sha256_prefix_u64(label.as_bytes());
    RngStream { state: mix64(seed.0 ^ label_digest) }
}

/// A splitmix64 generator. Single owner, no global state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    state: u64,
}

impl RngStream {
    pub fn from_state(state: u64) -> Self {
        Self { state }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform float in `[0, 1)` built from the top 53 bits of one draw.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[lo, hi]` (inclusive). One draw, multiply-shift
    /// reduction.
    pub fn uniform_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range [{lo}, {hi}]");
        let span = (hi as i128 - lo as i128 + 1) as u128;
        let draw = self.next_u64() as u128;
        if span > u64::MAX as u128 {
            return lo.wrapping_add(draw as i64);
        }
        let offset = (draw * span) >> 64;
        (lo as i128 + offset as i128) as i64
    }

    pub fn uniform_u64(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi, "empty range [{lo}, {hi}]");
        let span = (hi - lo) as u128 + 1;
        let draw = self.next_u64() as u128;
        if span > u64::MAX as u128 {
            return draw as u64;
        }
        lo + ((draw * span) >> 64) as u64
    }

    pub fn uniform_usize(&mut self, lo: usize, hi: usize) -> usize {
        self.uniform_u64(lo as u64, hi as u64) as usize
    }

    /// Index in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        self.uniform_usize(0, n - 1)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }

    /// Weighted index selection. Consumes exactly one draw. Weights must be
    /// non-negative with a positive sum; zero-weight entries are never chosen.
    pub fn weighted(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        assert!(total > 0.0, "weights must have a positive sum");
        let u = self.next_f64();
        let mut cumulative = 0.0;
        let mut last_positive = 0;
        for (i, w) in weights.iter().enumerate() {
            if *w <= 0.0 {
                continue;
            }
            last_positive = i;
            cumulative += w / total;
            if u < cumulative {
                return i;
            }
        }
        last_positive
    }

    /// Fisher–Yates, iterating from the last index down.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetryPolicy {
    pub max_attempts: u32,
    /// Names what was being generated, for the exhaustion diagnostic.
    pub on_exhaust: &'static str,
}

impl RetryPolicy {
    pub fn new(max_attempts: u32, on_exhaust: &'static str) -> Result<Self, Error> {
        if max_attempts == 0 {
            return Err(Error::InvalidInput("max_attempts must be at least 1".into()));
        }
        Ok(Self { max_attempts, on_exhaust })
    }

    pub fn exercise(on_exhaust: &'static str) -> Self {
        Self { max_attempts: EXERCISE_ATTEMPTS, on_exhaust }
    }

    pub fn sampling(on_exhaust: &'static str) -> Self {
        Self { max_attempts: SAMPLING_ATTEMPTS, on_exhaust }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Accepted<T> {
    pub value: T,
    pub attempts: u32,
}

/// Draws candidates from `gen` until one passes `check`.
///
/// `gen` returning `None` counts as a rejected attempt. The stream is shared
/// across attempts, so attempt `k` sees the draws left over by attempt `k-1`.
pub fn generate_with_retry<T, G, C>(
    stream: &mut RngStream,
    policy: &RetryPolicy,
    mut gen: G,
    mut check: C,
) -> Result<Accepted<T>, Exhausted>
where
    G: FnMut(&mut RngStream) -> Option<T>,
    C: FnMut(&T) -> bool,
{
    for attempt in 1..=policy.max_attempts.max(1) {
        if let Some(candidate) = gen(stream) {
            if check(&candidate) {
                return Ok(Accepted { value: candidate, attempts: attempt });
            }
        }
    }
    Err(Exhausted { what: policy.on_exhaust.to_string(), attempts: policy.max_attempts })
}
