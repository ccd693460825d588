//! Transform patterns.
//!
//! A pattern is a finite bit string `α`; bit 0 selects the check-side
//! transform and bit 1 the bit-side transform, applied leftmost first.
//! Patterns double as synthetic-channel indices, ordered by their binary
//! value `b(α)` with the leftmost bit most significant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternIndex {
    bits: Vec<u8>,
}

impl PatternIndex {
    pub fn empty() -> Self {
        PatternIndex { bits: Vec::new() }
    }

    /// Builds from explicit bits, leftmost first. Panics on non-bit values.
    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "pattern bits must be 0 or 1");
        PatternIndex { bits: bits.to_vec() }
    }

    /// The pattern of length `k` with binary value `value` (leftmost bit most
    /// significant), i.e. the inverse of [`b_value`](Self::b_value).
    pub fn from_value(value: u64, k: u32) -> Self {
        let bits = (0..k).map(|i| ((value >> (k - 1 - i)) & 1) as u8).collect();
        PatternIndex { bits }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `b(α) = Σ d_i 2^(k-1-i)`.
    pub fn b_value(&self) -> u64 {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }

    /// Appends one transform step.
    pub fn child(&self, bit: u8) -> Self {
        assert!(bit <= 1);
        let mut bits = self.bits.clone();
        bits.push(bit);
        PatternIndex { bits }
    }

    /// Maximal runs as `(bit, length)`, leftmost run first.
    pub fn runs(&self) -> Vec<(u8, usize)> {
        let mut out: Vec<(u8, usize)> = Vec::new();
        for &b in &self.bits {
            match out.last_mut() {
                Some((bit, len)) if *bit == b => *len += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    /// All `2^k` patterns of length `k` in ascending `b(α)` order.
    pub fn all_of_length(k: u32) -> impl Iterator<Item = PatternIndex> {
        (0..(1u64 << k)).map(move |v| PatternIndex::from_value(v, k))
    }
}

impl fmt::Display for PatternIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PatternIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for PatternIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(Error::Parse(format!("invalid pattern {s:?}; expected bits"))),
            }
        }
        Ok(PatternIndex { bits })
    }
}

impl Serialize for PatternIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PatternIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
