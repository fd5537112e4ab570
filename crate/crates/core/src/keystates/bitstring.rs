use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Classical key value: a bitstring of length up to 32.
///
/// Bit `i` is the i-th raw key bit; the length-0 string is the abort
/// symbol. Ordering is by length first, then by value, so enumeration and
/// serialization are deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    len: u8,
    bits: u64,
}

impl BitString {
    pub const MAX_LEN: usize = 32;

    /// The empty bitstring (the abort key value).
    pub fn empty() -> Self {
        Self { len: 0, bits: 0 }
    }

    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len > Self::MAX_LEN {
            return Err(Error::InvalidState(format!(
                "key length {len} exceeds maximum {}",
                Self::MAX_LEN
            )));
        }
        if len < 64 && bits >> len != 0 {
            return Err(Error::InvalidState(format!(
                "bit value {bits} does not fit in {len} bits"
            )));
        }
        Ok(Self {
            len: len as u8,
            bits,
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        (self.bits >> i) & 1 == 1
    }

    /// XOR of all bits.
    pub fn parity(&self) -> bool {
        self.bits.count_ones() % 2 == 1
    }

    pub fn concat(&self, other: &BitString) -> Result<BitString> {
        BitString::new(
            self.len() + other.len(),
            self.bits | (other.bits << self.len),
        )
    }

    /// All bitstrings of the given length, in increasing value order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len <= Self::MAX_LEN);
        (0u64..(1u64 << len)).map(move |bits| BitString {
            len: len as u8,
            bits,
        })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut value = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                value |= 1 << i;
            }
        }
        Self::new(bits.len(), value)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::InvalidState(format!(
                        "invalid bitstring character {ch:?}"
                    )))
                }
            }
        }
        Self::from_bits(&bits)
    }
}
