//! Exact GF(2) bit-vector algebra.
//!
//! A [`BitVector`] is an ordered sequence of bits written most-significant
//! first: the textual form `"101"` stands for x₂=1, x₁=0, x₀=1, matching the
//! ket |x₂⟩|x₁⟩|x₀⟩. Every split and concatenation below is defined over this
//! rendering, so there is a single endianness convention for the whole crate.
//!
//! The empty vector `ε` (rendered as `""`) is a legal value for all
//! operations; only the protocol layer insists on nonzero total length.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An immutable vector of bits, most-significant bit first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: Vec<u8>,
}

impl BitVector {
    /// The empty vector ε.
    pub fn empty() -> Self {
        Self { bits: Vec::new() }
    }

    /// All-zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![0; len],
        }
    }

    /// Builds a vector from raw bits in display order (index 0 is the
    /// most-significant bit). Panics if any element is not 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        Self { bits }
    }

    /// Interprets the low `width` bits of `index` as a vector, most
    /// significant first. `from_index(0b101, 3)` renders as `"101"`.
    pub fn from_index(index: usize, width: usize) -> Self {
        assert!(width <= usize::BITS as usize, "width too large");
        let bits = (0..width).rev().map(|k| ((index >> k) & 1) as u8).collect();
        Self { bits }
    }

    /// Uniformly random vector of the given length.
    pub fn random<R: rand::Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let bits = (0..len).map(|_| rng.random::<bool>() as u8).collect();
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// True when every bit is zero (vacuously true for ε).
    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Bits in display order (most significant first).
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The vector as an unsigned integer; `"110"` maps to 6.
    ///
    /// Panics for vectors longer than the machine word. Register contents and
    /// audit candidates are bounded far below that; arbitrary-length secrets
    /// never go through this.
    pub fn to_index(&self) -> usize {
        assert!(
            self.len() <= usize::BITS as usize,
            "vector too long for an index"
        );
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    /// Inner product modulo 2: zₙ₋₁xₙ₋₁ ⊕ … ⊕ z₀x₀.
    pub fn dot_mod2(&self, other: &Self) -> Result<u8> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .fold(0, |acc, (&z, &x)| acc ^ (z & x)))
    }

    /// Elementwise exclusive-or.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Self {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&u, &v)| u ^ v)
                .collect(),
        })
    }

    /// Concatenation with `self` in the high (leftmost) positions.
    pub fn concat(&self, lo: &Self) -> Self {
        let mut bits = Vec::with_capacity(self.len() + lo.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&lo.bits);
        Self { bits }
    }

    /// Splits into `(hi, lo)` with `|hi| = hi_len`; inverse of [`concat`].
    ///
    /// [`concat`]: BitVector::concat
    pub fn split_at(&self, hi_len: usize) -> Result<(Self, Self)> {
        if hi_len > self.len() {
            return Err(Error::LengthMismatch {
                left: hi_len,
                right: self.len(),
            });
        }
        Ok((
            Self {
                bits: self.bits[..hi_len].to_vec(),
            },
            Self {
                bits: self.bits[hi_len..].to_vec(),
            },
        ))
    }

    /// Auxiliary form of a high-side secret: `self` followed by `zeros` low
    /// zeros, so it acts on the full-width register.
    pub fn pad_zeros_low(&self, zeros: usize) -> Self {
        self.concat(&Self::zeros(zeros))
    }

    /// Auxiliary form of a low-side secret: `zeros` high zeros followed by
    /// `self`.
    pub fn pad_zeros_high(&self, zeros: usize) -> Self {
        Self::zeros(zeros).concat(self)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(\"{self}\")")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses the canonical ASCII form over {0,1}; `""` is ε.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (position, character) in s.chars().enumerate() {
            match character {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => {
                    return Err(Error::InvalidBitChar {
                        position,
                        character,
                    })
                }
            }
        }
        Ok(Self { bits })
    }
}

impl serde::Serialize for BitVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BitVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
