//! Closed-form sampler and exact distribution for the measured outcomes.
//!
//! After the oracle and Hadamard layers, the pre-measurement state is uniform
//! over exactly the register triples satisfying a ⊕ b ⊕ c = i (pairs with
//! b ⊕ c = i in the two-party variant). Sampling two registers uniformly and
//! deriving the third reproduces that law exactly, at any n, without touching
//! amplitudes. The statevector engine remains the ground truth: the
//! equivalence is re-verified against it in tests rather than assumed.

use rand::Rng;

use crate::bitvec::BitVector;
use crate::error::{Error, Result};

/// Largest n for which a dense 2^(3n) table is handed out.
pub const MAX_TABLE_N: usize = 6;

/// One correlated measurement result of the three input registers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeTriple {
    pub a: BitVector,
    pub b: BitVector,
    pub c: BitVector,
}

/// Draws one triple uniformly from the 2^(2n) solutions of a ⊕ b ⊕ c = i:
/// `a` and `b` are free and uniform, `c` is determined.
pub fn sample_outcome<R: Rng + ?Sized>(i: &BitVector, rng: &mut R) -> Result<OutcomeTriple> {
    let n = i.len();
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let a = BitVector::random(n, rng);
    let b = BitVector::random(n, rng);
    let c = i.xor(&a.xor(&b)?)?;
    Ok(OutcomeTriple { a, b, c })
}

/// Draws one pair uniformly from the 2^n solutions of b ⊕ c = i.
pub fn sample_outcome_epr<R: Rng + ?Sized>(
    i: &BitVector,
    rng: &mut R,
) -> Result<(BitVector, BitVector)> {
    let n = i.len();
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let b = BitVector::random(n, rng);
    let c = i.xor(&b)?;
    Ok((b, c))
}

/// Dense probability table over triples, indexed as ((a·2^n + b)·2^n + c,
/// the same key order as a statevector joint marginal over AIR, BIR, CIR.
/// Valid triples carry 2^(−2n); everything else is zero.
pub fn exact_distribution(i: &BitVector) -> Result<Vec<f64>> {
    let n = i.len();
    if n == 0 {
        return Err(Error::InvalidN);
    }
    if n > MAX_TABLE_N {
        return Err(Error::TableTooLarge {
            bits: 3 * n,
            max: 3 * MAX_TABLE_N,
        });
    }
    let i_int = i.to_index();
    let p = 1.0 / (1u64 << (2 * n)) as f64;
    let mut table = vec![0.0; 1 << (3 * n)];
    for a in 0..1usize << n {
        for b in 0..1usize << n {
            let c = a ^ b ^ i_int;
            table[((a << n) | b) << n | c] = p;
        }
    }
    Ok(table)
}

/// Two-party analogue of [`exact_distribution`]: table over (b, c) pairs
/// keyed b·2^n + c, with 2^(−n) on the solutions of b ⊕ c = i.
pub fn exact_distribution_epr(i: &BitVector) -> Result<Vec<f64>> {
    let n = i.len();
    if n == 0 {
        return Err(Error::InvalidN);
    }
    if n > MAX_TABLE_N {
        return Err(Error::TableTooLarge {
            bits: 2 * n,
            max: 2 * MAX_TABLE_N,
        });
    }
    let i_int = i.to_index();
    let p = 1.0 / (1u64 << n) as f64;
    let mut table = vec![0.0; 1 << (2 * n)];
    for b in 0..1usize << n {
        table[(b << n) | (b ^ i_int)] = p;
    }
    Ok(table)
}
