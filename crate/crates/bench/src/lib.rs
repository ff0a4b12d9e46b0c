//! Shared setup for the criterion benches.

use esr_core::bitvec::BitVector;
use esr_core::protocol::{Backend, ExchangeConfig, Variant};

/// A reproducible n-bit exchange split roughly in half, secrets alternating.
pub fn bench_config(n: usize, backend: Backend, variant: Variant) -> ExchangeConfig {
    let len_b = n / 2;
    let pattern = |len: usize| {
        BitVector::from_bits((0..len).map(|k| (k % 2) as u8).collect::<Vec<_>>())
    };
    let mut config = ExchangeConfig::new(pattern(len_b), pattern(n - len_b));
    config.backend = backend;
    config.variant = variant;
    config.master_seed = 0xBE;
    config
}
