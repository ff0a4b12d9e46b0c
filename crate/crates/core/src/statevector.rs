//! Dense statevector simulation of the exchange circuits.
//!
//! States are tracked as 2^q complex amplitudes over a [`RegisterLayout`] of
//! named qubit blocks. The global index convention is fixed here and used by
//! every other module: blocks are listed top-to-bottom with the *last* listed
//! block most significant, so for the three-party layout CIR(n), COR(1),
//! BIR(n), BOR(1), AIR(n) a basis state decomposes as
//!
//! ```text
//! index = ((((a·2 + bor)·2^n + b)·2 + cor)·2^n + c
//! ```
//!
//! Within a block, bit k of the content integer sits at global qubit
//! `offset + k`.
//!
//! Two register sets are supported: the three-party set backed by n GHZ
//! triplets, and the two-party set backed by n Bell pairs. Each comes in a
//! `full` form (output qubits present, oracles applied as genuine XOR
//! oracles) and a `reduced` form (output qubits dropped, oracles applied as
//! the equivalent diagonal phases).

use num_complex::Complex64;
use rand::Rng;

use crate::bitvec::BitVector;
use crate::error::{Error, Result};

/// Alice's n-qubit input register.
pub const AIR: &str = "AIR";
/// Bob's n-qubit input register.
pub const BIR: &str = "BIR";
/// Bob's single-qubit output register.
pub const BOR: &str = "BOR";
/// Charlie's n-qubit input register.
pub const CIR: &str = "CIR";
/// Charlie's single-qubit output register.
pub const COR: &str = "COR";

/// Default total-qubit budget: 2^26 amplitudes is ~1 GiB at 16 bytes each.
pub const DEFAULT_QUBIT_CAP: usize = 26;

/// Absolute tolerance for amplitude comparisons.
pub const AMP_TOL: f64 = 1e-12;
/// Absolute tolerance for probability comparisons.
pub const PROB_TOL: f64 = 1e-10;

/// Norm below which a state is considered corrupted rather than small.
const DEGENERATE_NORM: f64 = 1e-9;
/// Largest probability table handed out, in bits.
const TABLE_CAP_BITS: usize = DEFAULT_QUBIT_CAP;

#[derive(Debug, Clone)]
struct Block {
    name: String,
    width: usize,
    offset: usize,
}

/// Named qubit blocks with their global bit positions.
#[derive(Debug, Clone)]
pub struct RegisterLayout {
    blocks: Vec<Block>,
    total: usize,
}

impl RegisterLayout {
    /// Builds a layout from `(name, width)` pairs in listing order; the first
    /// listed block occupies the least significant bits.
    ///
    /// Panics on duplicate names, zero widths, or more qubits than an index
    /// can hold; layouts are fixed at compile sites, so misuse is a bug.
    pub fn new(blocks: &[(&str, usize)]) -> Self {
        let mut out = Vec::with_capacity(blocks.len());
        let mut offset = 0;
        for (name, width) in blocks {
            assert!(*width >= 1, "block {name:?} must have width >= 1");
            assert!(
                out.iter().all(|b: &Block| b.name != *name),
                "duplicate block name {name:?}"
            );
            out.push(Block {
                name: (*name).to_owned(),
                width: *width,
                offset,
            });
            offset += width;
        }
        assert!(offset <= usize::BITS as usize, "layout exceeds index width");
        RegisterLayout {
            blocks: out,
            total: offset,
        }
    }

    /// Three-party layout: CIR(n), COR(1), BIR(n), BOR(1), AIR(n).
    pub fn three_party(n: usize) -> Self {
        Self::new(&[(CIR, n), (COR, 1), (BIR, n), (BOR, 1), (AIR, n)])
    }

    /// Three-party layout without output qubits: CIR(n), BIR(n), AIR(n).
    pub fn three_party_reduced(n: usize) -> Self {
        Self::new(&[(CIR, n), (BIR, n), (AIR, n)])
    }

    /// Two-party layout: CIR(n), COR(1), BIR(n), BOR(1).
    pub fn two_party(n: usize) -> Self {
        Self::new(&[(CIR, n), (COR, 1), (BIR, n), (BOR, 1)])
    }

    /// Two-party layout without output qubits: CIR(n), BIR(n).
    pub fn two_party_reduced(n: usize) -> Self {
        Self::new(&[(CIR, n), (BIR, n)])
    }

    pub fn total_qubits(&self) -> usize {
        self.total
    }

    /// `(offset, width)` of a named block.
    pub fn block_span(&self, name: &str) -> Result<(usize, usize)> {
        self.blocks
            .iter()
            .find(|b| b.name == name)
            .map(|b| (b.offset, b.width))
            .ok_or_else(|| Error::UnknownBlock {
                name: name.to_owned(),
            })
    }

    /// Global index of a basis state given per-block contents, e.g.
    /// `&[(AIR, 0b10), (BOR, 1)]`; unlisted blocks are zero.
    pub fn basis_index(&self, contents: &[(&str, usize)]) -> Result<usize> {
        let mut index = 0;
        for (name, value) in contents {
            let (offset, width) = self.block_span(name)?;
            assert!(*value < (1 << width), "content exceeds block width");
            index |= value << offset;
        }
        Ok(index)
    }

    /// Content of `block` within a global basis index.
    pub fn content_of(&self, block: &str, index: usize) -> Result<usize> {
        let (offset, width) = self.block_span(block)?;
        Ok((index >> offset) & ((1 << width) - 1))
    }
}

/// Dense array of 2^q complex amplitudes over a register layout.
#[derive(Debug, Clone)]
pub struct StateVector {
    layout: RegisterLayout,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state at `index`.
    pub fn basis(layout: RegisterLayout, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << layout.total_qubits()];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { layout, amps }
    }

    /// Wraps explicit amplitudes; the caller supplies a normalized vector of
    /// exactly 2^q entries.
    pub fn from_amplitudes(layout: RegisterLayout, amps: Vec<Complex64>) -> Self {
        assert_eq!(amps.len(), 1 << layout.total_qubits(), "amplitude count");
        StateVector { layout, amps }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Single-qubit Hadamard on a global qubit index.
    pub fn apply_hadamard(&mut self, qubit: usize) -> Result<()> {
        let total = self.layout.total_qubits();
        if qubit >= total {
            return Err(Error::IndexOutOfRange {
                index: qubit,
                total,
            });
        }
        let mask = 1usize << qubit;
        for idx in 0..self.amps.len() {
            if idx & mask == 0 {
                let a0 = self.amps[idx];
                let a1 = self.amps[idx | mask];
                self.amps[idx] = (a0 + a1) * std::f64::consts::FRAC_1_SQRT_2;
                self.amps[idx | mask] = (a0 - a1) * std::f64::consts::FRAC_1_SQRT_2;
            }
        }
        Ok(())
    }

    /// Controlled-NOT between two global qubit indices.
    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        let total = self.layout.total_qubits();
        for q in [control, target] {
            if q >= total {
                return Err(Error::IndexOutOfRange { index: q, total });
            }
        }
        assert_ne!(control, target, "control and target must differ");
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for idx in 0..self.amps.len() {
            if idx & cmask != 0 && idx & tmask == 0 {
                self.amps.swap(idx, idx | tmask);
            }
        }
        Ok(())
    }

    /// Hadamard on every qubit of a block.
    pub fn apply_hadamard_block(&mut self, block: &str) -> Result<()> {
        let (offset, width) = self.layout.block_span(block)?;
        for q in offset..offset + width {
            self.apply_hadamard(q)?;
        }
        Ok(())
    }

    /// Diagonal phase oracle: multiplies each basis component whose block
    /// content is x by (−1)^(pattern·x). This is the phase-kickback image of
    /// the XOR oracle and the whole oracle in reduced mode.
    pub fn apply_phase_oracle(&mut self, block: &str, pattern: &BitVector) -> Result<()> {
        let (offset, width) = self.layout.block_span(block)?;
        if pattern.len() != width {
            return Err(Error::LengthMismatch {
                left: pattern.len(),
                right: width,
            });
        }
        let m = pattern.to_index();
        let wmask = (1usize << width) - 1;
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            let x = (idx >> offset) & wmask;
            if (x & m).count_ones() & 1 == 1 {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    /// Genuine XOR oracle |y⟩|x⟩ → |y ⊕ pattern·x⟩|x⟩ over a single-qubit
    /// output block and an input block. With the output in |−⟩ this reproduces
    /// [`apply_phase_oracle`] on the input block.
    pub fn apply_xor_oracle(
        &mut self,
        output_block: &str,
        input_block: &str,
        pattern: &BitVector,
    ) -> Result<()> {
        let (out_offset, out_width) = self.layout.block_span(output_block)?;
        if out_width != 1 {
            return Err(Error::LengthMismatch {
                left: out_width,
                right: 1,
            });
        }
        let (in_offset, in_width) = self.layout.block_span(input_block)?;
        if pattern.len() != in_width {
            return Err(Error::LengthMismatch {
                left: pattern.len(),
                right: in_width,
            });
        }
        let m = pattern.to_index();
        let wmask = (1usize << in_width) - 1;
        let omask = 1usize << out_offset;
        for idx in 0..self.amps.len() {
            if idx & omask == 0 {
                let x = (idx >> in_offset) & wmask;
                if (x & m).count_ones() & 1 == 1 {
                    self.amps.swap(idx, idx | omask);
                }
            }
        }
        Ok(())
    }

    /// Exact Born-rule marginal over several blocks jointly. The first named
    /// block is most significant in the returned table's index.
    pub fn joint_marginal(&self, blocks: &[&str]) -> Result<Vec<f64>> {
        let spans = blocks
            .iter()
            .map(|b| self.layout.block_span(b))
            .collect::<Result<Vec<_>>>()?;
        let bits: usize = spans.iter().map(|(_, w)| w).sum();
        if bits > TABLE_CAP_BITS {
            return Err(Error::TableTooLarge {
                bits,
                max: TABLE_CAP_BITS,
            });
        }
        let mut table = vec![0.0; 1 << bits];
        for (idx, amp) in self.amps.iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut key = 0;
            for &(offset, width) in &spans {
                key = (key << width) | ((idx >> offset) & ((1 << width) - 1));
            }
            table[key] += p;
        }
        Ok(table)
    }

    /// Exact Born-rule marginal of a single block.
    pub fn block_marginal(&self, block: &str) -> Result<Vec<f64>> {
        self.joint_marginal(&[block])
    }

    /// Projects a block onto a definite outcome and renormalizes, returning
    /// the prior probability of that outcome.
    pub fn project_block(&mut self, block: &str, outcome: &BitVector) -> Result<f64> {
        let (offset, width) = self.layout.block_span(block)?;
        if outcome.len() != width {
            return Err(Error::LengthMismatch {
                left: outcome.len(),
                right: width,
            });
        }
        let target = outcome.to_index();
        let wmask = (1usize << width) - 1;
        let mut p = 0.0;
        for (idx, amp) in self.amps.iter().enumerate() {
            if (idx >> offset) & wmask == target {
                p += amp.norm_sqr();
            }
        }
        if p < 1e-300 {
            return Err(Error::DegenerateState);
        }
        let scale = p.sqrt().recip();
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            if (idx >> offset) & wmask == target {
                *amp *= scale;
            } else {
                *amp = Complex64::new(0.0, 0.0);
            }
        }
        Ok(p)
    }

    /// Samples a block by the Born rule, collapses the state, and returns the
    /// outcome. Consumes exactly one uniform draw from `rng`.
    pub fn measure_block<R: Rng + ?Sized>(
        &mut self,
        block: &str,
        rng: &mut R,
    ) -> Result<BitVector> {
        let (offset, width) = self.layout.block_span(block)?;
        let total = self.norm_sqr();
        if total < DEGENERATE_NORM {
            return Err(Error::DegenerateState);
        }
        let mut u = rng.random::<f64>() * total;
        let mut chosen = None;
        for (idx, amp) in self.amps.iter().enumerate() {
            let p = amp.norm_sqr();
            if p <= 0.0 {
                continue;
            }
            chosen = Some(idx);
            if u < p {
                break;
            }
            u -= p;
        }
        let idx = chosen.ok_or(Error::DegenerateState)?;
        let outcome = BitVector::from_index((idx >> offset) & ((1 << width) - 1), width);
        self.project_block(block, &outcome)?;
        Ok(outcome)
    }

    /// Fidelity of a single-qubit block's reduced state with |−⟩⟨−|.
    pub fn output_register_fidelity(&self, block: &str) -> Result<f64> {
        let (offset, width) = self.layout.block_span(block)?;
        if width != 1 {
            return Err(Error::LengthMismatch {
                left: width,
                right: 1,
            });
        }
        let mask = 1usize << offset;
        let mut fidelity = 0.0;
        for idx in 0..self.amps.len() {
            if idx & mask == 0 {
                let d = self.amps[idx] - self.amps[idx | mask];
                fidelity += 0.5 * d.norm_sqr();
            }
        }
        Ok(fidelity)
    }
}

fn check_budget(n: usize, total: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    if total > cap {
        return Err(Error::QubitLimitExceeded {
            required: total,
            cap,
        });
    }
    Ok(())
}

/// n GHZ triplets across the three input registers, output registers in |1⟩.
/// The 2^n support amplitudes are written directly.
pub fn prepare_ghz3n(n: usize, qubit_cap: usize) -> Result<StateVector> {
    check_budget(n, 3 * n + 2, qubit_cap)?;
    let layout = RegisterLayout::three_party(n);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << layout.total_qubits()];
    let amp = Complex64::new(((1u64 << n) as f64).sqrt().recip(), 0.0);
    for x in 0..1usize << n {
        let idx = layout.basis_index(&[(AIR, x), (BIR, x), (CIR, x), (BOR, 1), (COR, 1)])?;
        amps[idx] = amp;
    }
    Ok(StateVector::from_amplitudes(layout, amps))
}

/// Same state as [`prepare_ghz3n`] built gate by gate: per triplet, a
/// Hadamard on Alice's qubit and a CNOT chain through Bob's and Charlie's.
pub fn prepare_ghz3n_via_gates(n: usize, qubit_cap: usize) -> Result<StateVector> {
    check_budget(n, 3 * n + 2, qubit_cap)?;
    let layout = RegisterLayout::three_party(n);
    let init = layout.basis_index(&[(BOR, 1), (COR, 1)])?;
    let (air, _) = layout.block_span(AIR)?;
    let (bir, _) = layout.block_span(BIR)?;
    let (cir, _) = layout.block_span(CIR)?;
    let mut state = StateVector::basis(layout, init);
    for k in 0..n {
        state.apply_hadamard(air + k)?;
        state.apply_cnot(air + k, bir + k)?;
        state.apply_cnot(bir + k, cir + k)?;
    }
    Ok(state)
}

/// Reduced three-party preparation: the GHZ support over CIR, BIR, AIR only.
pub fn prepare_ghz3n_reduced(n: usize, qubit_cap: usize) -> Result<StateVector> {
    check_budget(n, 3 * n, qubit_cap)?;
    let layout = RegisterLayout::three_party_reduced(n);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << layout.total_qubits()];
    let amp = Complex64::new(((1u64 << n) as f64).sqrt().recip(), 0.0);
    for x in 0..1usize << n {
        let idx = layout.basis_index(&[(AIR, x), (BIR, x), (CIR, x)])?;
        amps[idx] = amp;
    }
    Ok(StateVector::from_amplitudes(layout, amps))
}

/// n Bell pairs across BIR and CIR, output registers in |1⟩.
pub fn prepare_bell_pairs(n: usize, qubit_cap: usize) -> Result<StateVector> {
    check_budget(n, 2 * n + 2, qubit_cap)?;
    let layout = RegisterLayout::two_party(n);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << layout.total_qubits()];
    let amp = Complex64::new(((1u64 << n) as f64).sqrt().recip(), 0.0);
    for x in 0..1usize << n {
        let idx = layout.basis_index(&[(BIR, x), (CIR, x), (BOR, 1), (COR, 1)])?;
        amps[idx] = amp;
    }
    Ok(StateVector::from_amplitudes(layout, amps))
}

/// Gate-built version of [`prepare_bell_pairs`].
pub fn prepare_bell_pairs_via_gates(n: usize, qubit_cap: usize) -> Result<StateVector> {
    check_budget(n, 2 * n + 2, qubit_cap)?;
    let layout = RegisterLayout::two_party(n);
    let init = layout.basis_index(&[(BOR, 1), (COR, 1)])?;
    let (bir, _) = layout.block_span(BIR)?;
    let (cir, _) = layout.block_span(CIR)?;
    let mut state = StateVector::basis(layout, init);
    for k in 0..n {
        state.apply_hadamard(bir + k)?;
        state.apply_cnot(bir + k, cir + k)?;
    }
    Ok(state)
}

/// Reduced two-party preparation: the Bell support over CIR and BIR only.
pub fn prepare_bell_pairs_reduced(n: usize, qubit_cap: usize) -> Result<StateVector> {
    check_budget(n, 2 * n, qubit_cap)?;
    let layout = RegisterLayout::two_party_reduced(n);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << layout.total_qubits()];
    let amp = Complex64::new(((1u64 << n) as f64).sqrt().recip(), 0.0);
    for x in 0..1usize << n {
        let idx = layout.basis_index(&[(BIR, x), (CIR, x)])?;
        amps[idx] = amp;
    }
    Ok(StateVector::from_amplitudes(layout, amps))
}
