//! The exchange state machine: quantum phase sequencing, the classical
//! message round, reconstruction, and transcript assembly.
//!
//! A run is conceptually two halves. The quantum half drives the register
//! circuit through four stages (entangled preparation, output-register
//! rotation, secret encoding via oracles, input-register interference) and
//! measures the input registers. The classical half moves exactly four bit
//! vectors over public channels (two in the two-party variant), after which
//! Bob can reconstruct Charlie's secret and Charlie can reconstruct Bob's,
//! while Alice and any eavesdropper learn nothing, a claim the `audit`
//! module checks mechanically.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analytic;
use crate::bitvec::BitVector;
use crate::error::{Error, Result};
use crate::statevector::{
    self, StateVector, AIR, BIR, BOR, CIR, COR, DEFAULT_QUBIT_CAP,
};

/// Transcript schema version written and accepted by this crate.
pub const FORMAT_VERSION: u32 = 1;

/// How the quantum half is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Statevector with output qubits and genuine XOR oracles.
    Full,
    /// Statevector without output qubits; oracles as diagonal phases.
    Reduced,
    /// Closed-form sampling of the measured outcomes; any n.
    Analytic,
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "full" => Ok(Backend::Full),
            "reduced" => Ok(Backend::Reduced),
            "analytic" => Ok(Backend::Analytic),
            other => Err(format!(
                "unknown backend {other:?} (expected full, reduced, or analytic)"
            )),
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Full => "full",
            Backend::Reduced => "reduced",
            Backend::Analytic => "analytic",
        })
    }
}

/// Which entangled resource backs the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Three parties sharing n GHZ triplets; Alice mediates.
    Ghz3,
    /// Two parties sharing n Bell pairs; no mediator.
    Epr,
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ghz3" => Ok(Variant::Ghz3),
            "epr" => Ok(Variant::Epr),
            other => Err(format!("unknown variant {other:?} (expected ghz3 or epr)")),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Ghz3 => "ghz3",
            Variant::Epr => "epr",
        })
    }
}

/// The three protocol roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
    Charlie,
}

/// One transmission over the public classical channels; `to: None` is a
/// broadcast. Everything that crosses a channel is recorded as one of these
/// and folded into [`PublicMessages`]; the withheld register halves never
/// become a `Message`.
#[derive(Debug, Clone)]
pub struct Message {
    pub from: Party,
    pub to: Option<Party>,
    pub payload: Payload,
}

#[derive(Debug, Clone)]
pub enum Payload {
    Length(usize),
    Bits(BitVector),
}

/// Configuration of one exchange.
#[derive(Debug, Clone)]
pub struct ExchangeConfig {
    /// Bob's secret, destined for Charlie.
    pub i_b: BitVector,
    /// Charlie's secret, destined for Bob.
    pub i_c: BitVector,
    pub backend: Backend,
    pub variant: Variant,
    pub master_seed: u64,
    /// Omit per-party raw outcomes and reconstructed secrets from the
    /// transcript.
    pub redact_private: bool,
    pub qubit_cap: usize,
}

impl ExchangeConfig {
    pub fn new(i_b: BitVector, i_c: BitVector) -> Self {
        ExchangeConfig {
            i_b,
            i_c,
            backend: Backend::Analytic,
            variant: Variant::Ghz3,
            master_seed: 0,
            redact_private: false,
            qubit_cap: DEFAULT_QUBIT_CAP,
        }
    }

    pub fn n(&self) -> usize {
        self.i_b.len() + self.i_c.len()
    }
}

/// Everything that crossed the public classical channels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicMessages {
    /// (|i_B|, |i_C|) as announced before the run.
    pub len_announcement: (usize, usize),
    /// Alice → Charlie: high half of her outcome.
    #[serde(rename = "a_B")]
    pub a_b: BitVector,
    /// Alice → Bob: low half of her outcome.
    #[serde(rename = "a_C")]
    pub a_c: BitVector,
    /// Bob → Charlie: high half of his outcome; the low half stays private.
    #[serde(rename = "b_B")]
    pub b_b: BitVector,
    /// Charlie → Bob: low half of his outcome; the high half stays private.
    #[serde(rename = "c_C")]
    pub c_c: BitVector,
}

impl PublicMessages {
    /// Folds a recorded wire into the structured form. Channels identify the
    /// payloads: each (sender, receiver) pair carries exactly one vector.
    pub fn from_wire(wire: &[Message]) -> Result<PublicMessages> {
        let mut len_ib = None;
        let mut len_ic = None;
        let mut a_b = None;
        let mut a_c = None;
        let mut b_b = None;
        let mut c_c = None;
        for message in wire {
            let slot = match (&message.from, &message.to, &message.payload) {
                (Party::Bob, None, Payload::Length(l)) => {
                    len_ib = Some(*l);
                    continue;
                }
                (Party::Charlie, None, Payload::Length(l)) => {
                    len_ic = Some(*l);
                    continue;
                }
                (Party::Alice, Some(Party::Charlie), Payload::Bits(v)) => (&mut a_b, v),
                (Party::Alice, Some(Party::Bob), Payload::Bits(v)) => (&mut a_c, v),
                (Party::Bob, Some(Party::Charlie), Payload::Bits(v)) => (&mut b_b, v),
                (Party::Charlie, Some(Party::Bob), Payload::Bits(v)) => (&mut c_c, v),
                other => {
                    return Err(Error::MalformedTranscript {
                        reason: format!("unexpected wire message {other:?}"),
                    })
                }
            };
            if slot.0.replace(slot.1.clone()).is_some() {
                return Err(Error::MalformedTranscript {
                    reason: "duplicate wire message".into(),
                });
            }
        }
        let (len_ib, len_ic) = match (len_ib, len_ic) {
            (Some(b), Some(c)) => (b, c),
            _ => {
                return Err(Error::MalformedTranscript {
                    reason: "missing length announcement".into(),
                })
            }
        };
        Ok(PublicMessages {
            len_announcement: (len_ib, len_ic),
            a_b: a_b.unwrap_or_default(),
            a_c: a_c.unwrap_or_default(),
            b_b: b_b.unwrap_or_default(),
            c_c: c_c.unwrap_or_default(),
        })
    }
}

/// Raw per-party measurement outcomes; `a` is empty in the two-party variant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrivateOutcomes {
    pub a: BitVector,
    pub b: BitVector,
    pub c: BitVector,
}

/// What each receiver computed; empty when the transcript is redacted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reconstructed {
    /// Bob's secret as recovered by Charlie.
    #[serde(rename = "i_B")]
    pub i_b: BitVector,
    /// Charlie's secret as recovered by Bob.
    #[serde(rename = "i_C")]
    pub i_c: BitVector,
}

/// Complete record of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub format_version: u32,
    pub variant: Variant,
    pub n: usize,
    pub len_ib: usize,
    pub len_ic: usize,
    pub seed: u64,
    pub backend: Backend,
    pub public: PublicMessages,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub private: Option<PrivateOutcomes>,
    pub reconstructed: Reconstructed,
    pub success: bool,
}

impl Transcript {
    /// Canonical JSON rendering: pretty-printed, trailing newline, byte
    /// deterministic for a given transcript.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("transcript serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Transcript> {
        serde_json::from_str(text).map_err(|e| Error::MalformedTranscript {
            reason: e.to_string(),
        })
    }
}

/// Renders one transcript as an object, several as an array.
pub fn transcripts_to_json(transcripts: &[Transcript]) -> String {
    if transcripts.len() == 1 {
        transcripts[0].to_json()
    } else {
        let mut s = serde_json::to_string_pretty(transcripts).expect("transcripts serialize");
        s.push('\n');
        s
    }
}

/// Accepts either a single transcript object or an array of them.
pub fn transcripts_from_json(text: &str) -> Result<Vec<Transcript>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedTranscript {
            reason: e.to_string(),
        })?;
    let parse = |v: serde_json::Value| {
        serde_json::from_value::<Transcript>(v).map_err(|e| Error::MalformedTranscript {
            reason: e.to_string(),
        })
    };
    match value {
        serde_json::Value::Array(items) => {
            if items.is_empty() {
                return Err(Error::MalformedTranscript {
                    reason: "empty transcript array".into(),
                });
            }
            items.into_iter().map(parse).collect()
        }
        other => Ok(vec![parse(other)?]),
    }
}

/// How far to advance the quantum circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    /// Entangled registers prepared, output registers in |1⟩.
    Prepared,
    /// Output registers rotated to |−⟩.
    OutputsRotated,
    /// Secrets encoded by the oracles.
    Encoded,
    /// Input registers passed through the Hadamard layer; ready to measure.
    Interfered,
}

/// Runs the circuit in full mode (output qubits present, XOR oracles) up to
/// `stage` and returns the state.
pub fn circuit_state_full(
    i_b: &BitVector,
    i_c: &BitVector,
    variant: Variant,
    stage: Stage,
    qubit_cap: usize,
) -> Result<StateVector> {
    let n = i_b.len() + i_c.len();
    let aux_b = i_b.pad_zeros_low(i_c.len());
    let aux_c = i_c.pad_zeros_high(i_b.len());
    let mut state = match variant {
        Variant::Ghz3 => statevector::prepare_ghz3n(n, qubit_cap)?,
        Variant::Epr => statevector::prepare_bell_pairs(n, qubit_cap)?,
    };
    if stage >= Stage::OutputsRotated {
        for block in [BOR, COR] {
            let (offset, _) = state.layout().block_span(block)?;
            state.apply_hadamard(offset)?;
        }
    }
    if stage >= Stage::Encoded {
        state.apply_xor_oracle(BOR, BIR, &aux_b)?;
        state.apply_xor_oracle(COR, CIR, &aux_c)?;
    }
    if stage >= Stage::Interfered {
        let inputs: &[&str] = match variant {
            Variant::Ghz3 => &[AIR, BIR, CIR],
            Variant::Epr => &[BIR, CIR],
        };
        for block in inputs {
            state.apply_hadamard_block(block)?;
        }
    }
    Ok(state)
}

/// Runs the circuit in reduced mode (no output qubits; oracles as diagonal
/// phases). `Stage::OutputsRotated` is a no-op here.
pub fn circuit_state_reduced(
    i_b: &BitVector,
    i_c: &BitVector,
    variant: Variant,
    stage: Stage,
    qubit_cap: usize,
) -> Result<StateVector> {
    let n = i_b.len() + i_c.len();
    let aux_b = i_b.pad_zeros_low(i_c.len());
    let aux_c = i_c.pad_zeros_high(i_b.len());
    let mut state = match variant {
        Variant::Ghz3 => statevector::prepare_ghz3n_reduced(n, qubit_cap)?,
        Variant::Epr => statevector::prepare_bell_pairs_reduced(n, qubit_cap)?,
    };
    if stage >= Stage::Encoded {
        state.apply_phase_oracle(BIR, &aux_b)?;
        state.apply_phase_oracle(CIR, &aux_c)?;
    }
    if stage >= Stage::Interfered {
        let inputs: &[&str] = match variant {
            Variant::Ghz3 => &[AIR, BIR, CIR],
            Variant::Epr => &[BIR, CIR],
        };
        for block in inputs {
            state.apply_hadamard_block(block)?;
        }
    }
    Ok(state)
}

/// The three-party classical round: each register splits into a high part of
/// width `len_b` and a low part of width `len_c`, and exactly four vectors go
/// out: Alice's two halves, Bob's high half, Charlie's low half.
pub fn classical_round(
    a: &BitVector,
    b: &BitVector,
    c: &BitVector,
    len_b: usize,
    len_c: usize,
) -> Result<PublicMessages> {
    let n = len_b + len_c;
    for v in [a, b, c] {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                left: v.len(),
                right: n,
            });
        }
    }
    let (a_b, a_c) = a.split_at(len_b)?;
    let (b_b, _b_c) = b.split_at(len_b)?; // b_C never crosses a channel
    let (_c_b, c_c) = c.split_at(len_b)?; // c_B never crosses a channel
    let wire = [
        Message {
            from: Party::Bob,
            to: None,
            payload: Payload::Length(len_b),
        },
        Message {
            from: Party::Charlie,
            to: None,
            payload: Payload::Length(len_c),
        },
        Message {
            from: Party::Alice,
            to: Some(Party::Bob),
            payload: Payload::Bits(a_c),
        },
        Message {
            from: Party::Alice,
            to: Some(Party::Charlie),
            payload: Payload::Bits(a_b),
        },
        Message {
            from: Party::Bob,
            to: Some(Party::Charlie),
            payload: Payload::Bits(b_b),
        },
        Message {
            from: Party::Charlie,
            to: Some(Party::Bob),
            payload: Payload::Bits(c_c),
        },
    ];
    PublicMessages::from_wire(&wire)
}

/// The two-party classical round: only Bob's high half and Charlie's low half
/// are transmitted.
pub fn classical_round_epr(
    b: &BitVector,
    c: &BitVector,
    len_b: usize,
    len_c: usize,
) -> Result<PublicMessages> {
    let n = len_b + len_c;
    for v in [b, c] {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                left: v.len(),
                right: n,
            });
        }
    }
    let (b_b, _b_c) = b.split_at(len_b)?;
    let (_c_b, c_c) = c.split_at(len_b)?;
    let wire = [
        Message {
            from: Party::Bob,
            to: None,
            payload: Payload::Length(len_b),
        },
        Message {
            from: Party::Charlie,
            to: None,
            payload: Payload::Length(len_c),
        },
        Message {
            from: Party::Bob,
            to: Some(Party::Charlie),
            payload: Payload::Bits(b_b),
        },
        Message {
            from: Party::Charlie,
            to: Some(Party::Bob),
            payload: Payload::Bits(c_c),
        },
    ];
    PublicMessages::from_wire(&wire)
}

/// Bob's reconstruction of Charlie's secret from the low halves.
pub fn reconstruct_ic(a_c: &BitVector, b_c: &BitVector, c_c: &BitVector) -> Result<BitVector> {
    a_c.xor(&b_c.xor(c_c)?)
}

/// Charlie's reconstruction of Bob's secret from the high halves.
pub fn reconstruct_ib(a_b: &BitVector, b_b: &BitVector, c_b: &BitVector) -> Result<BitVector> {
    a_b.xor(&b_b.xor(c_b)?)
}

/// Deterministic per-shot stream: shot s of master seed m is an independent
/// ChaCha stream, so shots can run in any order or in parallel.
pub fn shot_rng(master_seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(shot);
    rng
}

/// Runs one complete exchange (shot 0 of the master seed).
pub fn run_exchange(config: &ExchangeConfig) -> Result<Transcript> {
    run_shot(config, 0)
}

/// Runs `shots` exchanges on independent per-shot streams.
pub fn run_shots(config: &ExchangeConfig, shots: u64) -> Result<Vec<Transcript>> {
    (0..shots).map(|s| run_shot(config, s)).collect()
}

/// Runs the identified shot of an exchange.
pub fn run_shot(config: &ExchangeConfig, shot: u64) -> Result<Transcript> {
    let len_b = config.i_b.len();
    let len_c = config.i_c.len();
    let n = len_b + len_c;
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let aggregated = config.i_b.concat(&config.i_c);
    let mut rng = shot_rng(config.master_seed, shot);

    let (a, b, c) = match (config.variant, config.backend) {
        (Variant::Ghz3, Backend::Analytic) => {
            let t = analytic::sample_outcome(&aggregated, &mut rng)?;
            (t.a, t.b, t.c)
        }
        (Variant::Ghz3, backend) => {
            let mut state = quantum_half(config, backend)?;
            let a = state.measure_block(AIR, &mut rng)?;
            let b = state.measure_block(BIR, &mut rng)?;
            let c = state.measure_block(CIR, &mut rng)?;
            (a, b, c)
        }
        (Variant::Epr, Backend::Analytic) => {
            let (b, c) = analytic::sample_outcome_epr(&aggregated, &mut rng)?;
            (BitVector::empty(), b, c)
        }
        (Variant::Epr, backend) => {
            let mut state = quantum_half(config, backend)?;
            let b = state.measure_block(BIR, &mut rng)?;
            let c = state.measure_block(CIR, &mut rng)?;
            (BitVector::empty(), b, c)
        }
    };

    let public = match config.variant {
        Variant::Ghz3 => classical_round(&a, &b, &c, len_b, len_c)?,
        Variant::Epr => classical_round_epr(&b, &c, len_b, len_c)?,
    };

    // Receivers combine the public vectors with their own withheld halves.
    let (_b_b, b_c) = b.split_at(len_b)?;
    let (c_b, _c_c) = c.split_at(len_b)?;
    let (recovered_ib, recovered_ic) = match config.variant {
        Variant::Ghz3 => (
            reconstruct_ib(&public.a_b, &public.b_b, &c_b)?,
            reconstruct_ic(&public.a_c, &b_c, &public.c_c)?,
        ),
        Variant::Epr => (public.b_b.xor(&c_b)?, b_c.xor(&public.c_c)?),
    };
    let success = recovered_ib == config.i_b && recovered_ic == config.i_c;

    let (private, reconstructed) = if config.redact_private {
        (
            None,
            Reconstructed {
                i_b: BitVector::empty(),
                i_c: BitVector::empty(),
            },
        )
    } else {
        (
            Some(PrivateOutcomes { a, b, c }),
            Reconstructed {
                i_b: recovered_ib,
                i_c: recovered_ic,
            },
        )
    };

    Ok(Transcript {
        format_version: FORMAT_VERSION,
        variant: config.variant,
        n,
        len_ib: len_b,
        len_ic: len_c,
        seed: config.master_seed,
        backend: config.backend,
        public,
        private,
        reconstructed,
        success,
    })
}

fn quantum_half(config: &ExchangeConfig, backend: Backend) -> Result<StateVector> {
    match backend {
        Backend::Full => circuit_state_full(
            &config.i_b,
            &config.i_c,
            config.variant,
            Stage::Interfered,
            config.qubit_cap,
        ),
        Backend::Reduced => circuit_state_reduced(
            &config.i_b,
            &config.i_c,
            config.variant,
            Stage::Interfered,
            config.qubit_cap,
        ),
        Backend::Analytic => unreachable!("analytic backend has no statevector"),
    }
}
