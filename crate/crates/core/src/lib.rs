//! Entanglement-based simultaneous reciprocal information exchange between
//! two parties, with an optional trusted mediator.
//!
//! Bob and Charlie each hold a secret bit vector. Using n shared GHZ triplets
//! (or Bell pairs in the two-party variant), a layer of oracles and Hadamard
//! transforms, and a short public classical round, each ends up with the
//! other's secret, simultaneously, while the mediator who sourced the
//! entanglement and every eavesdropper on the public channels provably learn
//! nothing.
//!
//! The crate is organized around that claim:
//!
//! - [`bitvec`]: exact GF(2) bit-vector algebra (the classical layer).
//! - [`statevector`]: dense simulation of the register circuits (the ground
//!   truth for the quantum layer).
//! - [`analytic`]: closed-form outcome sampling at any n, verified against
//!   the statevector engine.
//! - [`protocol`]: phase sequencing, the classical round, reconstruction,
//!   and transcripts.
//! - [`audit`]: brute-force posterior computation that turns "learns
//!   nothing" into an exact, checkable statement.

pub mod analytic;
pub mod audit;
pub mod bitvec;
pub mod error;
pub mod protocol;
pub mod statevector;

pub use analytic::OutcomeTriple;
pub use audit::{KnowledgeView, NamedVector, PosteriorTable, Role, VerifyReport};
pub use bitvec::BitVector;
pub use error::{Error, Result};
pub use protocol::{
    Backend, ExchangeConfig, PublicMessages, Transcript, Variant, FORMAT_VERSION,
};
pub use statevector::{RegisterLayout, StateVector, DEFAULT_QUBIT_CAP};
