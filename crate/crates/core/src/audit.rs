//! Mechanical obliviousness audit.
//!
//! The claim under test: after an honest run, the mediator and any
//! eavesdropper on the public channels hold data consistent with *every*
//! candidate secret pair, each backed by the same number of hidden register
//! configurations: their posterior equals the uniform prior. The audit
//! brute-forces that statement. For a declared knowledge view it enumerates
//! all register assignments satisfying the run's correlation, keeps the ones
//! matching every known bit, and counts per candidate. Counting is exact
//! integer arithmetic; uniformity means equal counts, no tolerance.

use serde::Serialize;

use crate::bitvec::BitVector;
use crate::error::{Error, Result};
use crate::protocol::{Transcript, Variant, FORMAT_VERSION};

/// Enumeration is over 2^(3n) configurations; this keeps it desk-scale.
pub const MAX_AUDIT_N: usize = 8;

/// Whose knowledge the posterior is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Mediator: her own outcome plus everything public.
    Alice,
    /// Outside observer of the public channels only.
    Eavesdropper,
    /// Bob: public data, his full outcome, and his own secret.
    Bob,
    /// Charlie: public data, his full outcome, and his own secret.
    Charlie,
}

impl std::str::FromStr for Role {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "alice" => Ok(Role::Alice),
            "eavesdropper" => Ok(Role::Eavesdropper),
            "bob" => Ok(Role::Bob),
            "charlie" => Ok(Role::Charlie),
            other => Err(format!(
                "unknown view {other:?} (expected alice, eavesdropper, bob, or charlie)"
            )),
        }
    }
}

impl std::fmt::Display for Role {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Role::Alice => "alice",
            Role::Eavesdropper => "eavesdropper",
            Role::Bob => "bob",
            Role::Charlie => "charlie",
        })
    }
}

/// A transcript vector that can be added to a view, named by its protocol
/// role: whole registers `a`, `b`, `c` or their announced-length splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedVector {
    A,
    AB,
    AC,
    B,
    BB,
    BC,
    C,
    CB,
    CC,
}

impl std::str::FromStr for NamedVector {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "a" => Ok(NamedVector::A),
            "a_B" => Ok(NamedVector::AB),
            "a_C" => Ok(NamedVector::AC),
            "b" => Ok(NamedVector::B),
            "b_B" => Ok(NamedVector::BB),
            "b_C" => Ok(NamedVector::BC),
            "c" => Ok(NamedVector::C),
            "c_B" => Ok(NamedVector::CB),
            "c_C" => Ok(NamedVector::CC),
            other => Err(format!("unknown vector name {other:?}")),
        }
    }
}

/// A role's knowledge, optionally extended with leaked vectors (the negative
/// controls of the audit).
#[derive(Debug, Clone)]
pub struct KnowledgeView {
    pub role: Role,
    pub leaks: Vec<NamedVector>,
}

impl KnowledgeView {
    pub fn new(role: Role) -> Self {
        KnowledgeView {
            role,
            leaks: Vec::new(),
        }
    }

    pub fn with_leak(mut self, vector: NamedVector) -> Self {
        self.leaks.push(vector);
        self
    }
}

/// Exact posterior over candidate secret pairs: integer counts over a common
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosteriorTable {
    pub len_ib: usize,
    pub len_ic: usize,
    /// Consistent-configuration count per candidate, indexed by the candidate
    /// pair as an integer (i_B in the high bits, i_C in the low bits).
    pub counts: Vec<u64>,
    /// Common denominator: total count across all candidates.
    pub total: u64,
}

impl PosteriorTable {
    pub fn n(&self) -> usize {
        self.len_ib + self.len_ic
    }

    /// The candidate pair behind a table index.
    pub fn candidate(&self, index: usize) -> (BitVector, BitVector) {
        let full = BitVector::from_index(index, self.n());
        full.split_at(self.len_ib).expect("index within table")
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.counts[index] as f64 / self.total as f64
    }

    /// Exact uniformity: every candidate carries the same nonzero count.
    pub fn is_uniform(&self) -> bool {
        self.counts[0] > 0 && self.counts.iter().all(|&c| c == self.counts[0])
    }

    /// Number of candidates with nonzero posterior.
    pub fn support_size(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Counts marginalized onto the i_B candidate.
    pub fn marginal_ib(&self) -> Vec<u64> {
        let mut out = vec![0u64; 1 << self.len_ib];
        for (index, count) in self.counts.iter().enumerate() {
            out[index >> self.len_ic] += count;
        }
        out
    }

    /// Counts marginalized onto the i_C candidate.
    pub fn marginal_ic(&self) -> Vec<u64> {
        let mut out = vec![0u64; 1 << self.len_ic];
        for (index, count) in self.counts.iter().enumerate() {
            out[index & ((1 << self.len_ic) - 1)] += count;
        }
        out
    }

    /// The report as a JSON document, same family as transcripts.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }
}

/// A partial assignment over one hidden register: `vals` is pre-masked.
#[derive(Debug, Clone, Copy, Default)]
struct Known {
    mask: u64,
    vals: u64,
}

impl Known {
    fn add(&mut self, mask: u64, vals: u64) {
        self.mask |= mask;
        self.vals |= vals & mask;
    }

    fn admits(&self, value: u64) -> bool {
        value & self.mask == self.vals
    }
}

/// A fully resolved view: lengths plus partial assignments over the hidden
/// registers and the candidate secret itself.
#[derive(Debug, Clone)]
struct ResolvedView {
    len_ib: usize,
    len_ic: usize,
    variant: Variant,
    a: Known,
    b: Known,
    c: Known,
    secret: Known,
}

impl ResolvedView {
    fn n(&self) -> usize {
        self.len_ib + self.len_ic
    }
}

fn malformed(reason: impl Into<String>) -> Error {
    Error::MalformedTranscript {
        reason: reason.into(),
    }
}

fn require_private(t: &Transcript) -> Result<&crate::protocol::PrivateOutcomes> {
    t.private
        .as_ref()
        .ok_or_else(|| malformed("view requires private outcomes, but the transcript is redacted"))
}

fn vector_as_int(v: &BitVector, expected_len: usize, what: &str) -> Result<u64> {
    if v.len() != expected_len {
        return Err(malformed(format!(
            "{what} has length {} but the announcement implies {expected_len}",
            v.len()
        )));
    }
    Ok(v.to_index() as u64)
}

fn resolve(view: &KnowledgeView, t: &Transcript) -> Result<ResolvedView> {
    let len_ib = t.len_ib;
    let len_ic = t.len_ic;
    let n = len_ib + len_ic;
    if t.n != n || n == 0 {
        return Err(malformed(format!(
            "n={} disagrees with len_ib={len_ib} + len_ic={len_ic}",
            t.n
        )));
    }
    if n > MAX_AUDIT_N {
        return Err(Error::TableTooLarge {
            bits: 3 * n,
            max: 3 * MAX_AUDIT_N,
        });
    }
    let mut resolved = ResolvedView {
        len_ib,
        len_ic,
        variant: t.variant,
        a: Known::default(),
        b: Known::default(),
        c: Known::default(),
        secret: Known::default(),
    };
    let low_mask = (1u64 << len_ic) - 1;
    let high_mask = ((1u64 << len_ib) - 1) << len_ic;

    // Public halves, known to everyone including the eavesdropper.
    if t.variant == Variant::Ghz3 {
        resolved.a.add(
            high_mask,
            vector_as_int(&t.public.a_b, len_ib, "a_B")? << len_ic,
        );
        resolved
            .a
            .add(low_mask, vector_as_int(&t.public.a_c, len_ic, "a_C")?);
    } else if !t.public.a_b.is_empty() || !t.public.a_c.is_empty() {
        return Err(malformed("two-party transcript carries mediator messages"));
    }
    resolved.b.add(
        high_mask,
        vector_as_int(&t.public.b_b, len_ib, "b_B")? << len_ic,
    );
    resolved
        .c
        .add(low_mask, vector_as_int(&t.public.c_c, len_ic, "c_C")?);

    // Role-specific additions.
    match view.role {
        Role::Eavesdropper => {}
        Role::Alice => {
            if t.variant == Variant::Ghz3 {
                let p = require_private(t)?;
                let full = (1u64 << n) - 1;
                resolved.a.add(full, vector_as_int(&p.a, n, "a")?);
            }
            // In the two-party variant there is no mediator data to add.
        }
        Role::Bob => {
            let p = require_private(t)?;
            let full = (1u64 << n) - 1;
            resolved.b.add(full, vector_as_int(&p.b, n, "b")?);
            resolved.secret.add(
                high_mask,
                vector_as_int(&t.reconstructed.i_b, len_ib, "reconstructed i_B")? << len_ic,
            );
        }
        Role::Charlie => {
            let p = require_private(t)?;
            let full = (1u64 << n) - 1;
            resolved.c.add(full, vector_as_int(&p.c, n, "c")?);
            resolved.secret.add(
                low_mask,
                vector_as_int(&t.reconstructed.i_c, len_ic, "reconstructed i_C")?,
            );
        }
    }

    // Leaked vectors.
    for leak in &view.leaks {
        let full = (1u64 << n) - 1;
        match leak {
            NamedVector::A | NamedVector::AB | NamedVector::AC if t.variant == Variant::Epr => {
                return Err(malformed("two-party transcript has no mediator register"));
            }
            NamedVector::A => {
                let p = require_private(t)?;
                resolved.a.add(full, vector_as_int(&p.a, n, "a")?);
            }
            NamedVector::AB => resolved.a.add(
                high_mask,
                vector_as_int(&t.public.a_b, len_ib, "a_B")? << len_ic,
            ),
            NamedVector::AC => resolved
                .a
                .add(low_mask, vector_as_int(&t.public.a_c, len_ic, "a_C")?),
            NamedVector::B => {
                let p = require_private(t)?;
                resolved.b.add(full, vector_as_int(&p.b, n, "b")?);
            }
            NamedVector::BB => resolved.b.add(
                high_mask,
                vector_as_int(&t.public.b_b, len_ib, "b_B")? << len_ic,
            ),
            NamedVector::BC => {
                let p = require_private(t)?;
                let whole = vector_as_int(&p.b, n, "b")?;
                resolved.b.add(low_mask, whole);
            }
            NamedVector::C => {
                let p = require_private(t)?;
                resolved.c.add(full, vector_as_int(&p.c, n, "c")?);
            }
            NamedVector::CB => {
                let p = require_private(t)?;
                let whole = vector_as_int(&p.c, n, "c")?;
                resolved.c.add(high_mask, whole);
            }
            NamedVector::CC => resolved
                .c
                .add(low_mask, vector_as_int(&t.public.c_c, len_ic, "c_C")?),
        }
    }

    Ok(resolved)
}

/// Counts consistent configurations per candidate under the correlation
/// a ⊕ b ⊕ c = i (b ⊕ c = i for two parties) and a uniform prior on i.
fn enumerate(view: &ResolvedView) -> Result<PosteriorTable> {
    let n = view.n();
    let size = 1usize << n;
    let mut counts = vec![0u64; size];
    for cand in 0..size as u64 {
        if !view.secret.admits(cand) {
            continue;
        }
        let mut count = 0u64;
        match view.variant {
            Variant::Ghz3 => {
                for a in 0..size as u64 {
                    if !view.a.admits(a) {
                        continue;
                    }
                    for b in 0..size as u64 {
                        if !view.b.admits(b) {
                            continue;
                        }
                        if view.c.admits(cand ^ a ^ b) {
                            count += 1;
                        }
                    }
                }
            }
            Variant::Epr => {
                for b in 0..size as u64 {
                    if !view.b.admits(b) {
                        continue;
                    }
                    if view.c.admits(cand ^ b) {
                        count += 1;
                    }
                }
            }
        }
        counts[cand as usize] = count;
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(malformed("view admits no consistent configuration"));
    }
    Ok(PosteriorTable {
        len_ib: view.len_ib,
        len_ic: view.len_ic,
        counts,
        total,
    })
}

/// Exact posterior over candidate secret pairs for a declared view of one
/// transcript.
pub fn posterior(view: &KnowledgeView, transcript: &Transcript) -> Result<PosteriorTable> {
    enumerate(&resolve(view, transcript)?)
}

/// Outcome of one verification check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotEvaluable,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

/// Itemized result of [`verify_transcript`].
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    /// The report as a JSON document, same family as transcripts.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn check(
    checks: &mut Vec<Check>,
    name: &'static str,
    condition: bool,
    detail: impl Into<String>,
) {
    checks.push(Check {
        name,
        status: if condition {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: detail.into(),
    });
}

fn not_evaluable(checks: &mut Vec<Check>, name: &'static str) {
    checks.push(Check {
        name,
        status: CheckStatus::NotEvaluable,
        detail: "requires private outcomes".into(),
    });
}

/// Referee-side consistency checks over a parsed transcript.
pub fn verify_transcript(t: &Transcript) -> VerifyReport {
    let mut checks = Vec::new();

    check(
        &mut checks,
        "format_version",
        t.format_version == FORMAT_VERSION,
        format!("found {}, expected {FORMAT_VERSION}", t.format_version),
    );

    let lengths_ok = t.n == t.len_ib + t.len_ic
        && t.n >= 1
        && t.public.len_announcement == (t.len_ib, t.len_ic);
    let mut width_ok = t.public.b_b.len() == t.len_ib && t.public.c_c.len() == t.len_ic;
    match t.variant {
        Variant::Ghz3 => {
            width_ok &= t.public.a_b.len() == t.len_ib && t.public.a_c.len() == t.len_ic;
        }
        Variant::Epr => {
            width_ok &= t.public.a_b.is_empty() && t.public.a_c.is_empty();
        }
    }
    if let Some(p) = &t.private {
        width_ok &= p.b.len() == t.n && p.c.len() == t.n;
        width_ok &= match t.variant {
            Variant::Ghz3 => p.a.len() == t.n,
            Variant::Epr => p.a.is_empty(),
        };
    }
    check(
        &mut checks,
        "length_consistency",
        lengths_ok && width_ok,
        format!(
            "n={} len_ib={} len_ic={} announcement={:?}",
            t.n, t.len_ib, t.len_ic, t.public.len_announcement
        ),
    );

    let presence_ok = match t.variant {
        Variant::Ghz3 => true, // all four fields parsed
        Variant::Epr => t.public.a_b.is_empty() && t.public.a_c.is_empty(),
    };
    check(
        &mut checks,
        "message_presence",
        presence_ok,
        match t.variant {
            Variant::Ghz3 => "a_B, a_C, b_B, c_C present".to_string(),
            Variant::Epr => "b_B, c_C present; no mediator messages".to_string(),
        },
    );

    match &t.private {
        Some(p) if checks.iter().all(|c| c.status == CheckStatus::Pass) => {
            let split = |v: &BitVector| v.split_at(t.len_ib).expect("widths checked");
            let (b_b, b_c) = split(&p.b);
            let (c_b, c_c) = split(&p.c);
            let halves_ok = b_b == t.public.b_b
                && c_c == t.public.c_c
                && match t.variant {
                    Variant::Ghz3 => {
                        let (a_b, a_c) = split(&p.a);
                        a_b == t.public.a_b && a_c == t.public.a_c
                    }
                    Variant::Epr => true,
                };
            check(
                &mut checks,
                "public_private_consistency",
                halves_ok,
                "public vectors equal the announced splits of the raw outcomes",
            );

            let aggregated = match t.variant {
                Variant::Ghz3 => p.a.xor(&p.b.xor(&p.c).unwrap()).unwrap(),
                Variant::Epr => p.b.xor(&p.c).unwrap(),
            };
            let recorded = t.reconstructed.i_b.concat(&t.reconstructed.i_c);
            check(
                &mut checks,
                "correlation",
                aggregated == recorded,
                format!("outcomes fold to {aggregated}, reconstructed {recorded}"),
            );

            let (rec_ib, rec_ic) = match t.variant {
                Variant::Ghz3 => (
                    crate::protocol::reconstruct_ib(&t.public.a_b, &t.public.b_b, &c_b).unwrap(),
                    crate::protocol::reconstruct_ic(&t.public.a_c, &b_c, &t.public.c_c).unwrap(),
                ),
                Variant::Epr => (
                    t.public.b_b.xor(&c_b).unwrap(),
                    b_c.xor(&t.public.c_c).unwrap(),
                ),
            };
            check(
                &mut checks,
                "reconstruction",
                rec_ib == t.reconstructed.i_b && rec_ic == t.reconstructed.i_c && t.success,
                format!("recomputed i_B={rec_ib} i_C={rec_ic}, success={}", t.success),
            );
        }
        Some(_) => {
            // Widths already failed; the dependent checks would index out of
            // bounds, so report them as not evaluable.
            not_evaluable(&mut checks, "public_private_consistency");
            not_evaluable(&mut checks, "correlation");
            not_evaluable(&mut checks, "reconstruction");
        }
        None => {
            not_evaluable(&mut checks, "public_private_consistency");
            not_evaluable(&mut checks, "correlation");
            not_evaluable(&mut checks, "reconstruction");
        }
    }

    let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
    VerifyReport { checks, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{run_exchange, Backend, ExchangeConfig};

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn transcript(ib: &str, ic: &str, seed: u64) -> Transcript {
        let mut config = ExchangeConfig::new(bv(ib), bv(ic));
        config.master_seed = seed;
        run_exchange(&config).unwrap()
    }

    #[test]
    fn mediator_and_eavesdropper_posteriors_are_uniform() {
        let t = transcript("1", "0", 7);
        for role in [Role::Alice, Role::Eavesdropper] {
            let table = posterior(&KnowledgeView::new(role), &t).unwrap();
            assert_eq!(table.counts.len(), 4);
            assert!(table.is_uniform(), "role {role}: {:?}", table.counts);
            assert_eq!(table.probability(0), 0.25);
        }
    }

    #[test]
    fn receivers_pin_the_true_secrets() {
        let t = transcript("10", "1", 3);
        let truth = (bv("10").concat(&bv("1"))).to_index();
        for role in [Role::Bob, Role::Charlie] {
            let table = posterior(&KnowledgeView::new(role), &t).unwrap();
            assert_eq!(table.support_size(), 1, "role {role}");
            assert_eq!(table.probability(truth), 1.0, "role {role}");
        }
    }

    #[test]
    fn leaking_the_withheld_halves_breaks_obliviousness_selectively() {
        let t = transcript("10", "11", 5);
        let view = KnowledgeView::new(Role::Eavesdropper).with_leak(NamedVector::BC);
        let table = posterior(&view, &t).unwrap();
        // i_C collapses, i_B stays uniform.
        let ic_marginal = table.marginal_ic();
        assert_eq!(ic_marginal.iter().filter(|&&c| c > 0).count(), 1);
        let ib_marginal = table.marginal_ib();
        assert!(ib_marginal.iter().all(|&c| c == ib_marginal[0] && c > 0));
        // And the surviving i_C is the true one.
        assert!(ic_marginal[bv("11").to_index()] > 0);

        let view = KnowledgeView::new(Role::Eavesdropper).with_leak(NamedVector::CB);
        let table = posterior(&view, &t).unwrap();
        assert_eq!(table.marginal_ib().iter().filter(|&&c| c > 0).count(), 1);
        let ic = table.marginal_ic();
        assert!(ic.iter().all(|&c| c == ic[0] && c > 0));
    }

    #[test]
    fn leaking_single_bits_never_widens_the_support() {
        let t = transcript("101", "1", 11);
        let base = resolve(&KnowledgeView::new(Role::Eavesdropper), &t).unwrap();
        let p = t.private.as_ref().unwrap();
        let b_int = p.b.to_index() as u64;
        let mut previous = enumerate(&base).unwrap().support_size();
        // Reveal b_C one bit at a time (positions 0..len_ic), then b_B bits.
        let mut view = base;
        for k in 0..t.n {
            view.b.add(1 << k, b_int);
            let support = enumerate(&view).unwrap().support_size();
            assert!(support <= previous, "bit {k} widened the support");
            previous = support;
        }
        // With all of b leaked on top of the public data, i_C is pinned.
        let table = enumerate(&view).unwrap();
        assert_eq!(table.marginal_ic().iter().filter(|&&c| c > 0).count(), 1);
    }

    #[test]
    fn posterior_is_sound_for_every_view() {
        for seed in 0..10 {
            let t = transcript("01", "10", seed);
            let truth = t
                .reconstructed
                .i_b
                .concat(&t.reconstructed.i_c)
                .to_index();
            for role in [Role::Alice, Role::Eavesdropper, Role::Bob, Role::Charlie] {
                let table = posterior(&KnowledgeView::new(role), &t).unwrap();
                assert!(table.counts[truth] > 0, "role {role} seed {seed}");
                assert_eq!(table.counts.iter().sum::<u64>(), table.total);
            }
        }
    }

    #[test]
    fn epr_transcripts_audit_the_same_way() {
        let mut config = ExchangeConfig::new(bv("1"), bv("01"));
        config.variant = Variant::Epr;
        config.master_seed = 2;
        let t = run_exchange(&config).unwrap();
        for role in [Role::Alice, Role::Eavesdropper] {
            let table = posterior(&KnowledgeView::new(role), &t).unwrap();
            assert!(table.is_uniform(), "role {role}");
        }
        let table = posterior(&KnowledgeView::new(Role::Bob), &t).unwrap();
        assert_eq!(table.support_size(), 1);
        assert!(matches!(
            posterior(
                &KnowledgeView::new(Role::Eavesdropper).with_leak(NamedVector::AB),
                &t
            ),
            Err(Error::MalformedTranscript { .. })
        ));
    }

    #[test]
    fn redacted_transcripts_support_public_views_only() {
        let mut config = ExchangeConfig::new(bv("1"), bv("1"));
        config.redact_private = true;
        config.master_seed = 9;
        let t = run_exchange(&config).unwrap();
        let table = posterior(&KnowledgeView::new(Role::Eavesdropper), &t).unwrap();
        assert!(table.is_uniform());
        assert!(matches!(
            posterior(&KnowledgeView::new(Role::Alice), &t),
            Err(Error::MalformedTranscript { .. })
        ));
    }

    #[test]
    fn audit_rejects_oversized_and_inconsistent_transcripts() {
        let t = transcript("11111", "1111", 0);
        assert!(matches!(
            posterior(&KnowledgeView::new(Role::Eavesdropper), &t),
            Err(Error::TableTooLarge { .. })
        ));
        let mut broken = transcript("1", "1", 0);
        broken.public.b_b = bv("00"); // wrong width for the announcement
        assert!(matches!(
            posterior(&KnowledgeView::new(Role::Eavesdropper), &broken),
            Err(Error::MalformedTranscript { .. })
        ));
    }

    #[test]
    fn verify_passes_generated_transcripts() {
        for (variant, backend) in [
            (Variant::Ghz3, Backend::Analytic),
            (Variant::Ghz3, Backend::Full),
            (Variant::Epr, Backend::Reduced),
        ] {
            let mut config = ExchangeConfig::new(bv("10"), bv("1"));
            config.variant = variant;
            config.backend = backend;
            config.master_seed = 8;
            let t = run_exchange(&config).unwrap();
            let report = verify_transcript(&t);
            assert!(report.passed, "{report:?}");
            assert!(report
                .checks
                .iter()
                .all(|c| c.status == CheckStatus::Pass));
        }
    }

    #[test]
    fn verify_names_the_failing_check() {
        let mut t = transcript("10", "1", 1);
        let truncated = t.public.b_b.split_at(1).unwrap().0;
        t.public.b_b = truncated;
        let report = verify_transcript(&t);
        assert!(!report.passed);
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .map(|c| c.name)
            .collect();
        assert!(failing.contains(&"length_consistency"), "{failing:?}");
    }

    #[test]
    fn verify_flags_tampered_private_data() {
        let mut t = transcript("10", "1", 1);
        if let Some(p) = &mut t.private {
            p.a = p.a.xor(&bv("100")).unwrap();
        }
        let report = verify_transcript(&t);
        assert!(!report.passed);
        assert!(report
            .checks
            .iter()
            .any(|c| c.status == CheckStatus::Fail
                && (c.name == "correlation" || c.name == "public_private_consistency")));
    }

    #[test]
    fn reports_render_as_json() {
        let t = transcript("1", "1", 0);
        let report = verify_transcript(&t);
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(value["passed"], serde_json::Value::Bool(true));
        assert!(value["checks"].as_array().unwrap().len() >= 5);
        let table = posterior(&KnowledgeView::new(Role::Eavesdropper), &t).unwrap();
        let value: serde_json::Value = serde_json::from_str(&table.to_json()).unwrap();
        assert_eq!(value["total"], serde_json::json!(4));
        assert_eq!(value["counts"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn verify_reports_redacted_checks_as_not_evaluable() {
        let mut config = ExchangeConfig::new(bv("1"), bv("1"));
        config.redact_private = true;
        let t = run_exchange(&config).unwrap();
        let report = verify_transcript(&t);
        assert!(report.passed);
        for name in ["correlation", "reconstruction"] {
            let c = report.checks.iter().find(|c| c.name == name).unwrap();
            assert_eq!(c.status, CheckStatus::NotEvaluable);
        }
    }
}
