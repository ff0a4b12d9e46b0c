//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line. Tolerances and budgets are pinned in the constants below.
//!
//! Run with `cargo test -p esr-cli --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use esr_core::analytic;
use esr_core::audit::{self, KnowledgeView, NamedVector, Role};
use esr_core::bitvec::BitVector;
use esr_core::protocol::{
    self, Backend, ExchangeConfig, Stage, Variant,
};
use esr_core::statevector::{
    self, AIR, BIR, BOR, CIR, COR, DEFAULT_QUBIT_CAP,
};

const AMP_TOL: f64 = 1e-12;
const PROB_TOL: f64 = 1e-10;
const FIDELITY_TOL: f64 = 1e-10;

fn pass(number: u32, name: &str, started: Instant) {
    println!(
        "criterion {number:02} ({name}): PASS in {:.2?}",
        started.elapsed()
    );
}

fn budget(number: u32, started: Instant, limit: Duration) {
    assert!(
        started.elapsed() < limit,
        "criterion {number:02} exceeded its {limit:?} budget: {:.2?}",
        started.elapsed()
    );
}

/// Every (i_B, i_C) value pair whose total width is exactly n.
fn secret_pairs(n: usize) -> Vec<(BitVector, BitVector)> {
    let mut out = Vec::new();
    for len_b in 0..=n {
        let len_c = n - len_b;
        for ib in 0..1usize << len_b {
            for ic in 0..1usize << len_c {
                out.push((
                    BitVector::from_index(ib, len_b),
                    BitVector::from_index(ic, len_c),
                ));
            }
        }
    }
    out
}

#[test]
fn criterion_01_ghz_state_fidelity() {
    let started = Instant::now();
    for n in 1..=3usize {
        let state = statevector::prepare_ghz3n(n, DEFAULT_QUBIT_CAP).unwrap();
        let layout = state.layout();
        let expected = ((1u64 << n) as f64).sqrt().recip();
        let support: std::collections::HashSet<usize> = (0..1usize << n)
            .map(|x| {
                layout
                    .basis_index(&[(AIR, x), (BIR, x), (CIR, x), (BOR, 1), (COR, 1)])
                    .unwrap()
            })
            .collect();
        let mut nonzero = 0;
        for (idx, amp) in state.amplitudes().iter().enumerate() {
            if amp.norm() > AMP_TOL {
                nonzero += 1;
                assert!(support.contains(&idx), "n={n}: stray amplitude at {idx}");
                assert!(
                    (amp.re - expected).abs() < AMP_TOL && amp.im.abs() < AMP_TOL,
                    "n={n}: amplitude {amp} at {idx}"
                );
            }
        }
        assert_eq!(nonzero, 1 << n, "n={n}: support size");

        let gated = statevector::prepare_ghz3n_via_gates(n, DEFAULT_QUBIT_CAP).unwrap();
        for (a, b) in state.amplitudes().iter().zip(gated.amplitudes()) {
            assert!((a - b).norm() < AMP_TOL, "n={n}: gate path disagrees");
        }
    }
    budget(1, started, Duration::from_secs(1));
    pass(1, "ghz state fidelity", started);
}

#[test]
fn criterion_02_correlation_totality() {
    let started = Instant::now();
    const SHOTS: usize = 10_000;
    let mut secret_rng = ChaCha8Rng::seed_from_u64(0xE5);
    let mut violations = 0usize;
    for backend in [Backend::Full, Backend::Reduced, Backend::Analytic] {
        for n in 1..=4usize {
            for shot in 0..SHOTS {
                let len_b = secret_rng.random_range(0..=n);
                let mut config = ExchangeConfig::new(
                    BitVector::random(len_b, &mut secret_rng),
                    BitVector::random(n - len_b, &mut secret_rng),
                );
                config.backend = backend;
                config.master_seed = shot as u64;
                let t = protocol::run_exchange(&config).unwrap();
                let p = t.private.as_ref().unwrap();
                let folded = p.a.xor(&p.b.xor(&p.c).unwrap()).unwrap();
                if folded != config.i_b.concat(&config.i_c) {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!(violations, 0, "correlation violated");
    budget(2, started, Duration::from_secs(30));
    pass(2, "correlation totality over 1.2e5 shots", started);
}

#[test]
fn criterion_03_exact_distribution_equivalence() {
    let started = Instant::now();
    for n in 1..=3usize {
        for i_val in 0..1usize << n {
            let i = BitVector::from_index(i_val, n);
            let expected = analytic::exact_distribution(&i).unwrap();
            let full =
                protocol::circuit_state_full(&i, &BitVector::empty(), Variant::Ghz3, Stage::Interfered, DEFAULT_QUBIT_CAP)
                    .unwrap()
                    .joint_marginal(&[AIR, BIR, CIR])
                    .unwrap();
            let reduced =
                protocol::circuit_state_reduced(&i, &BitVector::empty(), Variant::Ghz3, Stage::Interfered, DEFAULT_QUBIT_CAP)
                    .unwrap()
                    .joint_marginal(&[AIR, BIR, CIR])
                    .unwrap();
            assert_eq!(expected.len(), full.len());
            for (key, e) in expected.iter().enumerate() {
                assert!(
                    (full[key] - e).abs() < PROB_TOL,
                    "full backend: n={n} i={i} key={key}: {} vs {e}",
                    full[key]
                );
                assert!(
                    (reduced[key] - e).abs() < PROB_TOL,
                    "reduced backend: n={n} i={i} key={key}: {} vs {e}",
                    reduced[key]
                );
            }
        }
    }
    budget(3, started, Duration::from_secs(10));
    pass(3, "statevector matches the closed form", started);
}

#[test]
fn criterion_04_reconstruction_totality() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD4);
    for run in 0..1000u64 {
        let (len_b, len_c) = loop {
            let pair = (rng.random_range(0..=16), rng.random_range(0..=16));
            if pair != (0, 0) {
                break pair;
            }
        };
        let mut config = ExchangeConfig::new(
            BitVector::random(len_b, &mut rng),
            BitVector::random(len_c, &mut rng),
        );
        config.master_seed = run;
        let t = protocol::run_exchange(&config).unwrap();
        assert!(t.success, "run {run}");
        assert_eq!(t.reconstructed.i_b, config.i_b);
        assert_eq!(t.reconstructed.i_c, config.i_c);
    }
    budget(4, started, Duration::from_secs(5));
    pass(4, "reconstruction over 1e3 random widths", started);
}

#[test]
fn criterion_05_obliviousness_is_exact() {
    let started = Instant::now();
    for n in 1..=4usize {
        for (i_b, i_c) in secret_pairs(n) {
            for seed in 0..20u64 {
                let mut config = ExchangeConfig::new(i_b.clone(), i_c.clone());
                config.master_seed = seed;
                let t = protocol::run_exchange(&config).unwrap();
                for role in [Role::Alice, Role::Eavesdropper] {
                    let table = audit::posterior(&KnowledgeView::new(role), &t).unwrap();
                    assert_eq!(table.counts.len(), 1 << n);
                    assert!(
                        table.is_uniform(),
                        "role {role:?} n={n} i_B={i_b} i_C={i_c} seed={seed}: {:?}",
                        table.counts
                    );
                }
            }
        }
    }
    budget(5, started, Duration::from_secs(60));
    pass(5, "mediator and eavesdropper posteriors uniform", started);
}

#[test]
fn criterion_06_leak_negative_control() {
    let started = Instant::now();
    for n in 1..=4usize {
        for (i_b, i_c) in secret_pairs(n) {
            for seed in 0..3u64 {
                let mut config = ExchangeConfig::new(i_b.clone(), i_c.clone());
                config.master_seed = seed;
                let t = protocol::run_exchange(&config).unwrap();
                let view = KnowledgeView::new(Role::Eavesdropper).with_leak(NamedVector::BC);
                let table = audit::posterior(&view, &t).unwrap();
                let ic_marginal = table.marginal_ic();
                let survivors: Vec<usize> = ic_marginal
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(k, _)| k)
                    .collect();
                assert_eq!(survivors, vec![i_c.to_index()], "i_C must collapse");
                let ib_marginal = table.marginal_ib();
                assert!(
                    ib_marginal.iter().all(|&c| c == ib_marginal[0] && c > 0),
                    "i_B must stay uniform: {ib_marginal:?}"
                );
            }
        }
    }
    budget(6, started, Duration::from_secs(10));
    pass(6, "leaking b_C collapses i_C only", started);
}

#[test]
fn criterion_07_output_registers_stay_minus() {
    let started = Instant::now();
    for n in 1..=3usize {
        for (i_b, i_c) in secret_pairs(n) {
            for stage in [Stage::OutputsRotated, Stage::Interfered] {
                let state =
                    protocol::circuit_state_full(&i_b, &i_c, Variant::Ghz3, stage, DEFAULT_QUBIT_CAP)
                        .unwrap();
                for block in [BOR, COR] {
                    let fidelity = state.output_register_fidelity(block).unwrap();
                    assert!(
                        fidelity >= 1.0 - FIDELITY_TOL,
                        "n={n} i_B={i_b} i_C={i_c} {block} at {stage:?}: {fidelity}"
                    );
                }
            }
        }
    }
    pass(7, "phase kickback preserves the output registers", started);
}

#[test]
fn criterion_08_two_party_variant() {
    let started = Instant::now();
    // Statevector ground truth for the Bell-pair circuit.
    for n in 1..=3usize {
        for (i_b, i_c) in secret_pairs(n) {
            let i = i_b.concat(&i_c);
            let joint =
                protocol::circuit_state_full(&i_b, &i_c, Variant::Epr, Stage::Interfered, DEFAULT_QUBIT_CAP)
                    .unwrap()
                    .joint_marginal(&[BIR, CIR])
                    .unwrap();
            let uniform = ((1u64 << n) as f64).recip();
            for (key, p) in joint.iter().enumerate() {
                let b = key >> n;
                let c = key & ((1 << n) - 1);
                let expected = if b ^ c == i.to_index() { uniform } else { 0.0 };
                assert!(
                    (p - expected).abs() < PROB_TOL,
                    "n={n} i={i} b={b} c={c}: {p} vs {expected}"
                );
            }
        }
    }
    // Reconstruction totality on the analytic path.
    let mut rng = ChaCha8Rng::seed_from_u64(0xE9);
    for run in 0..1000u64 {
        let n = rng.random_range(1..=24usize);
        let len_b = rng.random_range(0..=n);
        let mut config = ExchangeConfig::new(
            BitVector::random(len_b, &mut rng),
            BitVector::random(n - len_b, &mut rng),
        );
        config.variant = Variant::Epr;
        config.master_seed = run;
        let t = protocol::run_exchange(&config).unwrap();
        assert!(t.success, "run {run}");
    }
    pass(8, "Bell-pair variant correlates and reconstructs", started);
}

#[test]
fn criterion_09_hadamard_layer_coefficients() {
    let started = Instant::now();
    for n in 1..=4usize {
        let scale = ((1u64 << n) as f64).sqrt().recip();
        for x in 0..1usize << n {
            let layout = statevector::RegisterLayout::new(&[("R", n)]);
            let mut state = statevector::StateVector::basis(layout, x);
            state.apply_hadamard_block("R").unwrap();
            let x_bits = BitVector::from_index(x, n);
            for (z, amp) in state.amplitudes().iter().enumerate() {
                let z_bits = BitVector::from_index(z, n);
                let sign = if z_bits.dot_mod2(&x_bits).unwrap() == 1 {
                    -1.0
                } else {
                    1.0
                };
                assert!(
                    (amp.re - sign * scale).abs() < AMP_TOL && amp.im.abs() < AMP_TOL,
                    "n={n} x={x} z={z}: {amp}"
                );
            }
        }
    }
    pass(9, "Hadamard layer equals its coefficient formula", started);
}

#[test]
fn criterion_10_cli_determinism_and_verification() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let esr = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_esr"))
            .args(args)
            .current_dir(dir.path())
            .env_remove("ESR_QUBIT_CAP")
            .output()
            .expect("binary runs")
    };
    let flags = [
        "exchange", "--ib", "1101", "--ic", "010", "--backend", "full", "--seed", "99",
        "--shots", "3", "--out", "t.json",
    ];
    let out = esr(&flags);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read(dir.path().join("t.json")).unwrap();
    let out = esr(&flags);
    assert_eq!(out.status.code(), Some(0));
    let second = std::fs::read(dir.path().join("t.json")).unwrap();
    assert_eq!(first, second, "identical flags must give identical bytes");

    // A corrupted transcript fails verification with a named check.
    let text = String::from_utf8(first).unwrap();
    let corrupted = text.replacen("\"b_B\": \"1", "\"b_B\": \"", 1);
    assert_ne!(text, corrupted, "corruption must apply");
    std::fs::write(dir.path().join("bad.json"), corrupted).unwrap();
    let out = esr(&["verify", "bad.json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = String::from_utf8_lossy(&out.stdout);
    assert!(
        report.contains("check=length_consistency status=fail"),
        "failing check must be named: {report}"
    );
    pass(10, "CLI determinism and corruption detection", started);
}
