//! `esr`: run, inspect, and audit reciprocal information exchanges.
//!
//! Exit codes: 0 success, 1 failed checks or failed shots, 2 flag/usage
//! errors, 3 resource limits (qubit cap, table caps), 4 malformed transcript
//! input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use esr_core::audit::{self, CheckStatus, KnowledgeView, Role};
use esr_core::bitvec::BitVector;
use esr_core::protocol::{
    self, Backend, ExchangeConfig, Stage, Transcript, Variant,
};
use esr_core::statevector::{AIR, BIR, CIR, DEFAULT_QUBIT_CAP};
use esr_core::Error;

/// Environment variable overriding the default total-qubit budget.
const QUBIT_CAP_VAR: &str = "ESR_QUBIT_CAP";

#[derive(Parser)]
#[command(
    name = "esr",
    version,
    about = "Simulate and audit entanglement-based simultaneous reciprocal information exchange"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exchange protocol and write a transcript
    Exchange(ExchangeArgs),
    /// Print the exact joint outcome distribution for an aggregated secret
    Dist(DistArgs),
    /// Compute the posterior over the secrets for a declared knowledge view
    Audit(AuditArgs),
    /// Check a transcript's internal consistency
    Verify(VerifyArgs),
    /// Time the backends across register widths
    Bench(BenchArgs),
}

#[derive(Args)]
struct ExchangeArgs {
    /// Bob's secret as a bitstring, e.g. 1011
    #[arg(long, default_value = "")]
    ib: String,
    /// Charlie's secret as a bitstring
    #[arg(long, default_value = "")]
    ic: String,
    /// Read Bob's secret from a file (whitespace-trimmed bitstring)
    #[arg(long)]
    ib_file: Option<PathBuf>,
    /// Read Charlie's secret from a file
    #[arg(long)]
    ic_file: Option<PathBuf>,
    /// full, reduced, or analytic
    #[arg(long, default_value = "analytic")]
    backend: String,
    /// ghz3 (three-party) or epr (two-party)
    #[arg(long, default_value = "ghz3")]
    variant: String,
    /// Master seed; shot s runs on stream (seed, s)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of independent runs
    #[arg(long, default_value_t = 1)]
    shots: u64,
    /// Output path for the transcript(s); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit private outcomes and reconstructed secrets from the transcript
    #[arg(long)]
    redact: bool,
}

#[derive(Args)]
struct DistArgs {
    /// Aggregated secret as a bitstring, 1 to 6 bits
    #[arg(long)]
    i: String,
    /// statevector or analytic
    #[arg(long, default_value = "analytic")]
    backend: String,
}

#[derive(Args)]
struct AuditArgs {
    /// Transcript file produced by `exchange`
    transcript: PathBuf,
    /// alice, eavesdropper, bob, or charlie
    #[arg(long)]
    view: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Transcript file produced by `exchange`
    transcript: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Largest register width to time
    #[arg(long, default_value_t = 4)]
    n_max: usize,
}

struct CliError {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

fn from_core(error: Error) -> CliError {
    let code = match error {
        Error::QubitLimitExceeded { .. } | Error::TableTooLarge { .. } => 3,
        Error::MalformedTranscript { .. } => 4,
        _ => 1,
    };
    CliError {
        code,
        message: error.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Exchange(args) => cmd_exchange(args),
        Command::Dist(args) => cmd_dist(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn qubit_cap() -> Result<usize, CliError> {
    match std::env::var(QUBIT_CAP_VAR) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("invalid {QUBIT_CAP_VAR}: {raw:?} is not a qubit count"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_QUBIT_CAP),
        Err(e) => Err(usage(format!("invalid {QUBIT_CAP_VAR}: {e}"))),
    }
}

fn parse_bits(value: &str, flag: &str) -> Result<BitVector, CliError> {
    value
        .parse()
        .map_err(|e| usage(format!("invalid {flag}: {e}")))
}

fn read_secret(
    inline: &str,
    file: &Option<PathBuf>,
    flag: &str,
    file_flag: &str,
) -> Result<BitVector, CliError> {
    match file {
        Some(path) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {file_flag} {}: {e}", path.display())))?;
            parse_bits(raw.trim(), file_flag)
        }
        None => parse_bits(inline, flag),
    }
}

fn read_transcripts(path: &Path) -> Result<Vec<Transcript>, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read transcript {}: {e}", path.display())))?;
    protocol::transcripts_from_json(&raw).map_err(from_core)
}

fn cmd_exchange(args: ExchangeArgs) -> Result<u8, CliError> {
    let i_b = read_secret(&args.ib, &args.ib_file, "--ib", "--ib-file")?;
    let i_c = read_secret(&args.ic, &args.ic_file, "--ic", "--ic-file")?;
    if i_b.is_empty() && i_c.is_empty() {
        return Err(usage("at least one secret must be non-empty (--ib/--ic)"));
    }
    if args.shots < 1 {
        return Err(usage("--shots must be at least 1"));
    }
    let backend =
        Backend::from_str(&args.backend).map_err(|e| usage(format!("invalid --backend: {e}")))?;
    let variant =
        Variant::from_str(&args.variant).map_err(|e| usage(format!("invalid --variant: {e}")))?;

    let mut config = ExchangeConfig::new(i_b, i_c);
    config.backend = backend;
    config.variant = variant;
    config.master_seed = args.seed;
    config.redact_private = args.redact;
    config.qubit_cap = qubit_cap()?;

    let transcripts = protocol::run_shots(&config, args.shots).map_err(from_core)?;
    let successes = transcripts.iter().filter(|t| t.success).count() as u64;
    let rendered = protocol::transcripts_to_json(&transcripts);
    match &args.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| usage(format!("cannot write --out {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    println!("n={} shots={} success={}", config.n(), args.shots, successes);
    Ok(if successes == args.shots { 0 } else { 1 })
}

fn cmd_dist(args: DistArgs) -> Result<u8, CliError> {
    let i = parse_bits(&args.i, "--i")?;
    let n = i.len();
    if n == 0 || n > esr_core::analytic::MAX_TABLE_N {
        return Err(usage(format!(
            "--i must hold between 1 and {} bits, got {n}",
            esr_core::analytic::MAX_TABLE_N
        )));
    }
    let table = match args.backend.as_str() {
        "analytic" => esr_core::analytic::exact_distribution(&i).map_err(from_core)?,
        "statevector" => {
            let state = protocol::circuit_state_full(
                &i,
                &BitVector::empty(),
                Variant::Ghz3,
                Stage::Interfered,
                qubit_cap()?,
            )
            .map_err(from_core)?;
            state.joint_marginal(&[AIR, BIR, CIR]).map_err(from_core)?
        }
        other => {
            return Err(usage(format!(
                "invalid --backend: {other:?} (expected statevector or analytic)"
            )))
        }
    };
    for (key, p) in table.iter().enumerate() {
        if *p <= 1e-12 {
            continue;
        }
        let a = BitVector::from_index(key >> (2 * n), n);
        let b = BitVector::from_index((key >> n) & ((1 << n) - 1), n);
        let c = BitVector::from_index(key & ((1 << n) - 1), n);
        println!("a={a} b={b} c={c} p={p:.10}");
    }
    Ok(0)
}

fn cmd_audit(args: AuditArgs) -> Result<u8, CliError> {
    let role = Role::from_str(&args.view).map_err(|e| usage(format!("invalid --view: {e}")))?;
    let transcripts = read_transcripts(&args.transcript)?;
    let many = transcripts.len() > 1;
    for (index, transcript) in transcripts.iter().enumerate() {
        if many {
            println!("transcript={index}");
        }
        let table = audit::posterior(&KnowledgeView::new(role), transcript).map_err(from_core)?;
        for candidate in 0..table.counts.len() {
            let (ib, ic) = table.candidate(candidate);
            println!(
                "i_B={ib} i_C={ic} count={}/{} p={:.10}",
                table.counts[candidate],
                table.total,
                table.probability(candidate)
            );
        }
        println!(
            "view={role} verdict={}",
            if table.is_uniform() {
                "UNIFORM"
            } else {
                "NON-UNIFORM"
            }
        );
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    let transcripts = read_transcripts(&args.transcript)?;
    let many = transcripts.len() > 1;
    let mut all_passed = true;
    for (index, transcript) in transcripts.iter().enumerate() {
        if many {
            println!("transcript={index}");
        }
        let report = audit::verify_transcript(transcript);
        for check in &report.checks {
            let status = match check.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::NotEvaluable => "not_evaluable",
            };
            println!("check={} status={status} detail={:?}", check.name, check.detail);
        }
        println!("result={}", if report.passed { "pass" } else { "fail" });
        all_passed &= report.passed;
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_bench(args: BenchArgs) -> Result<u8, CliError> {
    if args.n_max < 1 {
        return Err(usage("--n-max must be at least 1"));
    }
    let cap = qubit_cap()?;
    println!(
        "{:>3} {:>9} {:>7} {:>14} {:>12}",
        "n", "backend", "qubits", "mem_bytes", "avg_ms"
    );
    for n in 1..=args.n_max {
        for backend in [Backend::Full, Backend::Reduced, Backend::Analytic] {
            let qubits = match backend {
                Backend::Full => 3 * n + 2,
                Backend::Reduced => 3 * n,
                Backend::Analytic => 0,
            };
            let mem_bytes: u128 = if qubits == 0 { 0 } else { 16u128 << qubits };
            if backend != Backend::Analytic && qubits > cap {
                println!(
                    "{:>3} {:>9} {:>7} {:>14} {:>12}",
                    n, backend.to_string(), qubits, mem_bytes, "capped"
                );
                continue;
            }
            let len_b = n / 2;
            let mut config = ExchangeConfig::new(
                BitVector::from_index((1 << len_b) - 1, len_b),
                BitVector::from_index(0, n - len_b),
            );
            config.backend = backend;
            config.qubit_cap = cap;
            let runs = if qubits > 20 { 1 } else { 5 };
            let start = Instant::now();
            for shot in 0..runs {
                protocol::run_shot(&config, shot).map_err(from_core)?;
            }
            let avg_ms = start.elapsed().as_secs_f64() * 1e3 / runs as f64;
            println!(
                "{:>3} {:>9} {:>7} {:>14} {:>12.3}",
                n, backend.to_string(), qubits, mem_bytes, avg_ms
            );
        }
    }
    Ok(0)
}
