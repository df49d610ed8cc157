use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use tririgid_cli::exit;
use tririgid_cli::input::InputDocument;
use tririgid_cli::report::build_report;
use tririgid_cli::sweep::{run_sweep, Check, SweepConfig};
use tririgid_core::exactalg::format_rational;
use tririgid_core::lndlab::DEFAULT_BOUND;
use tririgid_core::suspend::{split_chain, suspension_split, SplitResult};
use tririgid_core::trinomial::{validate, TrinomialDatum, VarietyType};

#[derive(Parser)]
#[command(
    name = "tririgid",
    version,
    about = "Rigidity and rationality of trinomial varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a datum file against the trinomial invariants.
    Validate {
        path: String,
        #[arg(long)]
        json: bool,
    },
    /// Rigidity, rationality and case analysis for a datum file.
    Classify {
        path: String,
        /// Construct and verify a locally nilpotent derivation.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
    /// Split a Type 2 datum as a suspension over the datum without its
    /// last tuple.
    Suspend {
        path: String,
        /// A single split (the default).
        #[arg(long, conflicts_with = "chain")]
        split: bool,
        /// Repeat the split down to r = 1.
        #[arg(long)]
        chain: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate data within bounds and run cross-checks.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long = "type", default_value = "2", value_parser = ["1", "2"])]
    variety_type: String,
    #[arg(long, default_value_t = 3)]
    max_r: usize,
    #[arg(long, default_value_t = 6)]
    max_l: u32,
    #[arg(long, default_value_t = 1)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    max_m: usize,
    /// Comma-separated check names, or "all".
    #[arg(long, default_value = "all")]
    checks: String,
    /// JSON-lines output, one row per datum.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
}

/// An exit code with a message for standard error.
struct Failure(i32, String);

type Outcome = Result<(), Failure>;

fn load(path: &str) -> Result<TrinomialDatum, Failure> {
    InputDocument::read(path)
        .and_then(|doc| doc.to_datum())
        .map_err(|e| Failure(exit::PARSE_ERROR, e.to_string()))
}

fn require_valid(d: &TrinomialDatum) -> Outcome {
    let report = validate(d);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure(
            exit::INVALID_DATUM,
            format!("invalid datum: {report}"),
        ))
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable output")
    );
}

#[derive(Serialize)]
struct ValidationOutput {
    valid: bool,
    violations: Vec<String>,
}

fn cmd_validate(path: &str, json: bool) -> Outcome {
    let d = load(path)?;
    let report = validate(&d);
    let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    if json {
        print_json(&ValidationOutput {
            valid: report.is_valid(),
            violations: violations.clone(),
        });
    } else if report.is_valid() {
        println!("valid");
    } else {
        for v in &violations {
            println!("{v}");
        }
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure(exit::INVALID_DATUM, String::new()))
    }
}

fn cmd_classify(path: &str, witness: bool, bound: usize, json: bool) -> Outcome {
    let d = load(path)?;
    require_valid(&d)?;
    let report = build_report(&d, witness.then_some(bound))
        .map_err(|e| Failure(exit::VERIFICATION_FAILURE, e.to_string()))?;
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

#[derive(Serialize)]
struct StageOutput {
    stage: usize,
    p1: String,
    p2: String,
    f: String,
    scale: String,
    suspension_exponents: Vec<u32>,
    base: InputDocument,
    reconstructed: bool,
}

fn stage_output(stage: usize, s: &SplitResult) -> StageOutput {
    StageOutput {
        stage,
        p1: format_rational(&s.p1),
        p2: format_rational(&s.p2),
        f: s.f.to_string(),
        scale: format_rational(&s.scale),
        suspension_exponents: s.suspension_weights.clone(),
        base: InputDocument::from_datum(&s.base),
        reconstructed: s.reconstructed,
    }
}

fn cmd_suspend(path: &str, chain: bool, json: bool) -> Outcome {
    let d = load(path)?;
    require_valid(&d)?;
    if d.variety_type != VarietyType::Type2 {
        return Err(Failure(
            exit::INVALID_DATUM,
            "suspension split needs a Type 2 datum".into(),
        ));
    }
    let stages = if chain {
        split_chain(&d)
    } else {
        suspension_split(&d).map(|s| vec![s])
    }
    .map_err(|e| Failure(exit::INVALID_DATUM, e.to_string()))?;
    let out: Vec<StageOutput> = stages
        .iter()
        .enumerate()
        .map(|(k, s)| stage_output(k + 1, s))
        .collect();
    if json {
        print_json(&out);
    } else {
        for s in &out {
            let ls: Vec<String> = s.base.l.iter().map(|t| format!("{t:?}")).collect();
            println!("stage {}: p1 = {}, p2 = {}", s.stage, s.p1, s.p2);
            println!("  f = {}", s.f);
            println!(
                "  scale = {}, suspension exponents {:?}",
                s.scale, s.suspension_exponents
            );
            println!("  base r = {}, l = [{}]", s.base.r, ls.join(", "));
            println!(
                "  reconstruction: {}",
                if s.reconstructed { "pass" } else { "fail" }
            );
        }
    }
    if out.iter().all(|s| s.reconstructed) {
        Ok(())
    } else {
        Err(Failure(
            exit::VERIFICATION_FAILURE,
            "reconstruction check failed".into(),
        ))
    }
}

fn cmd_sweep(a: &SweepArgs) -> Outcome {
    let usage = |e: String| Failure(exit::PARSE_ERROR, e);
    let config = SweepConfig {
        variety_type: if a.variety_type == "1" {
            VarietyType::Type1
        } else {
            VarietyType::Type2
        },
        max_r: a.max_r,
        max_l: a.max_l,
        max_n: a.max_n,
        max_m: a.max_m,
        checks: Check::parse_list(&a.checks).map_err(|e| usage(e.to_string()))?,
        seed: a.seed,
        bound: a.bound,
        ..SweepConfig::default()
    };
    let summary = run_sweep(&config).map_err(|e| usage(e.to_string()))?;
    if let Some(path) = &a.out {
        let write = || -> std::io::Result<()> {
            let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
            for row in &summary.rows {
                writeln!(f, "{}", row.to_json())?;
            }
            f.flush()
        };
        write().map_err(|e| usage(format!("cannot write {path}: {e}")))?;
    }
    println!("data: {}", summary.rows.len());
    for (name, t) in &summary.tallies {
        println!("{name}: {} checked, {} failed", t.applied, t.failed);
    }
    let failures: Vec<_> = summary.failures().collect();
    if failures.is_empty() {
        return Ok(());
    }
    let mut msg = format!("{} data failed", failures.len());
    for row in failures {
        msg.push_str(&format!(
            "\n{}\n  {}",
            row.datum.to_json(),
            row.failures.join("\n  ")
        ));
    }
    Err(Failure(exit::SWEEP_FAILURE, msg))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::PARSE_ERROR
            } else {
                exit::OK
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let outcome = match &cli.command {
        Command::Validate { path, json } => cmd_validate(path, *json),
        Command::Classify {
            path,
            witness,
            bound,
            json,
        } => cmd_classify(path, *witness, *bound, *json),
        Command::Suspend {
            path, chain, json, ..
        } => cmd_suspend(path, *chain, *json),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match outcome {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code as u8)
        }
    }
}
