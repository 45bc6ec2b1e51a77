use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toric_jets::oracle::DEFAULT_GUARD;
use toric_jets_cli::{
    analyze, analyze_csv, analyze_markdown, exit, exit_code, to_json_string, verify, verify_csv, verify_markdown,
    witness, witness_csv, witness_markdown, OutputFormat, WitnessError, GUARD_ENV,
};

/// Jet schemes of affine toric surfaces given by a coprime pair (p, q).
#[derive(Parser)]
#[command(name = "toric-jets", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Surface {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
    /// Jet level.
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value = "md")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Surface invariants, equations and the components of the m-jet fiber.
    Analyze {
        #[command(flatten)]
        surface: Surface,
    },
    /// Run the symbolic checks and the exhaustive finite-field oracle.
    Verify {
        #[command(flatten)]
        surface: Surface,
        /// Prime characteristic of the coefficient field.
        #[arg(long, default_value_t = 2)]
        field: u64,
        /// Largest admissible p^(e(m+1)) for the exhaustive scan.
        #[arg(long, env = GUARD_ENV, default_value_t = DEFAULT_GUARD)]
        guard: u64,
        /// Treat stratum point-count mismatches as failures.
        #[arg(long)]
        strict: bool,
    },
    /// The contact vector and monomial arc realizing the label (i, s, l).
    Witness {
        #[command(flatten)]
        surface: Surface,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        l: usize,
    },
}

fn render(
    doc: &serde_json::Value,
    format: OutputFormat,
    md: fn(&serde_json::Value) -> String,
    csv: fn(&serde_json::Value) -> String,
) {
    let out = match format {
        OutputFormat::Json => to_json_string(doc),
        OutputFormat::Md => md(doc),
        OutputFormat::Csv => csv(doc),
    };
    print!("{out}");
}

fn fail(code: i32, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    match cli.command {
        Command::Analyze { surface: a } => match analyze(a.p, a.q, a.m) {
            Ok(doc) => {
                render(&doc, a.format, analyze_markdown, analyze_csv);
                ExitCode::from(exit::PASS as u8)
            }
            Err(e) => fail(exit_code(&e), e),
        },
        Command::Verify {
            surface: a,
            field,
            guard,
            strict,
        } => match verify(a.p, a.q, a.m, field, guard, strict) {
            Ok(v) => {
                render(&v.document, a.format, verify_markdown, verify_csv);
                ExitCode::from(v.exit_code(strict) as u8)
            }
            Err(e) => fail(exit_code(&e), e),
        },
        Command::Witness { surface: a, i, s, l } => match witness(a.p, a.q, a.m, i, s, l) {
            Ok(doc) => {
                render(&doc, a.format, witness_markdown, witness_csv);
                ExitCode::from(exit::PASS as u8)
            }
            Err(WitnessError::Input(e)) => fail(exit_code(&e), e),
            Err(WitnessError::Failed(msg)) => fail(exit::VERIFICATION_FAILED, msg),
        },
    }
}
