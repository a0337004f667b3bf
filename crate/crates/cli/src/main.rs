use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use leibrack_cli::{run, Command, RunConfig};

/// Constructs and verifies rack bialgebras of Leibniz algebras.
#[derive(Debug, Parser)]
#[command(name = "leibrack", version)]
struct Args {
    /// Input file (algebra, rack, polynomial or problem JSON), `catalog:NAME`
    /// or `dihedral:N`; repeatable.
    #[arg(long)]
    input: Vec<String>,
    #[arg(long, value_enum)]
    command: Command,
    /// Degree cap k of the truncation S(h)_(k).
    #[arg(long, default_value_t = 2)]
    degree_cap: usize,
    /// Order M of ħ kept in star products.
    #[arg(long, default_value_t = 4)]
    hbar_order: usize,
    /// Maximal PBW word length in U(g).
    #[arg(long, default_value_t = 3)]
    filtration_cap: usize,
    /// Seed for randomized sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Evaluate independent instances in parallel.
    #[arg(long)]
    parallel: bool,
    /// Report destination; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Record wall times per check (output is then not reproducible).
    #[arg(long)]
    timings: bool,
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), std::io::Error> {
    match output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = RunConfig {
        inputs: args.input,
        command: args.command,
        degree_cap: args.degree_cap,
        hbar_order: args.hbar_order,
        filtration_cap: args.filtration_cap,
        seed: args.seed,
        parallel: args.parallel,
        output: args.output,
        timings: args.timings,
    };
    match run(&cfg) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.render(), &cfg.output) {
                eprintln!("leibrack: cannot write report: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("leibrack: {e}");
            let mut text = serde_json::to_string_pretty(&e.to_json()).expect("serializable");
            text.push('\n');
            if cfg.output.is_some() {
                let _ = emit(&text, &cfg.output);
            }
            ExitCode::from(2)
        }
    }
}
