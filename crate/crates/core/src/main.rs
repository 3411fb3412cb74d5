use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ggwb_core::workbench::{self, builtins, CheckRequest, Scenario};
use ggwb_core::Result;

#[derive(Parser)]
#[command(name = "ggwb", version, about = "Checks generalized almost contact and (2,1) structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List built-in scenarios and check labels.
    List,
    /// Run checks on a scenario file or built-in.
    Check {
        /// Path to a scenario JSON file, or a built-in name.
        scenario: String,
        /// Check label, optionally `label@structure`; repeatable.
        #[arg(long = "check", value_name = "LABEL")]
        checks: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, env = "GGWB_SEED")]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn resolve(name: &str) -> Result<Scenario> {
    let path = Path::new(name);
    if path.exists() {
        workbench::load_scenario(path)
    } else {
        workbench::builtin(name)
    }
}

fn list() {
    println!("built-in scenarios:");
    for b in builtins::BUILTINS {
        println!("  {:<24} {:<10} {}", b.name, b.aliases.join(","), b.description);
    }
    println!("check labels:");
    for l in workbench::LABELS {
        println!("  {:<18} {}", l.label, l.about);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            list();
            ExitCode::SUCCESS
        }
        Command::Check { scenario, checks, format, seed, samples, tol } => {
            let run = || -> Result<workbench::Report> {
                let s = resolve(&scenario)?;
                let mut policy = s.policy.clone();
                if let Some(v) = seed {
                    policy.seed = v;
                }
                if let Some(v) = samples {
                    policy.samples = v;
                }
                if let Some(v) = tol {
                    policy.tol = v;
                }
                let requests: Vec<CheckRequest> = checks.iter().map(|c| CheckRequest::parse(c)).collect();
                workbench::run_with(&s, &requests, &policy)
            };
            match run() {
                Ok(r) => {
                    match format {
                        Format::Text => print!("{}", r.to_text()),
                        Format::Json => print!("{}", r.to_json()),
                    }
                    ExitCode::from(r.exit_code() as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
